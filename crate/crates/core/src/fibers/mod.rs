//! Fibers of a trace coordinate on the torus and sphere surfaces.
//!
//! Fixing one trace coordinate to `t` cuts the surface in a conic in the two
//! remaining coordinates. Everything in this module works in trace
//! coordinates: points passed in and returned are trace-coordinate points,
//! whatever chart the surface argument happens to be stored in.

mod dynamics;
mod od;

pub use dynamics::{
    fiber_generator_apply, fiber_integral_points, fiber_parametrization, fiber_symmetries,
    FiberOrbit, FiberPoints, Generator, TorusParametrization,
};
pub use od::points_over_od;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, json_rat, solve_lambda, Field, Poly, QuadElt, Ring};
use crate::surface::{Axis, MarkoffSurface, Provenance, SurfacePoint};

/// `k₁² + k₂² + k₃² − k₁k₂k₃ − 4 = 0`.
pub fn is_reducible_triple<R: Ring>(k1: &R, k2: &R, k3: &R) -> bool {
    let v = k1.square() + k2.square() + k3.square()
        - k1.clone() * k2.clone() * k3.clone()
        - R::from_i64(4);
    v.is_zero()
}

/// `u² + q·uv + v² + lu·u + lv·v + c`, with `u, v` the two free trace
/// coordinates in increasing axis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub q: BigRational,
    pub lu: BigRational,
    pub lv: BigRational,
    pub c: BigRational,
    pub vars: (Axis, Axis),
}

impl Conic {
    pub fn eval<F: Field>(&self, u: &F, v: &F) -> F {
        let f = |r: &BigRational| F::from_rational(r);
        u.square()
            + f(&self.q) * u.clone() * v.clone()
            + v.square()
            + f(&self.lu) * u.clone()
            + f(&self.lv) * v.clone()
            + f(&self.c)
    }

    /// Determinant of the symmetric 3×3 matrix of the conic.
    pub fn det(&self) -> BigRational {
        let two = BigRational::from_integer(2.into());
        let (h, g, f) = (&self.q / &two, &self.lu / &two, &self.lv / &two);
        // [[1, h, g], [h, 1, f], [g, f, c]]
        &self.c - &f * &f - &h * (&h * &self.c - &f * &g) + &g * (&h * &f - &g)
    }

    /// `[uu, uv, vv, u, v, 1]` coefficients.
    pub fn coefficients(&self) -> [BigRational; 6] {
        [
            BigRational::one(),
            self.q.clone(),
            BigRational::one(),
            self.lu.clone(),
            self.lv.clone(),
            self.c.clone(),
        ]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coefficients().iter().map(json_rat).collect())
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = (self.vars.0.name(), self.vars.1.name());
        let monos = [
            format!("{u}^2"),
            format!("{u}*{v}"),
            format!("{v}^2"),
            u.to_string(),
            v.to_string(),
            String::new(),
        ];
        let mut out = String::new();
        for (c, m) in self.coefficients().iter().zip(monos) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if m.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&format!("{}*{m}", format_rational(&mag)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} = 0")
    }
}

/// The conic cut out by `axis = t`, in trace coordinates.
pub fn fiber_conic(s: &MarkoffSurface, axis: Axis, t: &BigRational) -> Conic {
    let st = s.trace_form();
    let (u, v) = axis.others();
    let q = if st.eps() > 0 { t.clone() } else { -t.clone() };
    let lin = |a: Axis| BigRational::from_integer(st.lin(a).clone());
    Conic {
        q,
        lu: -lin(u),
        lv: -lin(v),
        c: t * t - lin(axis) * t - BigRational::from_integer(st.d().clone()),
        vars: (u, v),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicReason {
    /// `t = ±2`.
    TraceTwo,
    /// A restriction factor is reducible.
    ReducibleFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberClass {
    Perfect,
    Parabolic(ParabolicReason),
}

impl FiberClass {
    pub fn is_parabolic(self) -> bool {
        matches!(self, FiberClass::Parabolic(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberDescriptor {
    pub surface: MarkoffSurface,
    pub axis: Axis,
    pub t: BigRational,
    pub class: FiberClass,
    pub conic: Conic,
    /// `λ` with `λ + λ⁻¹ = t`, when `t ≠ ±2`.
    pub lambda: Option<QuadElt>,
}

impl FiberDescriptor {
    /// `−4·det` of the conic: for the torus `(t² − 2 − k)(t² − 4)`, for the
    /// sphere the product of the two boundary-pair factors.
    pub fn degenerate_constant(&self) -> BigRational {
        -self.conic.det() * BigRational::from_integer(4.into())
    }

    pub fn to_json(&self) -> Value {
        let (class, reason) = match self.class {
            FiberClass::Perfect => ("perfect", Value::Null),
            FiberClass::Parabolic(ParabolicReason::TraceTwo) => ("parabolic", json!("t=±2")),
            FiberClass::Parabolic(ParabolicReason::ReducibleFactor) => {
                ("parabolic", json!("reducible-factor"))
            }
        };
        json!({
            "axis": self.axis.name(),
            "t": json_rat(&self.t),
            "class": class,
            "reason": reason,
            "conic": self.conic.to_json(),
            "conic_text": self.conic.to_string(),
            "degenerate_constant": json_rat(&self.degenerate_constant()),
            "lambda": self.lambda.as_ref().map(QuadElt::to_json),
        })
    }
}

fn is_pm2(t: &BigRational) -> bool {
    t.abs() == BigRational::from_integer(2.into())
}

/// Perfect or parabolic, by the boundary-trace conditions of each surface type.
pub fn classify_fiber(s: &MarkoffSurface, axis: Axis, t: &BigRational) -> Result<FiberDescriptor> {
    let class = match s.provenance() {
        Provenance::Raw => return Err(Error::NoModuliInterpretation),
        _ if is_pm2(t) => FiberClass::Parabolic(ParabolicReason::TraceTwo),
        Provenance::Torus { k } => {
            let k = BigRational::from_integer(k.clone());
            // cutting along the fixed curve leaves pants with boundary traces (t, t, k)
            if k != BigRational::from_integer(2.into()) && is_reducible_triple(t, t, &k) {
                FiberClass::Parabolic(ParabolicReason::ReducibleFactor)
            } else {
                FiberClass::Perfect
            }
        }
        Provenance::Sphere { k } => {
            let k: Vec<BigRational> = k
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            let (p1, p2) = match axis {
                Axis::X => ((0, 1), (2, 3)),
                Axis::Y => ((1, 2), (0, 3)),
                Axis::Z => ((0, 2), (1, 3)),
            };
            let factor = |(i, j): (usize, usize)| {
                &k[i] * &k[i] + &k[j] * &k[j] + t * t
                    - t * &k[i] * &k[j]
                    - BigRational::from_integer(4.into())
            };
            if factor(p1).is_zero() || factor(p2).is_zero() {
                FiberClass::Parabolic(ParabolicReason::ReducibleFactor)
            } else {
                FiberClass::Perfect
            }
        }
    };
    Ok(FiberDescriptor {
        surface: s.clone(),
        axis,
        t: t.clone(),
        class,
        conic: fiber_conic(s, axis, t),
        lambda: (!is_pm2(t)).then(|| solve_lambda(t)),
    })
}

/// Trace coordinates at which the (integral) point `p`, given in the
/// surface's own chart, sits on a parabolic fiber.
pub fn parabolic_axes(s: &MarkoffSurface, p: &SurfacePoint<BigInt>) -> Vec<Axis> {
    if matches!(s.provenance(), Provenance::Raw) {
        return vec![];
    }
    let tp = s.to_trace_coords(p);
    Axis::ALL
        .into_iter()
        .filter(|&a| {
            classify_fiber(s, a, &BigRational::from_integer(tp.get(a).clone()))
                .map(|f| f.class.is_parabolic())
                .unwrap_or(false)
        })
        .collect()
}

/// A nonconstant polynomial curve `T ↦ (u(T), v(T))` inside the conic, when
/// the conic contains one: a parabola (`q² = 4`) or a pair of lines.
///
/// This looks only at the conic, not at any classification.
pub fn conic_line_family(conic: &Conic) -> Option<(Poly<QuadElt>, Poly<QuadElt>)> {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let q = QuadElt::rational;
    let tvar = Poly::<QuadElt>::var();
    let cst = |x: QuadElt| Poly::constant(x);
    if conic.q.clone() * &conic.q == four {
        // (u + εv)² + lu·u + lv·v + c, with w = u + εv
        let eps = &conic.q / &two;
        let m = &conic.lv - &eps * &conic.lu;
        if !m.is_zero() {
            // w = T, v = −(T² + lu·T + c)/m, u = T − εv
            let v = Poly::new(vec![
                q(-&conic.c / &m),
                q(-&conic.lu / &m),
                q(-BigRational::one() / &m),
            ]);
            let u = tvar - v.scale(&q(eps));
            return Some((u, v));
        }
        // w² + lu·w + c = 0 gives parallel lines u + εv = w₀
        let disc = &conic.lu * &conic.lu - &four * &conic.c;
        let w0 = (q(-conic.lu.clone()) + QuadElt::sqrt_of(&disc))
            * q(BigRational::new(1.into(), 2.into()));
        let u = cst(w0) - tvar.scale(&q(eps));
        return Some((u, tvar));
    }
    if !conic.det().is_zero() {
        return None;
    }
    // two lines through the center, of slopes λ with λ² + qλ + 1 = 0
    let den = &four - &conic.q * &conic.q;
    let u0 = (-&two * &conic.lu + &conic.q * &conic.lv) / &den;
    let v0 = (-&two * &conic.lv + &conic.q * &conic.lu) / &den;
    let lam = solve_lambda(&-conic.q.clone());
    let u = cst(q(u0)) + tvar.scale(&lam);
    let v = cst(q(v0)) + tvar;
    Some((u, v))
}

/// A polynomial family `T ↦ point` on a fiber, in trace coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ParabolicFamily {
    pub axis: Axis,
    pub t: BigRational,
    pub point: SurfacePoint<Poly<QuadElt>>,
}

impl ParabolicFamily {
    pub fn eval(&self, at: &QuadElt) -> SurfacePoint<QuadElt> {
        self.point.map(|c| c.eval(at))
    }

    pub fn is_nonconstant(&self) -> bool {
        self.point.0.iter().any(|c| !c.is_constant())
    }

    /// Exact identity check against the surface, in trace coordinates.
    pub fn lies_on(&self, s: &MarkoffSurface) -> bool {
        s.trace_form().contains(&self.point)
    }

    /// The family with rational coefficients, when it has them.
    pub fn rational(&self) -> Option<SurfacePoint<Poly<BigRational>>> {
        let conv = |p: &Poly<QuadElt>| -> Option<Poly<BigRational>> {
            let cs: Option<Vec<BigRational>> = p
                .coeffs()
                .iter()
                .map(|c| c.as_rational().cloned())
                .collect();
            Some(Poly::new(cs?))
        };
        Some(SurfacePoint([
            conv(&self.point.0[0])?,
            conv(&self.point.0[1])?,
            conv(&self.point.0[2])?,
        ]))
    }

    pub fn to_json(&self) -> Value {
        let show = |p: &Poly<QuadElt>| p.to_string();
        json!({
            "axis": self.axis.name(),
            "t": json_rat(&self.t),
            "x": show(&self.point.0[0]),
            "y": show(&self.point.0[1]),
            "z": show(&self.point.0[2]),
        })
    }
}

/// Lifts a conic family to the surface.
pub fn fiber_family(s: &MarkoffSurface, axis: Axis, t: &BigRational) -> Option<ParabolicFamily> {
    let conic = fiber_conic(s, axis, t);
    let (u, v) = conic_line_family(&conic)?;
    let mut coords: [Poly<QuadElt>; 3] = std::array::from_fn(|_| Poly::zero());
    coords[axis.index()] = Poly::constant(QuadElt::rational(t.clone()));
    coords[conic.vars.0.index()] = u;
    coords[conic.vars.1.index()] = v;
    Some(ParabolicFamily {
        axis,
        t: t.clone(),
        point: SurfacePoint(coords),
    })
}

/// A nonconstant polynomial family filling part of a parabolic fiber.
pub fn parametrize_parabolic_fiber(
    s: &MarkoffSurface,
    axis: Axis,
    t: &BigRational,
) -> Result<ParabolicFamily> {
    let fd = classify_fiber(s, axis, t)?;
    if !fd.class.is_parabolic() {
        return Err(Error::precondition(format!(
            "fiber {axis} = {} is perfect",
            format_rational(t)
        )));
    }
    fiber_family(s, axis, t)
        .ok_or_else(|| Error::Unsupported(format!("no line family on the {axis} = {t} fiber")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, MPoly};

    fn torus(k: i64) -> MarkoffSurface {
        MarkoffSurface::from_torus(&k.into())
    }

    fn sphere(k: [i64; 4]) -> MarkoffSurface {
        MarkoffSurface::from_sphere(&k.map(BigInt::from))
    }

    #[test]
    fn reducible_triples() {
        assert!(is_reducible_triple(
            &BigInt::from(2),
            &BigInt::from(2),
            &BigInt::from(2)
        ));
        assert!(!is_reducible_triple(
            &BigInt::from(0),
            &BigInt::from(0),
            &BigInt::from(0)
        ));
        let t = MPoly::var(0);
        let t2 = t.square() - MPoly::constant(2.into());
        assert!(is_reducible_triple(&t, &t, &t2));
    }

    #[test]
    fn classification_examples() {
        let c = |s: &MarkoffSurface, t: i64| classify_fiber(s, Axis::X, &int(t)).unwrap().class;
        assert_eq!(
            c(&torus(7), 3),
            FiberClass::Parabolic(ParabolicReason::ReducibleFactor)
        );
        assert_eq!(
            c(&torus(0), 2),
            FiberClass::Parabolic(ParabolicReason::TraceTwo)
        );
        assert_eq!(c(&torus(0), 3), FiberClass::Perfect);
        assert_eq!(c(&torus(2), 3), FiberClass::Perfect);
        assert_eq!(c(&sphere([0, 0, 0, 0]), 3), FiberClass::Perfect);
        let raw = MarkoffSurface::raw(1, 0.into(), 0.into(), 0.into(), 0.into()).unwrap();
        assert_eq!(
            classify_fiber(&raw, Axis::X, &int(3)),
            Err(Error::NoModuliInterpretation)
        );
    }

    #[test]
    fn conic_examples() {
        let c = fiber_conic(&torus(-2), Axis::X, &int(3));
        assert_eq!(c.to_string(), "y^2 - 3*y*z + z^2 + 9 = 0");
        assert!(c.eval(&int(3), &int(3)).is_zero());
        assert_eq!(
            fiber_conic(&torus(5), Axis::X, &int(0)).to_string(),
            "y^2 + z^2 - 7 = 0"
        );
        assert_eq!(
            fiber_conic(&sphere([0, 0, 0, 0]), Axis::X, &int(0)).to_string(),
            "y^2 + z^2 - 4 = 0"
        );
    }

    #[test]
    fn degenerate_constant_matches_factor_forms() {
        for k in -4..=4 {
            for t in -5..=5 {
                let fd = classify_fiber(&torus(k), Axis::Y, &int(t)).unwrap();
                assert_eq!(fd.degenerate_constant(), int((t * t - 2 - k) * (t * t - 4)));
            }
        }
        let ks = [1, -2, 3, 0];
        let fd = classify_fiber(&sphere(ks), Axis::Z, &int(3)).unwrap();
        let f = |a: i64, b: i64| a * a + b * b + 9 - 3 * a * b - 4;
        assert_eq!(fd.degenerate_constant(), int(f(1, 3) * f(-2, 0)));
    }

    #[test]
    fn parabolic_families() {
        let t = QuadElt::rational;
        let fam = parametrize_parabolic_fiber(&torus(2), Axis::X, &int(2)).unwrap();
        assert_eq!(
            fam.eval(&t(int(5))),
            SurfacePoint::new(t(int(2)), t(int(5)), t(int(5)))
        );
        let fam = parametrize_parabolic_fiber(&torus(6), Axis::X, &int(2)).unwrap();
        assert_eq!(
            fam.eval(&t(int(0))),
            SurfacePoint::new(t(int(2)), t(int(2)), t(int(0)))
        );
        let fam = parametrize_parabolic_fiber(&torus(7), Axis::X, &int(3)).unwrap();
        assert!(fam.lies_on(&torus(7)) && fam.is_nonconstant());
        let lam = solve_lambda(&int(3));
        assert_eq!(fam.eval(&t(int(1))).0[1], lam);
        assert!(parametrize_parabolic_fiber(&torus(0), Axis::X, &int(3)).is_err());
    }

    #[test]
    fn parabolic_flags() {
        // (0, 0, 2) on the k = 2 torus: its z trace is 2
        let s = torus(2);
        assert_eq!(
            parabolic_axes(&s, &SurfacePoint::from_i64(0, 0, 2)),
            vec![Axis::Z]
        );
        assert!(parabolic_axes(&torus(-2), &SurfacePoint::from_i64(-3, 3, 3)).is_empty());
    }
}
