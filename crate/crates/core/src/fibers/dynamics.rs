//! Twist dynamics on fibers: the generator, orbit decomposition of integral
//! points, and the multiplicative parametrization of perfect torus fibers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{classify_fiber, FiberDescriptor};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, json_int, json_rat, Field, QuadElt, Ring};
use crate::surface::{line_scan, Axis, MarkoffSurface, Provenance, SurfacePoint, Sym};

/// How the fiber stabilizer is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `(u, v) ↦ (v, m_u(u, v))`: the Vieta move in `u` followed by the
    /// swap, available when the two free coordinates enter symmetrically.
    /// Its square is the move pair.
    Twist,
    /// `m_v ∘ m_u`.
    MovePair,
}

impl Generator {
    pub fn for_fiber(s: &MarkoffSurface, axis: Axis) -> Generator {
        let st = s.trace_form();
        let (u, v) = axis.others();
        if st.lin(u) == st.lin(v) {
            Generator::Twist
        } else {
            Generator::MovePair
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Twist => "twist",
            Generator::MovePair => "move-pair",
        }
    }
}

/// One step of the generator (or its inverse) on a trace-coordinate point.
fn step<R: Ring>(
    st: &MarkoffSurface,
    axis: Axis,
    g: Generator,
    p: &SurfacePoint<R>,
    forward: bool,
) -> SurfacePoint<R> {
    let (u, v) = axis.others();
    let swap = |p: &SurfacePoint<R>| {
        let mut q = p.clone();
        q.0.swap(u.index(), v.index());
        q
    };
    match (g, forward) {
        (Generator::Twist, true) => swap(&st.vieta_move_unchecked(u, p)),
        (Generator::Twist, false) => st.vieta_move_unchecked(u, &swap(p)),
        (Generator::MovePair, true) => st.vieta_move_unchecked(v, &st.vieta_move_unchecked(u, p)),
        (Generator::MovePair, false) => st.vieta_move_unchecked(u, &st.vieta_move_unchecked(v, p)),
    }
}

/// Applies the fiber generator `n` times (its inverse when `n < 0`) to a
/// trace-coordinate point. The `axis` coordinate never changes.
pub fn fiber_generator_apply<R: Ring>(
    s: &MarkoffSurface,
    axis: Axis,
    p: &SurfacePoint<R>,
    n: i64,
) -> Result<SurfacePoint<R>> {
    let st = s.trace_form();
    if !st.contains(p) {
        return Err(Error::OffSurface(format!("{p:?} in trace coordinates")));
    }
    let g = Generator::for_fiber(s, axis);
    let mut cur = p.clone();
    for _ in 0..n.unsigned_abs() {
        cur = step(&st, axis, g, &cur, n > 0);
    }
    Ok(cur)
}

/// Surface symmetries (in trace coordinates) that fix the `axis` coordinate.
pub fn fiber_symmetries(s: &MarkoffSurface, axis: Axis) -> Vec<Sym> {
    let i = axis.index();
    s.trace_form()
        .symmetries()
        .into_iter()
        .filter(|g| g.perm[i] == i && g.signs[i] > 0)
        .collect()
}

/// An orbit of the generator, up to fiber symmetries.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberOrbit {
    pub rep: SurfacePoint<BigInt>,
    pub axis: Axis,
    /// Orbit length for finite orbits.
    pub period: Option<usize>,
    /// Box points in this orbit (or its symmetric images), sorted.
    pub members: Vec<SurfacePoint<BigInt>>,
}

impl FiberOrbit {
    /// `gⁿ` applied to the representative.
    pub fn point(&self, s: &MarkoffSurface, n: i64) -> SurfacePoint<BigInt> {
        fiber_generator_apply(s, self.axis, &self.rep, n)
            .expect("representative lies on the surface")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rep": self.rep.to_json(),
            "period": self.period,
            "members": self.members.iter().map(SurfacePoint::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberPoints {
    pub descriptor: Option<FiberDescriptor>,
    pub axis: Axis,
    pub t: BigInt,
    pub generator: Generator,
    pub bound: i64,
    /// Every integral fiber point in the box, sorted.
    pub points: Vec<SurfacePoint<BigInt>>,
    pub orbits: Vec<FiberOrbit>,
    /// Points whose generator orbit is finite.
    pub sporadic: Vec<SurfacePoint<BigInt>>,
}

impl FiberPoints {
    pub fn to_json(&self) -> Value {
        let mut v = match &self.descriptor {
            Some(d) => d.to_json(),
            None => json!({"axis": self.axis.name(), "t": json_int(&self.t), "class": Value::Null}),
        };
        v["generator"] = json!(self.generator.name());
        v["H"] = json!(self.bound);
        v["orbits"] = Value::Array(self.orbits.iter().map(FiberOrbit::to_json).collect());
        v["sporadic"] = Value::Array(self.sporadic.iter().map(SurfacePoint::to_json).collect());
        v["point_count"] = json!(self.points.len());
        v
    }
}

const PERIOD_CAP: usize = 12;
const WALK_CAP: usize = 1_000_000;

fn fiber_norm(axis: Axis, p: &SurfacePoint<BigInt>) -> BigInt {
    let (u, v) = axis.others();
    p.get(u).abs().max(p.get(v).abs())
}

fn key(p: &SurfacePoint<BigInt>) -> (usize, SurfacePoint<BigInt>) {
    (p.0.iter().filter(|c| c.is_negative()).count(), p.clone())
}

struct Walker<'a> {
    st: &'a MarkoffSurface,
    axis: Axis,
    g: Generator,
}

impl Walker<'_> {
    fn fwd(&self, p: &SurfacePoint<BigInt>) -> SurfacePoint<BigInt> {
        step(self.st, self.axis, self.g, p, true)
    }

    fn bwd(&self, p: &SurfacePoint<BigInt>) -> SurfacePoint<BigInt> {
        step(self.st, self.axis, self.g, p, false)
    }

    fn period(&self, p: &SurfacePoint<BigInt>) -> Option<usize> {
        let mut cur = p.clone();
        for n in 1..=PERIOD_CAP {
            cur = self.fwd(&cur);
            if &cur == p {
                return Some(n);
            }
        }
        None
    }

    /// The points of smallest norm reached by walking downhill from `p`.
    fn plateau(&self, p: &SurfacePoint<BigInt>) -> Vec<SurfacePoint<BigInt>> {
        let n = |q: &SurfacePoint<BigInt>| fiber_norm(self.axis, q);
        let mut cur = p.clone();
        for _ in 0..WALK_CAP {
            let (a, b) = (self.fwd(&cur), self.bwd(&cur));
            let best = if n(&b) < n(&a) { b } else { a };
            if n(&best) < n(&cur) {
                cur = best;
            } else {
                break;
            }
        }
        let level = n(&cur);
        let mut out = vec![cur.clone()];
        for forward in [true, false] {
            let mut q = cur.clone();
            loop {
                q = if forward { self.fwd(&q) } else { self.bwd(&q) };
                if n(&q) != level || out.contains(&q) {
                    break;
                }
                out.push(q.clone());
            }
        }
        out
    }

    /// Orbit representative (under the generator and fiber symmetries) and period.
    fn classify(
        &self,
        syms: &[Sym],
        p: &SurfacePoint<BigInt>,
    ) -> (SurfacePoint<BigInt>, Option<usize>) {
        let period = self.period(p);
        let base: Vec<SurfacePoint<BigInt>> = match period {
            Some(k) => {
                let mut pts = vec![p.clone()];
                for _ in 1..k {
                    pts.push(self.fwd(pts.last().unwrap()));
                }
                pts
            }
            None => vec![p.clone()],
        };
        let rep = syms
            .iter()
            .flat_map(|g| {
                base.iter()
                    .flat_map(|q| {
                        let img = g.apply(q);
                        if period.is_some() {
                            vec![img]
                        } else {
                            self.plateau(&img)
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .min_by_key(key)
            .unwrap();
        (rep, period)
    }
}

/// Integral points on the fiber `axis = t` with all coordinates bounded by
/// `h`, grouped into generator orbits up to fiber symmetries.
pub fn fiber_integral_points(
    s: &MarkoffSurface,
    axis: Axis,
    t: &BigInt,
    h: i64,
) -> Result<FiberPoints> {
    if h < 1 {
        return Err(Error::precondition("height bound must be at least 1"));
    }
    let descriptor = match s.provenance() {
        Provenance::Raw => None,
        _ => Some(classify_fiber(
            s,
            axis,
            &BigRational::from_integer(t.clone()),
        )?),
    };
    let st = s.trace_form();
    let g = Generator::for_fiber(s, axis);
    let points = if t.abs() > BigInt::from(h) {
        vec![]
    } else {
        line_scan(&st, axis, t, axis.others().0, h)
    };
    let syms = fiber_symmetries(s, axis);
    let walker = Walker { st: &st, axis, g };
    type Group = (Option<usize>, Vec<SurfacePoint<BigInt>>);
    let mut groups: BTreeMap<(usize, SurfacePoint<BigInt>), Group> = BTreeMap::new();
    for p in &points {
        let (rep, period) = walker.classify(&syms, p);
        groups
            .entry(key(&rep))
            .or_insert((period, vec![]))
            .1
            .push(p.clone());
    }
    let orbits: Vec<FiberOrbit> = groups
        .into_iter()
        .map(|((_, rep), (period, members))| FiberOrbit {
            rep,
            axis,
            period,
            members,
        })
        .collect();
    let sporadic = orbits
        .iter()
        .filter(|o| o.period.is_some())
        .flat_map(|o| o.members.iter().cloned())
        .collect();
    Ok(FiberPoints {
        descriptor,
        axis,
        t: t.clone(),
        generator: g,
        bound: h,
        points,
        orbits,
        sporadic,
    })
}

/// `u ↦ (y, z)` with `y − λz = g·u` and `y − λ⁻¹z = (K/g)·u⁻¹`, where
/// `(y − λz)(y − λ⁻¹z) = K = k + 2 − t²` is the fiber conic. Here `y, z`
/// stand for the two free coordinates in increasing axis order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusParametrization {
    pub surface: MarkoffSurface,
    pub axis: Axis,
    pub t: BigRational,
    pub lambda: QuadElt,
    pub constant: BigRational,
    pub scale: BigRational,
    /// The generator acts as `u ↦ λᵉ·u`.
    pub exponent: i32,
}

impl TorusParametrization {
    pub fn evaluate(&self, u: &QuadElt) -> Result<SurfacePoint<QuadElt>> {
        if u.is_zero() {
            return Err(Error::precondition("the torus parameter must be nonzero"));
        }
        let g = QuadElt::rational(self.scale.clone());
        let a = g.clone() * u.clone();
        let b = QuadElt::rational(self.constant.clone()).div(&a).unwrap();
        let lam_inv = self.lambda.inv().unwrap();
        let v = (a.clone() - b)
            .div(&(lam_inv - self.lambda.clone()))
            .unwrap();
        let w = a + self.lambda.clone() * v.clone();
        let (yi, zi) = self.axis.others();
        let mut coords: [QuadElt; 3] = std::array::from_fn(|_| QuadElt::zero());
        coords[self.axis.index()] = QuadElt::rational(self.t.clone());
        coords[yi.index()] = w;
        coords[zi.index()] = v;
        Ok(SurfacePoint(coords))
    }

    /// `(y − λz)/g`.
    pub fn inverse(&self, p: &SurfacePoint<QuadElt>) -> QuadElt {
        let (yi, zi) = self.axis.others();
        let w = p.get(yi).clone() - self.lambda.clone() * p.get(zi).clone();
        w.div(&QuadElt::rational(self.scale.clone())).unwrap()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "axis": self.axis.name(),
            "t": json_rat(&self.t),
            "lambda": self.lambda.to_json(),
            "constant": json_rat(&self.constant),
            "scale": json_rat(&self.scale),
            "exponent": self.exponent,
        })
    }
}

/// The multiplicative parametrization of a perfect torus fiber.
pub fn fiber_parametrization(
    s: &MarkoffSurface,
    axis: Axis,
    t: &BigRational,
) -> Result<TorusParametrization> {
    let Provenance::Torus { k } = s.provenance() else {
        return Err(Error::precondition(
            "the torus parametrization needs a torus surface",
        ));
    };
    let fd = classify_fiber(s, axis, t)?;
    if fd.class.is_parabolic() {
        return Err(Error::precondition(format!(
            "fiber {axis} = {} is parabolic",
            format_rational(t)
        )));
    }
    let constant = BigRational::from_integer(k + 2) - t * t;
    if constant.is_zero() {
        return Err(Error::precondition("degenerate fiber conic"));
    }
    let mut par = TorusParametrization {
        surface: s.clone(),
        axis,
        t: t.clone(),
        lambda: fd.lambda.expect("perfect fibers have t ≠ ±2"),
        constant,
        scale: BigRational::from_integer(1.into()),
        exponent: 0,
    };
    let u = QuadElt::from_i64(1);
    let image = par.inverse(&fiber_generator_apply(s, axis, &par.evaluate(&u)?, 1)?);
    let lam_inv = par.lambda.inv().unwrap();
    par.exponent = [
        (1, par.lambda.clone()),
        (2, par.lambda.square()),
        (-1, lam_inv.clone()),
        (-2, lam_inv.square()),
    ]
    .into_iter()
    .find(|(_, m)| m.clone() * u.clone() == image)
    .map(|(e, _)| e)
    .ok_or_else(|| Error::Unsupported("the generator is not a power of λ on this fiber".into()))?;
    Ok(par)
}
