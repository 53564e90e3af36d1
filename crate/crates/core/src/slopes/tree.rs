//! Translation lengths on the Bruhat–Tits tree and valuation witnesses
//! among simple closed curves.

use serde_json::{json, Value};

use super::{Slope, SlopeTraces};
use crate::error::{Error, Result};
use crate::exactnum::{Place, Poly, Ring, Valued};
use crate::surface::SurfacePoint;

/// A 2×2 matrix, rows first.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<F>(pub [[F; 2]; 2]);

impl<F: Ring> Mat2<F> {
    pub fn identity() -> Self {
        Mat2([[F::one(), F::zero()], [F::zero(), F::one()]])
    }

    pub fn det(&self) -> F {
        let [[a, b], [c, d]] = &self.0;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn trace(&self) -> F {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn mul(&self, o: &Mat2<F>) -> Mat2<F> {
        let e = |i: usize, j: usize| {
            self.0[i][0].clone() * o.0[0][j].clone() + self.0[i][1].clone() * o.0[1][j].clone()
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Mat2<F> {
        let [[a, b], [c, d]] = &self.0;
        Mat2([[d.clone(), -b.clone()], [-c.clone(), a.clone()]])
    }

    pub fn pow(&self, mut n: u32) -> Mat2<F> {
        let mut base = self.clone();
        let mut acc = Mat2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// Translation length of a determinant-one `g` on the tree of the place:
/// `2·max(0, −v(tr g))`, with `v(0) = +∞`.
pub fn translation_length<F: Ring + Valued>(g: &Mat2<F>, place: &Place) -> Result<u64> {
    if !(g.det() - F::one()).is_zero() {
        return Err(Error::precondition("translation length needs det g = 1"));
    }
    Ok(match g.trace().valuation(place)? {
        None => 0,
        Some(v) => 2 * (-v).max(0) as u64,
    })
}

/// A pair of determinant-one matrices, the images of the free generators of
/// the once-punctured torus group.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep11<F> {
    pub a: Mat2<F>,
    pub b: Mat2<F>,
}

impl<F: Ring> Rep11<F> {
    pub fn new(a: Mat2<F>, b: Mat2<F>) -> Result<Self> {
        if !(a.det() - F::one()).is_zero() || !(b.det() - F::one()).is_zero() {
            return Err(Error::precondition("representation matrices need det 1"));
        }
        Ok(Rep11 { a, b })
    }

    /// `(tr A, tr B, tr AB)`.
    pub fn trace_triple(&self) -> [F; 3] {
        [self.a.trace(), self.b.trace(), self.a.mul(&self.b).trace()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystoleHit<F> {
    pub slope: Slope,
    pub trace: F,
    /// `None` when the trace is zero.
    pub valuation: Option<i64>,
}

impl<F> SystoleHit<F> {
    pub fn to_json(&self, show: impl Fn(&F) -> String) -> Value {
        json!({"slope": Value::from(self.slope), "trace": show(&self.trace), "valuation": self.valuation})
    }
}

/// First slope (in enumeration order, `|p|, q ≤ bound`) whose trace has
/// nonnegative valuation.
///
/// Fails when the commutator trace `x² + y² + z² − xyz − 2` is not integral
/// at the place, or when no slope within the bound qualifies.
pub fn systole_search<F: Ring + Valued>(
    t: &[F; 3],
    place: &Place,
    bound: i64,
) -> Result<SystoleHit<F>> {
    let [x, y, z] = t;
    let boundary =
        x.square() + y.square() + z.square() - x.clone() * y.clone() * z.clone() - F::from_i64(2);
    if boundary.valuation(place)?.is_some_and(|v| v < 0) {
        return Err(Error::precondition("boundary trace not integral"));
    }
    let mut traces = SlopeTraces::new(x.clone(), y.clone(), z.clone());
    let mut best: Option<i64> = None;
    for slope in Slope::up_to(bound) {
        let trace = traces.trace(slope);
        let valuation = trace.valuation(place)?;
        match valuation {
            Some(v) if v < 0 => best = Some(best.map_or(v, |b| b.max(v))),
            _ => {
                return Ok(SystoleHit {
                    slope,
                    trace,
                    valuation,
                })
            }
        }
    }
    Err(Error::bound(
        "slope",
        format!(
            "no integral trace with |p|, q <= {bound}; best valuation {}",
            best.unwrap_or(0)
        ),
    ))
}

/// First slope whose trace is constant along the polynomial family `c`
/// (given in trace coordinates).
pub fn constant_trace_slope<R: Ring>(c: &SurfacePoint<Poly<R>>, bound: i64) -> Result<(Slope, R)> {
    let [x, y, z] = &c.0;
    let mut traces = SlopeTraces::new(x.clone(), y.clone(), z.clone());
    for slope in Slope::up_to(bound) {
        if let Some(v) = traces.trace(slope).constant_value() {
            return Ok((slope, v));
        }
    }
    Err(Error::bound(
        "slope",
        format!("no constant trace with |p|, q <= {bound}"),
    ))
}

/// Test support: the primitive word of a slope, as a matrix product.
#[cfg(test)]
pub(crate) fn slope_word<F: Ring>(sl: Slope, a: &Mat2<F>, b: &Mat2<F>) -> Mat2<F> {
    let b = if sl.p() < 0 { b.adjugate() } else { b.clone() };
    let (p, q) = (sl.p().abs(), sl.q());
    // walk the Stern–Brocot tree: W(L ⊕ R) = W(R)·W(L)
    let (mut l, mut r) = (((0i64, 1i64), b.clone()), ((1i64, 0i64), a.clone()));
    loop {
        if (p, q) == l.0 {
            return l.1;
        }
        if (p, q) == r.0 {
            return r.1;
        }
        let m = ((l.0 .0 + r.0 .0, l.0 .1 + r.0 .1), r.1.mul(&l.1));
        if m.0 == (p, q) {
            return m.1;
        }
        // compare p/q with the mediant
        if p * m.0 .1 < m.0 .0 * q {
            r = m;
        } else {
            l = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, Field, RatFunc};
    use crate::slopes::trace_of_slope;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        Mat2([[a.into(), b.into()], [c.into(), d.into()]])
    }

    #[test]
    fn length_examples() {
        let g = Mat2([[int(2), int(0)], [int(0), rat(1, 2)]]);
        assert_eq!(
            translation_length(&g, &Place::padic(2).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            translation_length(&g, &Place::padic(3).unwrap()).unwrap(),
            0
        );
        let t = RatFunc::var();
        let g = Mat2([
            [t.clone(), RatFunc::zero()],
            [RatFunc::zero(), t.inv().unwrap()],
        ]);
        assert_eq!(translation_length(&g, &Place::Infinity).unwrap(), 2);
        let bad = Mat2([[int(2), int(0)], [int(0), int(1)]]);
        assert!(translation_length(&bad, &Place::padic(2).unwrap()).is_err());
        let zero_trace = Mat2([[int(0), int(-1)], [int(1), int(0)]]);
        assert_eq!(
            translation_length(&zero_trace, &Place::padic(2).unwrap()).unwrap(),
            0
        );
    }

    fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2<BigInt> {
        loop {
            let (a, b) = (rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6));
            if num_integer::Integer::gcd(&a, &b) != 1 {
                continue;
            }
            // complete (a, b) to a unimodular matrix
            let e = num_integer::Integer::extended_gcd(&a, &b);
            let k = rng.gen_range(-3i64..=3);
            return m(a, b, -e.y + k * a, e.x + k * b);
        }
    }

    #[test]
    fn traces_match_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
            assert_eq!(a.det(), BigInt::from(1));
            let t = Rep11::new(a.clone(), b.clone()).unwrap().trace_triple();
            for sl in Slope::up_to(8)
                .into_iter()
                .filter(|s| s.p().abs() + s.q() <= 8)
            {
                assert_eq!(
                    trace_of_slope(sl, &t),
                    slope_word(sl, &a, &b).trace(),
                    "{sl}"
                );
            }
        }
    }

    #[test]
    fn systole_examples() {
        let two = Place::padic(2).unwrap();
        let t = [int(3), int(3), int(3)];
        assert_eq!(systole_search(&t, &two, 5).unwrap().slope, Slope::INFINITY);
        // x = 5/2 has v₂ = −1; y is integral
        let t = [rat(5, 2), int(2), rat(5, 2)];
        let hit = systole_search(&t, &two, 5).unwrap();
        assert_eq!(hit.slope, Slope::new(0, 1).unwrap());
        // boundary trace with a pole
        let t = [rat(1, 2), int(0), int(0)];
        assert!(systole_search(&t, &two, 5).is_err());
    }

    #[test]
    fn systole_function_field() {
        // A = diag(λ, 1/λ), B = [[μ, T], [0, 1/μ]]
        let c = |v: BigRational| RatFunc::from_poly(Poly::constant(v));
        let a = Mat2([[c(int(2)), c(int(0))], [c(int(0)), c(rat(1, 2))]]);
        let b = Mat2([[c(int(3)), RatFunc::var()], [c(int(0)), c(rat(1, 3))]]);
        let rep = Rep11::new(a, b).unwrap();
        let hit = systole_search(&rep.trace_triple(), &Place::Infinity, 5).unwrap();
        assert_eq!(hit.slope, Slope::INFINITY);
        assert_eq!(hit.trace, c(rat(5, 2)));
        assert_eq!(hit.valuation, Some(0));
    }

    #[test]
    fn constant_slopes() {
        let t = Poly::<BigRational>::var();
        let k = |v: i64| Poly::constant(int(v));
        // (3, T, 3T) is not on any surface, but the slope search only looks at traces
        let c = SurfacePoint([k(3), t.clone(), t.clone() * k(3)]);
        assert_eq!(
            constant_trace_slope(&c, 5).unwrap(),
            (Slope::INFINITY, int(3))
        );
        let c = SurfacePoint([t.clone(), t.clone(), k(2)]);
        assert_eq!(
            constant_trace_slope(&c, 5).unwrap().0,
            Slope::new(1, 1).unwrap()
        );
        let c = SurfacePoint([t.clone(), t.clone() + k(1), t.clone() * t.clone()]);
        assert!(constant_trace_slope(&c, 3).is_err());
    }

    fn tree_distance(g: &Mat2<BigRational>, place: &Place) -> i64 {
        let mut lo = i64::MAX;
        for row in &g.0 {
            for e in row {
                if let Some(v) = e.valuation(place).unwrap() {
                    lo = lo.min(v);
                }
            }
        }
        -2 * lo
    }

    #[test]
    fn length_agrees_with_displacement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3, 5] {
            let place = Place::padic(p).unwrap();
            for _ in 0..30 {
                let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
                let d = rat(1, p) * int(rng.gen_range(1..=4));
                // conjugate b by diag(d, 1) to move away from SL2(Z)
                let b = Mat2([
                    [
                        BigRational::from(b.0[0][0].clone()),
                        BigRational::from(b.0[0][1].clone()) * d.clone(),
                    ],
                    [
                        BigRational::from(b.0[1][0].clone()) / d.clone(),
                        BigRational::from(b.0[1][1].clone()),
                    ],
                ]);
                let a = Mat2(a.0.map(|r| r.map(BigRational::from)));
                let g = a.mul(&b);
                let l = translation_length(&g, &place).unwrap() as i64;
                assert_eq!(tree_distance(&g.pow(64), &place) / 64, l);
            }
        }
    }

    #[test]
    fn fricke_on_farey_triangles() {
        let t = [rat(5, 2), int(2), rat(7, 3)];
        let [x, y, z] = t.clone();
        let kappa =
            x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone() - x * y * z;
        for [a, b, c] in crate::slopes::farey_triangles(4) {
            let (x, y, z) = (
                trace_of_slope(a, &t),
                trace_of_slope(b, &t),
                trace_of_slope(c, &t),
            );
            assert_eq!(
                x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone() - x * y * z,
                kappa
            );
        }
    }
}
