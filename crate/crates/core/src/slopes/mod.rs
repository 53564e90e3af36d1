//! Simple closed curves on the once-punctured torus, indexed by slopes
//! `p/q`, and their trace functions.
//!
//! With `x = tr A`, `y = tr B`, `z = tr AB`, slope `1/0` is `A`, `0/1` is
//! `B` and `1/1` is `AB`. The trace of a Farey mediant is the product of
//! the two parent traces minus the trace of the remaining vertex of the
//! Farey triangle below it. Negative slopes replace `B` by `B⁻¹`.

mod tree;

pub use tree::{constant_trace_slope, systole_search, translation_length, Mat2, Rep11, SystoleHit};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::{MPoly, Ring};

/// A reduced fraction `p/q` with `q ≥ 0`; `1/0` is the slope at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::precondition("0/0 is not a slope"));
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(Error::precondition(format!("{p}/{q} is not reduced")));
        }
        Ok(Slope::normalized(p, q))
    }

    /// Divides out the gcd and fixes the sign.
    pub fn normalized(p: i64, q: i64) -> Slope {
        let g = p.gcd(&q).max(1);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Slope { p, q }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Enumeration order: `|p| + q`, then `q`, then `p`.
    pub fn order_key(&self) -> (i64, i64, i64) {
        (self.p.abs() + self.q, self.q, self.p)
    }

    /// Stern–Brocot depth: number of mediant steps below the three base slopes.
    pub fn depth(&self) -> u32 {
        let (mut p, mut q) = (self.p.abs(), self.q);
        if q == 0 || p == 0 {
            return 0;
        }
        let mut n = 0;
        while p != q {
            if p > q {
                p -= q;
            } else {
                q -= p;
            }
            n += 1;
        }
        n
    }

    /// The two Farey parents `(L, R)`, `L < R`, with `L ⊕ R = self`; needs `p, q > 0`.
    fn parents(&self) -> (Slope, Slope) {
        let (p, q) = (self.p, self.q);
        debug_assert!(p > 0 && q > 0);
        // R = c/d with c·q − d·p = 1 and 0 ≤ d < q
        let d = if q == 1 {
            0
        } else {
            (-(p.extended_gcd(&q).x)).rem_euclid(q)
        };
        let c = (1 + d * p) / q;
        (Slope::normalized(p - c, q - d), Slope::normalized(c, d))
    }

    /// Every slope with `|p|, q ≤ bound`, in enumeration order.
    pub fn up_to(bound: i64) -> Vec<Slope> {
        let mut out = vec![Slope::INFINITY];
        for q in 1..=bound {
            for p in -bound..=bound {
                if p.gcd(&q) == 1 {
                    out.push(Slope { p, q });
                }
            }
        }
        out.sort_by_key(Slope::order_key);
        out
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Slope> {
        let bad = || Error::Parse(format!("not a slope: {s:?}"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q < 0 {
            return Err(bad());
        }
        Slope::new(p, q)
    }
}

impl From<Slope> for Value {
    fn from(s: Slope) -> Value {
        Value::String(s.to_string())
    }
}

/// Memoized slope traces for one trace triple `(x, y, z)`.
pub struct SlopeTraces<R> {
    base: [R; 3],
    mirrored: [R; 3],
    cache: [HashMap<(i64, i64), R>; 2],
}

impl<R: Ring> SlopeTraces<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        let w = x.clone() * y.clone() - z.clone();
        SlopeTraces {
            base: [x.clone(), y.clone(), z],
            mirrored: [x, y, w],
            cache: [HashMap::new(), HashMap::new()],
        }
    }

    pub fn trace(&mut self, sl: Slope) -> R {
        if sl.q == 0 {
            return self.base[0].clone();
        }
        if sl.p == 0 {
            return self.base[1].clone();
        }
        let side = usize::from(sl.p < 0);
        self.positive(side, sl.p.abs(), sl.q)
    }

    fn positive(&mut self, side: usize, p: i64, q: i64) -> R {
        let triple = if side == 0 {
            &self.base
        } else {
            &self.mirrored
        };
        match (p, q) {
            (1, 0) => return triple[0].clone(),
            (0, 1) => return triple[1].clone(),
            (1, 1) => return triple[2].clone(),
            _ => {}
        }
        if let Some(v) = self.cache[side].get(&(p, q)) {
            return v.clone();
        }
        let (l, r) = Slope { p, q }.parents();
        let dvec = Slope::normalized(r.p - l.p, r.q - l.q);
        let tl = self.positive(side, l.p, l.q);
        let tr = self.positive(side, r.p, r.q);
        let td = self.positive(side, dvec.p, dvec.q);
        let v = tl * tr - td;
        self.cache[side].insert((p, q), v.clone());
        v
    }
}

/// Trace of the curve of slope `sl` given `(tr A, tr B, tr AB)`.
pub fn trace_of_slope<R: Ring>(sl: Slope, t: &[R; 3]) -> R {
    SlopeTraces::new(t[0].clone(), t[1].clone(), t[2].clone()).trace(sl)
}

/// The trace function of slope `sl` as an integer polynomial in `x, y, z`.
pub fn trace_polynomial(sl: Slope) -> MPoly {
    trace_of_slope(sl, &std::array::from_fn(MPoly::var))
}

/// The Farey triangles `(L, R, L ⊕ R)` of Stern–Brocot depth at most
/// `depth`, on both sides of `0/1`.
pub fn farey_triangles(depth: u32) -> Vec<[Slope; 3]> {
    let mut out = Vec::new();
    for sign in [1, -1] {
        let mut stack = vec![(Slope { p: 0, q: 1 }, Slope::INFINITY, 0u32)];
        while let Some((l, r, d)) = stack.pop() {
            let m = Slope::normalized(l.p + r.p, l.q + r.q);
            let flip = |s: Slope| Slope::normalized(sign * s.p, s.q);
            out.push([flip(l), flip(r), flip(m)]);
            if d < depth {
                stack.push((l, m, d + 1));
                stack.push((m, r, d + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn slope_basics() {
        assert_eq!(Slope::new(-1, 0).unwrap(), Slope::INFINITY);
        assert_eq!(Slope::new(3, -2).unwrap().to_string(), "-3/2");
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
        assert_eq!("5/3".parse::<Slope>().unwrap(), sl(5, 3));
        let order = Slope::up_to(2);
        assert_eq!(
            &order[..4],
            &[Slope::INFINITY, sl(0, 1), sl(-1, 1), sl(1, 1)]
        );
        assert_eq!(sl(5, 3).parents(), (sl(3, 2), sl(2, 1)));
    }

    #[test]
    fn parents_are_neighbors() {
        for s in Slope::up_to(12) {
            if s.p > 0 && s.q > 0 && s != sl(1, 1) {
                let (l, r) = s.parents();
                assert_eq!((l.p + r.p, l.q + r.q), (s.p, s.q));
                assert_eq!(r.p * l.q - l.p * r.q, 1, "{s}");
            }
        }
    }

    #[test]
    fn trace_examples() {
        let t = [BigInt::from(3), BigInt::from(3), BigInt::from(3)];
        assert_eq!(trace_of_slope(Slope::INFINITY, &t), BigInt::from(3));
        assert_eq!(trace_of_slope(sl(2, 1), &t), BigInt::from(6));
        assert_eq!(trace_polynomial(sl(1, 2)).to_string(), "y*z - x");
        assert_eq!(trace_polynomial(sl(2, 1)).to_string(), "x*z - y");
        assert_eq!(trace_polynomial(sl(1, 1)).to_string(), "z");
        assert_eq!(trace_polynomial(sl(-1, 1)).to_string(), "x*y - z");
    }

    #[test]
    fn markoff_numbers_from_slopes() {
        // traces at (3, 3, 3) are three times Markoff numbers
        let mut st = SlopeTraces::new(BigInt::from(3), BigInt::from(3), BigInt::from(3));
        let got: Vec<BigInt> = [sl(1, 2), sl(1, 3), sl(2, 5), sl(3, 8)]
            .iter()
            .map(|s| st.trace(*s) / 3)
            .collect();
        let want: Vec<BigInt> = [2, 5, 29, 433].into_iter().map(BigInt::from).collect();
        assert_eq!(got, want);
    }
}
