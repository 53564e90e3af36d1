use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{exact_sqrt_rational, format_rational, parse_rational, Field, Ring};
use crate::error::{Error, Result};

/// Trial division stops here; a cofactor left above `LIMIT²` is assumed squarefree.
pub const SQUAREFREE_TRIAL_LIMIT: u64 = 1 << 20;

/// Writes `n = s² · D` with `D` squarefree (carrying the sign of `n`).
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "squarefree part of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(SQUAREFREE_TRIAL_LIMIT);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= &p;
        }
        p += 1u32;
    }
    // Whatever survives is either prime, a prime square, or beyond the trial bound.
    let r = rest.sqrt();
    if &r * &r == rest {
        square *= r;
    } else {
        core *= rest;
    }
    (square, core * sign)
}

/// An element `r + s·√D` of a quadratic field, `D` squarefree and `≠ 0, 1`.
///
/// Rational elements carry no field tag (`d == None`), so they combine with
/// elements of any quadratic field. Mixing two genuinely different fields
/// is a logic error and panics.
#[derive(Clone, Debug)]
pub struct QuadElt {
    d: Option<BigInt>,
    r: BigRational,
    s: BigRational,
}

impl QuadElt {
    /// Builds `r + s·√D`, reducing `D` to its squarefree part.
    pub fn new(d: &BigInt, r: BigRational, s: BigRational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::precondition("quadratic field with D = 0"));
        }
        let (sq, core) = squarefree_decompose(d);
        let s = s * BigRational::from_integer(sq);
        if core.is_one() {
            return Ok(QuadElt::rational(r + s));
        }
        Ok(QuadElt {
            d: Some(core),
            r,
            s,
        })
    }

    pub fn rational(r: BigRational) -> Self {
        QuadElt {
            d: None,
            r,
            s: BigRational::zero(),
        }
    }

    /// `√q` for a rational `q`, in `Q(√q)`.
    pub fn sqrt_of(q: &BigRational) -> Self {
        if q.is_zero() {
            return QuadElt::rational(BigRational::zero());
        }
        if let Some(root) = exact_sqrt_rational(q) {
            return QuadElt::rational(root);
        }
        // sqrt(n/m) = sqrt(n·m)/m
        let nm = q.numer() * q.denom();
        let (sq, core) = squarefree_decompose(&nm);
        let s = BigRational::new(sq, q.denom().clone());
        QuadElt {
            d: Some(core),
            r: BigRational::zero(),
            s,
        }
    }

    /// The radicand `D`, or `None` for a rational element.
    pub fn field(&self) -> Option<&BigInt> {
        if self.s.is_zero() {
            None
        } else {
            self.d.as_ref()
        }
    }

    pub fn field_tag(&self) -> Option<&BigInt> {
        self.d.as_ref()
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.r)
    }

    pub fn conj(&self) -> Self {
        QuadElt {
            d: self.d.clone(),
            r: self.r.clone(),
            s: -self.s.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        let d = self.d_rat();
        &self.r * &self.r - d * &self.s * &self.s
    }

    pub fn trace(&self) -> BigRational {
        &self.r + &self.r
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.d.clone().unwrap_or_else(BigInt::zero))
    }

    fn merged_field(&self, other: &Self) -> Option<BigInt> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixing elements of different quadratic fields");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => self.d.clone().or_else(|| other.d.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "D": self.d.as_ref().map(|d| {
                i64::try_from(d).map(Value::from).unwrap_or_else(|_| Value::from(d.to_string()))
            }),
            "r": format_rational(&self.r),
            "s": format_rational(&self.s),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("not a quadratic element: {v}"));
        let r = parse_rational(v.get("r").and_then(Value::as_str).ok_or_else(bad)?)?;
        let s = parse_rational(v.get("s").and_then(Value::as_str).ok_or_else(bad)?)?;
        match v.get("D") {
            None | Some(Value::Null) => {
                if s.is_zero() {
                    Ok(QuadElt::rational(r))
                } else {
                    Err(bad())
                }
            }
            Some(d) => {
                let d: BigInt = match d {
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad())?,
                    Value::String(s) => s.parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                };
                QuadElt::new(&d, r, s)
            }
        }
    }
}

impl PartialEq for QuadElt {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.s == other.s && (self.s.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadElt {}

impl Add for QuadElt {
    type Output = QuadElt;
    fn add(self, rhs: QuadElt) -> QuadElt {
        let d = self.merged_field(&rhs);
        QuadElt {
            d,
            r: self.r + rhs.r,
            s: self.s + rhs.s,
        }
    }
}

impl Sub for QuadElt {
    type Output = QuadElt;
    fn sub(self, rhs: QuadElt) -> QuadElt {
        self + (-rhs)
    }
}

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt {
            d: self.d,
            r: -self.r,
            s: -self.s,
        }
    }
}

impl Mul for QuadElt {
    type Output = QuadElt;
    fn mul(self, rhs: QuadElt) -> QuadElt {
        let d = self.merged_field(&rhs);
        let dr = BigRational::from_integer(d.clone().unwrap_or_else(BigInt::zero));
        let r = &self.r * &rhs.r + dr * &self.s * &rhs.s;
        let s = &self.r * &rhs.s + &self.s * &rhs.r;
        QuadElt { d, r, s }
    }
}

impl Zero for QuadElt {
    fn zero() -> Self {
        QuadElt::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }
}

impl One for QuadElt {
    fn one() -> Self {
        QuadElt::rational(BigRational::one())
    }
}

impl Ring for QuadElt {
    fn from_int(n: &BigInt) -> Self {
        QuadElt::rational(BigRational::from_integer(n.clone()))
    }
}

impl Field for QuadElt {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadElt {
            d: c.d,
            r: c.r / &n,
            s: c.s / &n,
        })
    }
    fn from_rational(r: &BigRational) -> Self {
        QuadElt::rational(r.clone())
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field() {
            None => write!(f, "{}", format_rational(&self.r)),
            Some(d) => write!(
                f,
                "{} + {}*sqrt({})",
                format_rational(&self.r),
                format_rational(&self.s),
                d
            ),
        }
    }
}

impl FromStr for QuadElt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a quadratic element: {s:?}"));
        match s.split_once(" + ") {
            None => Ok(QuadElt::rational(parse_rational(s)?)),
            Some((r, rest)) => {
                let (coef, rad) = rest.split_once("*sqrt(").ok_or_else(bad)?;
                let rad = rad.strip_suffix(')').ok_or_else(bad)?;
                let d: BigInt = rad.trim().parse().map_err(|_| bad())?;
                QuadElt::new(&d, parse_rational(r)?, parse_rational(coef)?)
            }
        }
    }
}

/// Solves `λ + λ⁻¹ = t`: returns `(t + √(t²−4))/2`, or the rational root of
/// larger absolute value when `t² − 4` is a rational square (including the
/// double roots ±1 at `t = ±2`).
pub fn solve_lambda(t: &BigRational) -> QuadElt {
    let two = BigRational::from_integer(BigInt::from(2));
    let disc = t * t - BigRational::from_integer(BigInt::from(4));
    if let Some(root) = exact_sqrt_rational(&disc) {
        let a = (t + &root) / &two;
        let b = (t - &root) / &two;
        return QuadElt::rational(if a.abs() >= b.abs() { a } else { b });
    }
    QuadElt::rational(t / &two)
        + QuadElt::sqrt_of(&disc) * QuadElt::rational(BigRational::new(1.into(), 2.into()))
}

/// An element of the ring of integers `O_d` of `Q(√−d)`.
///
/// When `d ≡ 3 (mod 4)` the coordinates are in the half basis: the element is
/// `(a + b√−d)/2` with `a ≡ b (mod 2)`. Otherwise it is `a + b√−d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub d: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub half_basis: bool,
}

impl QuadInt {
    pub fn new(d: &BigInt, a: BigInt, b: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::precondition("O_d needs d > 0"));
        }
        let (sq, _) = squarefree_decompose(d);
        if !sq.is_one() {
            return Err(Error::precondition(format!("d = {d} is not squarefree")));
        }
        let half_basis = (d % 4u32) == BigInt::from(3u32);
        if half_basis && (&a - &b).is_odd() {
            return Err(Error::precondition(
                "half-basis coordinates must share parity",
            ));
        }
        Ok(QuadInt {
            d: d.clone(),
            a,
            b,
            half_basis,
        })
    }

    pub fn to_elt(&self) -> QuadElt {
        let scale = if self.half_basis {
            BigRational::new(BigInt::one(), BigInt::from(2))
        } else {
            BigRational::one()
        };
        let r = BigRational::from_integer(self.a.clone()) * &scale;
        let s = BigRational::from_integer(self.b.clone()) * &scale;
        QuadElt {
            d: Some(-self.d.clone()),
            r,
            s,
        }
    }

    /// Inverse of [`QuadInt::to_elt`]; `None` when `z ∉ O_d`.
    pub fn from_elt(z: &QuadElt, d: &BigInt) -> Option<QuadInt> {
        if let Some(f) = z.field() {
            if *f != -d.clone() {
                return None;
            }
        }
        let half = (d % 4u32) == BigInt::from(3u32);
        if half {
            let a = z.r() * BigRational::from_integer(2.into());
            let b = z.s() * BigRational::from_integer(2.into());
            if !a.is_integer() || !b.is_integer() {
                return None;
            }
            QuadInt::new(d, a.to_integer(), b.to_integer()).ok()
        } else {
            if !z.r().is_integer() || !z.s().is_integer() {
                return None;
            }
            QuadInt::new(d, z.r().to_integer(), z.s().to_integer()).ok()
        }
    }

    pub fn conj(&self) -> Self {
        QuadInt {
            d: self.d.clone(),
            a: self.a.clone(),
            b: -self.b.clone(),
            half_basis: self.half_basis,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_elt())
    }
}

/// Membership test `z ∈ O_d` for `z ∈ Q(√−d)`.
pub fn quad_ring_membership(z: &QuadElt, d: &BigInt) -> Result<bool> {
    if let Some(f) = z.field() {
        if f.is_positive() {
            return Err(Error::NotImaginaryQuadratic(f.to_string()));
        }
    }
    if !d.is_positive() {
        return Err(Error::NotImaginaryQuadratic((-d.clone()).to_string()));
    }
    Ok(QuadInt::from_elt(z, d).is_some())
}

impl QuadElt {
    pub fn in_ring_of_integers(&self, d: &BigInt) -> Result<bool> {
        quad_ring_membership(self, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn qe(d: i64, r: BigRational, s: BigRational) -> QuadElt {
        QuadElt::new(&BigInt::from(d), r, s).unwrap()
    }

    #[test]
    fn squarefree() {
        assert_eq!(
            squarefree_decompose(&BigInt::from(-4)),
            (2.into(), (-1).into())
        );
        assert_eq!(
            squarefree_decompose(&BigInt::from(72)),
            (6.into(), 2.into())
        );
        assert_eq!(squarefree_decompose(&BigInt::from(5)), (1.into(), 5.into()));
        assert_eq!(
            squarefree_decompose(&BigInt::from(49)),
            (7.into(), 1.into())
        );
    }

    #[test]
    fn membership_examples() {
        let i = qe(-1, int(0), int(1));
        assert!(quad_ring_membership(&i, &1.into()).unwrap());
        let omega = qe(-3, rat(1, 2), rat(1, 2));
        assert!(quad_ring_membership(&omega, &3.into()).unwrap());
        let half = QuadElt::rational(rat(1, 2));
        assert!(!quad_ring_membership(&half, &1.into()).unwrap());
        // (1 + √−1)/2 has mismatched denominators for d = 1
        assert!(!quad_ring_membership(&qe(-1, rat(1, 2), rat(1, 2)), &1.into()).unwrap());
        // (1 + 2√−3)/2: parity mismatch
        assert!(!quad_ring_membership(&qe(-3, rat(1, 2), int(1)), &3.into()).unwrap());
        assert!(matches!(
            quad_ring_membership(&qe(5, int(0), int(1)), &5.into()),
            Err(Error::NotImaginaryQuadratic(_))
        ));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(solve_lambda(&int(3)), qe(5, rat(3, 2), rat(1, 2)));
        assert_eq!(solve_lambda(&int(2)), QuadElt::rational(int(1)));
        assert_eq!(solve_lambda(&int(-2)), QuadElt::rational(int(-1)));
        assert_eq!(solve_lambda(&int(0)), qe(-1, int(0), int(1)));
        // t = 5/2: λ = 2
        assert_eq!(solve_lambda(&rat(5, 2)), QuadElt::rational(int(2)));
    }

    #[test]
    fn lambda_satisfies_equation() {
        for t in -12..=12 {
            let t = int(t);
            let l = solve_lambda(&t);
            let sum = l.clone() + l.inv().unwrap();
            assert_eq!(sum, QuadElt::rational(t.clone()));
        }
    }

    #[test]
    fn display_roundtrip() {
        for z in [
            qe(5, rat(3, 2), rat(-1, 2)),
            qe(-7, int(0), rat(4, 3)),
            QuadElt::rational(rat(-9, 4)),
        ] {
            let s = z.to_string();
            assert_eq!(s.parse::<QuadElt>().unwrap(), z);
            assert_eq!(QuadElt::from_json(&z.to_json()).unwrap(), z);
        }
    }

    #[test]
    fn quadint_roundtrip() {
        let d = BigInt::from(3);
        let w = QuadInt::new(&d, 1.into(), 1.into()).unwrap();
        let z = w.to_elt();
        assert_eq!(QuadInt::from_elt(&z, &d).unwrap(), w);
        assert!(QuadInt::new(&d, 1.into(), 2.into()).is_err());
        assert!(QuadInt::new(&BigInt::from(4), 1.into(), 2.into()).is_err());
    }
}
