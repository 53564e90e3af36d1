//! Exact arithmetic: integers, rationals, quadratic fields, polynomials,
//! rational functions and discrete valuations.
//!
//! Everything here is an immutable value type. The [`Ring`] trait is the
//! common currency: surface evaluation, Vieta moves and trace recursions are
//! all written once against it and then run over integers, rationals,
//! quadratic-field elements, polynomials or symbolic polynomials in x, y, z.

mod expr;
mod mpoly;
mod poly;
mod quad;
mod roots;
mod valuation;

pub use expr::{parse_expr, Expr};
pub use mpoly::MPoly;
pub use poly::{Poly, RatFunc};
pub use quad::{quad_ring_membership, solve_lambda, squarefree_decompose, QuadElt, QuadInt};
pub use roots::{integer_roots, rational_roots};
pub use valuation::{padic_valuation, place_valuation, Payload, Place, Valued, ValuedElement};

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring with an embedding of the integers.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// A ring in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn from_rational(r: &BigRational) -> Self;
}

impl Ring for BigInt {
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Ring for BigRational {
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical decimal form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn is_prime(p: &BigInt) -> bool {
    if *p < BigInt::from(2) {
        return false;
    }
    let two = BigInt::from(2);
    if *p == two {
        return true;
    }
    if p.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization of |n|; desk-scale inputs only.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn exact_sqrt_rational(r: &BigRational) -> Option<BigRational> {
    let n = exact_sqrt(r.numer())?;
    let d = exact_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// Integers go out as JSON numbers when they fit in an `i64`, else as decimal strings.
pub fn json_int(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(v) => v.into(),
        Err(_) => n.to_string().into(),
    }
}

pub fn json_rat(r: &BigRational) -> serde_json::Value {
    if r.denom().is_one() {
        json_int(r.numer())
    } else {
        format_rational(r).into()
    }
}

pub fn int_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => parse_integer(&n.to_string()),
        serde_json::Value::String(s) => parse_integer(s),
        _ => Err(Error::Parse(format!("not an integer: {v}"))),
    }
}
