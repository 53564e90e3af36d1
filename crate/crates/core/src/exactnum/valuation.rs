use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{format_rational, is_prime, parse_rational, RatFunc};
use crate::error::{Error, Result};

/// A discrete valuation on Q or on Q(T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// `v_p` on Q.
    Padic(BigInt),
    /// Order of vanishing at `T = α` on Q(T).
    Point(BigRational),
    /// `deg(den) − deg(num)` on Q(T).
    Infinity,
}

impl Place {
    pub fn padic(p: i64) -> Result<Self> {
        let p = BigInt::from(p);
        if !is_prime(&p) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        Ok(Place::Padic(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Padic(p) => write!(f, "p={p}"),
            Place::Point(a) => write!(f, "T={}", format_rational(a)),
            Place::Infinity => write!(f, "T=oo"),
        }
    }
}

fn strip(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut e = 0;
    while (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

/// `v_p(r)` for nonzero rational `r` and prime `p`.
pub fn padic_valuation(r: &BigRational, p: &BigInt) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    Ok(strip(r.numer(), p) - strip(r.denom(), p))
}

/// Valuation of a nonzero rational function at a place of Q(T).
pub fn place_valuation(f: &RatFunc, place: &Place) -> Result<i64> {
    if f.num().degree().is_none() {
        return Err(Error::ValuationOfZero);
    }
    match place {
        Place::Infinity => {
            let dn = f.num().degree().unwrap() as i64;
            let dd = f.den().degree().unwrap() as i64;
            Ok(dd - dn)
        }
        Place::Point(a) => Ok(f.num().order_at(a) as i64 - f.den().order_at(a) as i64),
        Place::Padic(_) => Err(Error::precondition(
            "p-adic place used on a rational function",
        )),
    }
}

/// Elements that carry a discrete valuation; `Ok(None)` stands for `v(0) = +∞`.
pub trait Valued {
    fn valuation(&self, place: &Place) -> Result<Option<i64>>;
}

impl Valued for BigRational {
    fn valuation(&self, place: &Place) -> Result<Option<i64>> {
        if self.is_zero() {
            return Ok(None);
        }
        match place {
            Place::Padic(p) => padic_valuation(self, p).map(Some),
            // Constants are units at every place of Q(T).
            Place::Point(_) | Place::Infinity => Ok(Some(0)),
        }
    }
}

impl Valued for RatFunc {
    fn valuation(&self, place: &Place) -> Result<Option<i64>> {
        if self.num().degree().is_none() {
            return Ok(None);
        }
        place_valuation(self, place).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Rational(BigRational),
    Function(RatFunc),
}

/// An element of a discretely valued field, bundled with its place.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuedElement {
    pub payload: Payload,
    pub place: Place,
}

impl ValuedElement {
    pub fn rational(r: BigRational, p: BigInt) -> Self {
        ValuedElement {
            payload: Payload::Rational(r),
            place: Place::Padic(p),
        }
    }

    pub fn function(f: RatFunc, place: Place) -> Self {
        ValuedElement {
            payload: Payload::Function(f),
            place,
        }
    }

    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.payload {
            Payload::Rational(r) => r.valuation(&self.place),
            Payload::Function(f) => f.valuation(&self.place),
        }
    }

    pub fn parse_rational(s: &str, p: BigInt) -> Result<Self> {
        Ok(ValuedElement::rational(parse_rational(s)?, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, Poly};
    use num_traits::One;

    #[test]
    fn padic_examples() {
        assert_eq!(padic_valuation(&int(12), &2.into()).unwrap(), 2);
        assert_eq!(padic_valuation(&rat(5, 9), &3.into()).unwrap(), -2);
        assert_eq!(padic_valuation(&int(1), &7.into()).unwrap(), 0);
        assert_eq!(
            padic_valuation(&int(0), &7.into()),
            Err(Error::ValuationOfZero)
        );
        assert!(matches!(
            padic_valuation(&int(3), &6.into()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn place_examples() {
        let t = Poly::<BigRational>::var();
        let t2p1 = t.clone() * t.clone() + Poly::one();
        assert_eq!(
            place_valuation(&RatFunc::from_poly(t2p1), &Place::Infinity).unwrap(),
            -2
        );
        let t3 = t.clone() * t.clone() * t.clone();
        let f = RatFunc::new(t3, t.clone() - Poly::one()).unwrap();
        assert_eq!(place_valuation(&f, &Place::Point(int(0))).unwrap(), 3);
        assert_eq!(place_valuation(&f, &Place::Point(int(1))).unwrap(), -1);
        assert_eq!(place_valuation(&f, &Place::Infinity).unwrap(), -2);
        let five = RatFunc::from_poly(Poly::constant(int(5)));
        assert_eq!(place_valuation(&five, &Place::Infinity).unwrap(), 0);
        assert_eq!(
            place_valuation(&RatFunc::zero(), &Place::Infinity),
            Err(Error::ValuationOfZero)
        );
    }
}
