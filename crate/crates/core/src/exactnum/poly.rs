use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{format_rational, Field, Ring};

/// A univariate polynomial in `T`, coefficients low degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and its degree is the `None` sentinel.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `T`.
    pub fn var() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, deg: usize) -> Self {
        let mut coeffs = vec![R::zero(); deg];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_value(&self) -> Option<R> {
        match self.coeffs.len() {
            0 => Some(R::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// Evaluates in a larger ring `S`, given the coefficient embedding.
    pub fn eval_in<S: Ring>(&self, at: &S, embed: impl Fn(&R) -> S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * at.clone() + embed(c))
    }

    /// `self(inner(T))`.
    pub fn compose(&self, inner: &Poly<R>) -> Poly<R> {
        self.eval_in(inner, |c| Poly::constant(c.clone()))
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly<R>) -> (Poly<R>, Poly<R>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = rem[top].clone() * lead_inv.clone();
            let shift = top - dd;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - c.clone() * dc.clone();
            }
            quot[shift] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly<R>) -> Poly<R> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn exact_div(&self, divisor: &Poly<R>) -> Option<Poly<R>> {
        let (q, r) = self.divrem(divisor);
        r.degree().is_none().then_some(q)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::new(vec![]);
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly::new(vec![])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn from_int(n: &BigInt) -> Self {
        Poly::constant(R::from_int(n))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly<BigRational> {
    /// Canonical text form with rational coefficients, e.g. `3*T^2 - 1/2*T + 4`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = format_rational(&mag);
            match (i, mag.is_one()) {
                (0, _) => out.push_str(&coef),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&coef);
                    out.push('*');
                }
            }
            match i {
                0 => {}
                1 => out.push('T'),
                _ => out.push_str(&format!("T^{i}")),
            }
        }
        out
    }

    /// Multiplies through by the lcm of the denominators, giving an
    /// integer polynomial with the same roots.
    pub fn clear_denominators(&self) -> Vec<BigInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        self.coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect()
    }

    /// Order of vanishing at `T = α` (the zero polynomial is not allowed).
    pub fn order_at(&self, alpha: &BigRational) -> usize {
        let lin = Poly::new(vec![-alpha.clone(), BigRational::one()]);
        let mut p = self.clone();
        let mut n = 0;
        while p.degree().is_some() {
            match p.exact_div(&lin) {
                Some(q) => {
                    p = q;
                    n += 1;
                }
                None => break,
            }
        }
        n
    }
}

/// A rational function `num/den` over Q in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: Poly<BigRational>,
    den: Poly<BigRational>,
}

impl RatFunc {
    pub fn new(num: Poly<BigRational>, den: Poly<BigRational>) -> Option<Self> {
        den.degree()?;
        if num.degree().is_none() {
            return Some(RatFunc::from_poly(num));
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let lead = den.leading().unwrap().clone();
        let inv = lead.recip();
        Some(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<BigRational>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<BigRational> {
        &self.num
    }

    pub fn den(&self) -> &Poly<BigRational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Evaluation at a rational point; `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    pub fn to_text(&self) -> String {
        if self.is_polynomial() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den).unwrap();
        }
        RatFunc::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
        .unwrap()
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl Ring for RatFunc {
    fn from_int(n: &BigInt) -> Self {
        RatFunc::from_poly(Poly::from_int(n))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            RatFunc::new(self.den.clone(), self.num.clone())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(r.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[1, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn division_and_gcd() {
        // (T^2 - 1) = (T - 1)(T + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let c = p(&[-1, 0, 0, 1]); // T^3 - 1
        assert_eq!(a.gcd(&c), p(&[-1, 1]));
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[1, -2, 3]).to_text(), "3*T^2 - 2*T + 1");
        assert_eq!(p(&[0, 1]).to_text(), "T");
        assert_eq!(
            Poly::new(vec![rat(1, 2), int(0), int(-1)]).to_text(),
            "-T^2 + 1/2"
        );
        assert_eq!(p(&[]).to_text(), "0");
    }

    #[test]
    fn ratfunc_canonical() {
        // (2T^2 - 2)/(2T - 2) = T + 1
        let f = RatFunc::new(p(&[-2, 0, 2]), p(&[-2, 2])).unwrap();
        assert_eq!(f, RatFunc::from_poly(p(&[1, 1])));
        let g = RatFunc::new(p(&[1]), p(&[0, 2])).unwrap();
        assert_eq!(g.den(), &p(&[0, 1]));
        assert_eq!(g.num(), &Poly::constant(rat(1, 2)));
        assert!(RatFunc::new(p(&[1]), p(&[])).is_none());
    }

    #[test]
    fn order_at_point() {
        let f = p(&[0, 0, 0, 1]) * p(&[-1, 1]);
        assert_eq!(f.order_at(&int(0)), 3);
        assert_eq!(f.order_at(&int(1)), 1);
        assert_eq!(f.order_at(&int(2)), 0);
    }
}
