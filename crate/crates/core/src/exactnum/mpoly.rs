use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Ring;

const VARS: [char; 3] = ['x', 'y', 'z'];

/// An integer polynomial in `x, y, z`, stored sparsely by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl MPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], BigInt)>) -> Self {
        let mut out = MPoly::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// The coordinate function `x`, `y` or `z` (index 0, 1, 2).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        MPoly::from_terms([(e, BigInt::one())])
    }

    pub fn constant(c: BigInt) -> Self {
        MPoly::from_terms([([0, 0, 0], c)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&[0, 0, 0])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Substitutes ring elements for `x, y, z`.
    pub fn eval<R: Ring>(&self, p: &[R; 3]) -> R {
        let maxdeg: [u32; 3] = [self.degree_in(0), self.degree_in(1), self.degree_in(2)];
        let powers: Vec<Vec<R>> = (0..3)
            .map(|i| {
                let mut v = vec![R::one()];
                for k in 1..=maxdeg[i] as usize {
                    v.push(v[k - 1].clone() * p[i].clone());
                }
                v
            })
            .collect();
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut term = R::from_int(c);
            for i in 0..3 {
                if e[i] > 0 {
                    term = term * powers[i][e[i] as usize].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[MPoly; 3]) -> MPoly {
        self.eval(images)
    }

    /// Sign-normalized, content-free representative (for comparing loci).
    pub fn primitive(&self) -> MPoly {
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        if g.is_zero() {
            return self.clone();
        }
        let sign = match self.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        MPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c * &sign / &g)))
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(BigInt::one())
    }
}

impl Ring for MPoly {
    fn from_int(n: &BigInt) -> Self {
        MPoly::constant(n.clone())
    }
}

/// Graded-lex style text: highest total degree first, e.g. `x^2*y - 3*z + 1`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then(b.cmp(a))
        });
        for (n, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || *e == [0, 0, 0] {
                factors.push(mag.to_string());
            }
            for i in 0..3 {
                match e[i] {
                    0 => {}
                    1 => factors.push(VARS[i].to_string()),
                    k => factors.push(format!("{}^{k}", VARS[i])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let z = MPoly::var(2);
        let p = x.clone() * z.clone() - y.clone();
        assert_eq!(p.to_string(), "x*z - y");
        let q = p.clone() * p.clone();
        assert_eq!(q.to_string(), "x^2*z^2 - 2*x*y*z + y^2");
        assert_eq!((p.clone() - p).to_string(), "0");
        let c = MPoly::constant(BigInt::from(-4)) + x.square();
        assert_eq!(c.to_string(), "x^2 - 4");
    }

    #[test]
    fn eval_at_integers() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let z = MPoly::var(2);
        let f = x.square() + y.square() + z.square() + x * y * z;
        let p = [BigInt::from(-3), BigInt::from(3), BigInt::from(3)];
        assert!(f.eval(&p).is_zero());
    }
}
