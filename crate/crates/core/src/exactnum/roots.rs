//! Exact integer and rational roots of univariate polynomials over Q,
//! via integer Sturm chains and bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;

/// Integer polynomial, constant term first.
type IntPoly = Vec<BigInt>;

fn primitive(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

fn derivative(p: &IntPoly) -> IntPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Remainder of `a` by `b` after scaling `a` by `|lc b|^(δ+1)`, which keeps signs.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let lb = b.last().unwrap().abs();
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        if r.last().unwrap().is_zero() {
            r.pop();
            continue;
        }
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let lcb = b.last().unwrap();
        // r ← |lc b|·r − sign(lc b)·lr·x^shift·b
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let f = if lcb.is_negative() { -lr } else { lr };
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        r.pop();
    }
    primitive(r)
}

/// Sign of `p(n/d)` for `d > 0`.
fn sign_at(p: &IntPoly, n: &BigInt, d: &BigInt) -> i8 {
    let mut acc = BigInt::zero();
    let mut dk = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dk;
        dk *= d;
    }
    // acc = d^deg · p(n/d)
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    /// Chain of the squarefree part of `p`.
    fn new(p: &Poly<BigRational>) -> Self {
        let g = p.gcd(&p.derivative());
        let sq = primitive(p.exact_div(&g).unwrap().clear_denominators());
        let mut chain = vec![derivative(&sq), sq];
        chain.swap(0, 1);
        while chain.last().is_some_and(|c| c.len() > 1) {
            let n = chain.len();
            let r = pseudo_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm { chain }
    }

    fn squarefree(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn sign_changes(&self, n: &BigInt, d: &BigInt) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign_at(p, n, d);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        let va = self.sign_changes(a.numer(), a.denom());
        let vb = self.sign_changes(b.numer(), b.denom());
        va.saturating_sub(vb)
    }
}

fn cauchy_bound(p: &Poly<BigRational>) -> BigInt {
    let lead = p.leading().unwrap().abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    (m + BigRational::one()).ceil().to_integer() + 1
}

/// Integer roots in `[lo, hi]`; `None` for the zero polynomial (every point is a root).
pub fn integer_roots(p: &Poly<BigRational>, lo: &BigInt, hi: &BigInt) -> Option<Vec<BigInt>> {
    let deg = p.degree()?;
    if deg == 0 || lo > hi {
        return Some(vec![]);
    }
    let b = cauchy_bound(p);
    let lo = lo.max(&-b.clone()).clone();
    let hi = hi.min(&b).clone();
    if lo > hi {
        return Some(vec![]);
    }
    let sturm = Sturm::new(p);
    let sq = sturm.squarefree();
    let one = BigInt::one();
    let zero_at = |x: &BigInt| sign_at(sq, x, &one) == 0;
    let mut out = Vec::new();
    if zero_at(&lo) {
        out.push(lo.clone());
    }
    let changes = |x: &BigInt| sturm.sign_changes(x, &one);
    let mut stack = vec![(changes(&lo), lo, changes(&hi), hi)];
    while let Some((va, a, vb, b)) = stack.pop() {
        if va <= vb {
            continue;
        }
        if &b - &a == one {
            if zero_at(&b) {
                out.push(b);
            }
            continue;
        }
        let mid = (&a + &b).div_floor(&BigInt::from(2));
        let vm = changes(&mid);
        stack.push((va, a, vm, mid.clone()));
        stack.push((vm, mid, vb, b));
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// The rational with least denominator in `[a, b]`.
fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= b {
        return next;
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// All rational roots, sorted; `None` for the zero polynomial.
pub fn rational_roots(p: &Poly<BigRational>) -> Option<Vec<BigRational>> {
    let deg = p.degree()?;
    if deg == 0 {
        return Some(vec![]);
    }
    let sturm = Sturm::new(p);
    let sq = sturm.squarefree().clone();
    let lead = sq.last().unwrap().abs();
    // distinct rationals with denominators dividing `lead` are 1/lead² apart
    let gap = BigRational::new(BigInt::one(), &lead * &lead);
    let b = BigRational::from_integer(cauchy_bound(p));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n > 1 {
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            stack.push((a, mid.clone()));
            stack.push((mid, b));
            continue;
        }
        // one simple root in (a, b]: shrink by sign changes
        let sgn = |x: &BigRational| sign_at(&sq, x.numer(), x.denom());
        let (mut a, mut b) = (a, b);
        if sgn(&b) == 0 {
            out.push(b);
            continue;
        }
        let mut a_is_root = sgn(&a) == 0;
        while &b - &a >= gap || a_is_root {
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            match sgn(&mid) {
                0 => {
                    a = mid.clone();
                    b = mid;
                    break;
                }
                s if s == sgn(&b) => b = mid,
                _ => {
                    a = mid;
                    a_is_root = false;
                }
            }
        }
        let r = simplest_between(&a, &b);
        if sgn(&r) == 0 {
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}
