//! Points `(xᵐ, yⁿ)` on a plane curve `f(X, Y) = 0` in the two-dimensional
//! torus: either finitely many, or the curve is a translate of a subtorus
//! preserved by a nontrivial element of the group generated by `x`, `y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{
    factor, format_rational, json_rat, parse_expr, parse_rational, Field, Poly, Ring,
};

/// A polynomial in `X, Y` with rational coefficients, stored by exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorusPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl TorusPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut out = TorusPoly::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn x() -> Self {
        TorusPoly::from_terms([((1, 0), BigRational::one())])
    }

    pub fn y() -> Self {
        TorusPoly::from_terms([((0, 1), BigRational::one())])
    }

    pub fn constant(c: BigRational) -> Self {
        TorusPoly::from_terms([((0, 0), c)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn eval<F: Field>(&self, x: &F, y: &F) -> F {
        let mut acc = F::zero();
        for ((a, b), c) in &self.terms {
            acc = acc + F::from_rational(c) * x.pow(*a) * y.pow(*b);
        }
        acc
    }

    /// `f(X, Y) ↦ f(sX, tY)`.
    pub fn scale_vars(&self, s: &BigRational, t: &BigRational) -> Self {
        TorusPoly::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), c * s.pow(a as i32) * t.pow(b as i32))),
        )
    }

    /// `f(u·Tᵉ, v·Tᵈ)` as a polynomial in `T`.
    pub fn compose_monomial(
        &self,
        u: &BigRational,
        e: u32,
        v: &BigRational,
        d: u32,
    ) -> Poly<BigRational> {
        let mut coeffs: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            *coeffs
                .entry(a * e + b * d)
                .or_insert_with(BigRational::zero) += c * u.pow(a as i32) * v.pow(b as i32);
        }
        let top = coeffs.keys().max().copied().unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); top + 1];
        for (k, c) in coeffs {
            out[k as usize] = c;
        }
        Poly::new(out)
    }

    /// The coefficients as a polynomial in `X` over `Q[Y]`.
    fn coefficients_in(&self, var: usize) -> Vec<Poly<BigRational>> {
        let mut out: BTreeMap<u32, BTreeMap<u32, BigRational>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let (outer, inner) = if var == 0 { (a, b) } else { (b, a) };
            out.entry(outer).or_default().insert(inner, c.clone());
        }
        out.into_values()
            .map(|m| {
                let top = *m.keys().max().unwrap() as usize;
                let mut v = vec![BigRational::zero(); top + 1];
                for (k, c) in m {
                    v[k as usize] = c;
                }
                Poly::new(v)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(a, b), c)| json!({"cx": format_rational(c), "dx": a, "dy": b}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a monomial list".into()))?;
        let mut out = TorusPoly::default();
        for m in arr {
            let c = m["cx"]
                .as_str()
                .map(parse_rational)
                .transpose()?
                .ok_or_else(|| Error::Parse("monomial needs cx".into()))?;
            let exp = |k: &str| {
                m[k].as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| Error::Parse(format!("monomial needs {k}")))
            };
            out.add_term((exp("dx")?, exp("dy")?), c);
        }
        Ok(out)
    }
}

impl Add for TorusPoly {
    type Output = TorusPoly;
    fn add(mut self, rhs: TorusPoly) -> TorusPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for TorusPoly {
    type Output = TorusPoly;
    fn neg(self) -> TorusPoly {
        TorusPoly::from_terms(self.terms.into_iter().map(|(e, c)| (e, -c)))
    }
}

impl Sub for TorusPoly {
    type Output = TorusPoly;
    fn sub(self, rhs: TorusPoly) -> TorusPoly {
        self + (-rhs)
    }
}

impl Mul for TorusPoly {
    type Output = TorusPoly;
    fn mul(self, rhs: TorusPoly) -> TorusPoly {
        let mut out = TorusPoly::default();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }
}

impl Zero for TorusPoly {
    fn zero() -> Self {
        TorusPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for TorusPoly {
    fn one() -> Self {
        TorusPoly::constant(BigRational::one())
    }
}

impl Ring for TorusPoly {
    fn from_int(n: &BigInt) -> Self {
        TorusPoly::constant(BigRational::from_integer(n.clone()))
    }
}

impl FromStr for TorusPoly {
    type Err = Error;

    /// Expressions in `X` and `Y`; division only by nonzero constants.
    fn from_str(s: &str) -> Result<Self> {
        let e = parse_expr(s)?;
        e.eval(
            &|v| match v {
                "X" | "x" => Some(TorusPoly::x()),
                "Y" | "y" => Some(TorusPoly::y()),
                _ => None,
            },
            &|a, b| {
                let (&e, c) = b.terms.iter().next()?;
                (b.len() == 1 && e == (0, 0)).then(|| a.clone() * TorusPoly::constant(c.recip()))
            },
        )
    }
}

impl fmt::Display for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                parts.push(format_rational(&abs));
            }
            for (v, k) in [("X", a), ("Y", b)] {
                match k {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    k => parts.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// `f(xᵐ, yⁿ) = 0` over `(m, n) ∈ Z²_{≥0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePointProblem {
    pub f: TorusPoly,
    pub x: BigRational,
    pub y: BigRational,
}

impl LatticePointProblem {
    pub fn new(f: TorusPoly, x: BigRational, y: BigRational) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::precondition("f must be nonzero"));
        }
        if f.terms().all(|(&(a, _), _)| a > 0) || f.terms().all(|(&(_, b), _)| b > 0) {
            return Err(Error::precondition("f is divisible by X or Y"));
        }
        for v in [&x, &y] {
            if v.is_zero() || v.abs().is_one() {
                return Err(Error::precondition(format!(
                    "{} must be nonzero with |.| != 1",
                    format_rational(v)
                )));
            }
        }
        Ok(LatticePointProblem { f, x, y })
    }

    pub fn to_json(&self) -> Value {
        json!({"f": self.f.to_json(), "f_text": self.f.to_string(), "x": json_rat(&self.x), "y": json_rat(&self.y)})
    }
}

fn exponent_vector(r: &BigRational) -> BTreeMap<BigInt, i64> {
    let mut out = BTreeMap::new();
    for (p, e) in factor(r.numer()) {
        out.insert(p, e as i64);
    }
    for (p, e) in factor(r.denom()) {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    out
}

/// `(v, a, b)` with `|x| = vᵃ`, `|y| = vᵇ`, `a, b` coprime and positive.
pub fn multiplicative_dependence(
    x: &BigRational,
    y: &BigRational,
) -> Result<Option<(BigRational, u64, u64)>> {
    let one = BigRational::one();
    if x.abs() <= one || y.abs() <= one {
        return Err(Error::precondition(
            "multiplicative dependence needs |x|, |y| > 1",
        ));
    }
    let (ex, ey) = (exponent_vector(x), exponent_vector(y));
    if ex.keys().ne(ey.keys()) {
        return Ok(None);
    }
    let (p0, &xp) = ex.iter().next().unwrap();
    let yp = ey[p0];
    let g = xp.gcd(&yp) * xp.signum();
    let (a, b) = (xp / g, yp / g);
    if a <= 0 || b <= 0 {
        return Ok(None);
    }
    let mut v = BigRational::one();
    for (p, &e) in &ex {
        if e * b != ey[p] * a {
            return Ok(None);
        }
        v *= BigRational::from_integer(p.clone()).pow((e / a) as i32);
    }
    Ok(Some((v, a as u64, b as u64)))
}

/// Exact `k`-th root of a rational, if there is one.
fn exact_root(r: &BigRational, k: u32) -> Option<BigRational> {
    let neg = r.is_negative();
    if neg && k.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| {
        let c = n.abs().nth_root(k);
        (c.pow(k) == n.abs()).then_some(c)
    };
    let v = BigRational::new(root(r.numer())?, root(r.denom())?);
    Some(if neg { -v } else { v })
}

/// `Tᵍ − r` reducible over Q (Capelli).
fn binomial_reducible(g: u32, r: &BigRational) -> bool {
    let mut primes = Vec::new();
    let mut n = g;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    primes.iter().any(|&p| exact_root(r, p).is_some())
        || (g.is_multiple_of(4)
            && exact_root(&(-r / BigRational::from_integer(4.into())), 4).is_some())
}

/// A subtorus translate `{(u₀Tᵉ, v₀Tᵈ)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtorusTranslate {
    pub d: u32,
    pub e: u32,
    pub base: (BigRational, BigRational),
}

/// `f` cuts out `{Xᵈ = r·Yᵉ}` for coprime `d, e ≥ 0` exactly when it has two
/// monomials whose exponent difference is `(d, −e)` up to sign. Returns
/// `None` for other shapes, including exponent differences of equal sign.
pub fn is_subtorus_translate(f: &TorusPoly) -> Result<Option<SubtorusTranslate>> {
    check_irreducible(f)?;
    if f.len() != 2 {
        return Ok(None);
    }
    let mut it = f.terms();
    let (&(l1, m1), c1) = it.next().unwrap();
    let (&(l2, m2), c2) = it.next().unwrap();
    let (dl, dm) = (l1 as i64 - l2 as i64, m1 as i64 - m2 as i64);
    // c₁X^{l₁}Y^{m₁} = −c₂X^{l₂}Y^{m₂}
    let (dl, dm, r) = if dl > 0 || (dl == 0 && dm < 0) {
        (dl, dm, -c2 / c1)
    } else {
        (-dl, -dm, -c1 / c2)
    };
    if dm > 0 {
        return Ok(None);
    }
    let (d, e) = (dl as u32, (-dm) as u32);
    if d.gcd(&e) != 1 {
        return Ok(None);
    }
    // u₀ = r^α, v₀ = r^β with dα − eβ = 1
    let (alpha, beta): (i64, i64) = match (d, e) {
        (_, 0) => (1, 0),
        (0, _) => (0, -1),
        _ => {
            let ext = (d as i64).extended_gcd(&(e as i64));
            let a = ext.x.rem_euclid(e as i64);
            (a, (d as i64 * a - 1) / e as i64)
        }
    };
    let base = (r.pow(alpha as i32), r.pow(beta as i32));
    Ok(Some(SubtorusTranslate { d, e, base }))
}

/// Desk-scale irreducibility check: monomial content, content in `X` or
/// `Y`, and reducible binomials.
fn check_irreducible(f: &TorusPoly) -> Result<()> {
    if f.total_degree() > 4 && f.len() != 2 {
        return Err(Error::Unsupported(
            "irreducibility test limited to degree <= 4".into(),
        ));
    }
    for var in [0, 1] {
        let cs = f.coefficients_in(var);
        if cs.len() > 1 {
            let g = cs.iter().skip(1).fold(cs[0].clone(), |acc, c| acc.gcd(c));
            if g.degree().is_some_and(|d| d > 0) {
                let name = if var == 0 { "Y" } else { "X" };
                return Err(Error::Reducible(format!(
                    "common factor {} in {name}",
                    g.to_text().replace('T', name)
                )));
            }
        }
    }
    if f.len() == 2 {
        let mut it = f.terms();
        let (&(l1, m1), c1) = it.next().unwrap();
        let (&(l2, m2), c2) = it.next().unwrap();
        let g = (l1 as i64 - l2 as i64).gcd(&(m1 as i64 - m2 as i64)) as u32;
        if g > 1 && binomial_reducible(g, &(-c2 / c1)) {
            return Err(Error::Reducible(format!(
                "{f} factors as a binomial in a {g}-th power"
            )));
        }
    }
    Ok(())
}

/// `{(m, n) ∈ [0, M]² : f(xᵐ, yⁿ) = 0}`, sorted.
pub fn exponential_solutions(prob: &LatticePointProblem, m: u32) -> Vec<(u32, u32)> {
    let maxa = prob.f.terms().map(|(&(a, _), _)| a).max().unwrap_or(0);
    let maxb = prob.f.terms().map(|(&(_, b), _)| b).max().unwrap_or(0);
    let powers = |base: &BigRational, top: u32| -> Vec<BigRational> {
        let mut out = vec![BigRational::one()];
        for _ in 0..top {
            out.push(out.last().unwrap() * base);
        }
        out
    };
    let xs = powers(&prob.x, m * maxa);
    let ys = powers(&prob.y, m * maxb);
    let mut out = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            let mut acc = BigRational::zero();
            for (&(a, b), c) in prob.f.terms() {
                acc += c * &xs[(i * a) as usize] * &ys[(j * b) as usize];
            }
            if acc.is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Dichotomy {
    /// Every solution in the box; completeness beyond it is not certified.
    Finite,
    SubtorusTranslate {
        subtorus: SubtorusTranslate,
        /// `(x^{be}, y^{ad})`, squared when needed to fix the sign.
        invariant_element: (BigRational, BigRational),
        /// The solution set is a union of progressions with this step.
        step: (u64, u64),
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyResult {
    pub tag: Dichotomy,
    pub solutions: Vec<(u32, u32)>,
    pub bound: u32,
}

impl DichotomyResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "solutions": self.solutions,
            "bound": self.bound,
            "complete_within_bound": true,
        });
        match &self.tag {
            Dichotomy::Finite => v["tag"] = json!("finite"),
            Dichotomy::SubtorusTranslate {
                subtorus,
                invariant_element,
                step,
            } => {
                v["tag"] = json!("subtorus_translate");
                v["d"] = json!(subtorus.d);
                v["e"] = json!(subtorus.e);
                v["base"] = json!([json_rat(&subtorus.base.0), json_rat(&subtorus.base.1)]);
                v["invariant_element"] = json!([
                    json_rat(&invariant_element.0),
                    json_rat(&invariant_element.1)
                ]);
                v["step"] = json!([step.0, step.1]);
            }
        }
        v
    }
}

/// `f(X, Y)` vanishes identically along `(u₀Tᵉ, v₀Tᵈ)`.
pub fn parametrization_holds(f: &TorusPoly, st: &SubtorusTranslate) -> bool {
    f.compose_monomial(&st.base.0, st.e, &st.base.1, st.d)
        .is_zero()
}

/// `f(z₁X, z₂Y)` is a constant multiple of `f`.
pub fn preserves_curve(f: &TorusPoly, z: &(BigRational, BigRational)) -> bool {
    let g = f.scale_vars(&z.0, &z.1);
    let (e, c) = f.terms().next().unwrap();
    let ratio = &g.terms[e] / c;
    g == f.scale_vars(&BigRational::one(), &BigRational::one()) * TorusPoly::constant(ratio)
}

/// Subtorus translate when `f` is a binomial translate and `x, y` are
/// multiplicatively dependent in a way that preserves it and yields
/// solutions in the box; otherwise the bounded enumeration.
pub fn classify_dichotomy(prob: &LatticePointProblem, m: u32) -> DichotomyResult {
    let solutions = exponential_solutions(prob, m);
    let finite = DichotomyResult {
        tag: Dichotomy::Finite,
        solutions: solutions.clone(),
        bound: m,
    };
    let Ok(Some(st)) = is_subtorus_translate(&prob.f) else {
        return finite;
    };
    if solutions.is_empty() {
        return finite;
    }
    let one = BigRational::one();
    // both exponents must grow in the same direction
    if (prob.x.abs() > one) != (prob.y.abs() > one) {
        return finite;
    }
    let norm = |v: &BigRational| if v.abs() > one { v.clone() } else { v.recip() };
    let Ok(Some((_, a, b))) = multiplicative_dependence(&norm(&prob.x), &norm(&prob.y)) else {
        return finite;
    };
    let (d, e) = (st.d as u64, st.e as u64);
    let mut step = (b * e, a * d);
    let to_i32 = |k: u64| k.to_i32().expect("desk-scale exponents");
    let mut z = (prob.x.pow(to_i32(step.0)), prob.y.pow(to_i32(step.1)));
    if !preserves_curve(&prob.f, &z) {
        step = (2 * step.0, 2 * step.1);
        z = (prob.x.pow(to_i32(step.0)), prob.y.pow(to_i32(step.1)));
    }
    if z.0.is_one() && z.1.is_one()
        || !preserves_curve(&prob.f, &z)
        || !parametrization_holds(&prob.f, &st)
    {
        return finite;
    }
    DichotomyResult {
        tag: Dichotomy::SubtorusTranslate {
            subtorus: st,
            invariant_element: z,
            step,
        },
        solutions,
        bound: m,
    }
}

/// Differences of solutions that are not multiples of `step`.
pub fn progression_violations(
    solutions: &[(u32, u32)],
    step: (u64, u64),
) -> Vec<((u32, u32), (u32, u32))> {
    let mut out = Vec::new();
    let set: BTreeSet<_> = solutions.iter().collect();
    for &p in &set {
        for &q in &set {
            let (dm, dn) = (q.0 as i64 - p.0 as i64, q.1 as i64 - p.1 as i64);
            let (sm, sn) = (step.0 as i64, step.1 as i64);
            let ok = dm % sm == 0 && dn % sn == 0 && dm / sm == dn / sn;
            if !ok {
                out.push((*p, *q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn tp(s: &str) -> TorusPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_show() {
        assert_eq!(tp("2*X^2 - Y^3").to_string(), "2*X^2 - Y^3");
        assert_eq!(
            TorusPoly::from_json(&tp("X/2 + Y - 3").to_json()).unwrap(),
            tp("X/2 + Y - 3")
        );
        assert!("X/Y".parse::<TorusPoly>().is_err());
    }

    #[test]
    fn dependence_examples() {
        assert_eq!(
            multiplicative_dependence(&int(4), &int(8)).unwrap(),
            Some((int(2), 2, 3))
        );
        assert_eq!(multiplicative_dependence(&int(2), &int(3)).unwrap(), None);
        assert_eq!(
            multiplicative_dependence(&int(2), &int(2)).unwrap(),
            Some((int(2), 1, 1))
        );
        assert_eq!(
            multiplicative_dependence(&int(-8), &rat(9, 1)).unwrap(),
            None
        );
        assert_eq!(
            multiplicative_dependence(&rat(9, 4), &rat(-27, 8)).unwrap(),
            Some((rat(3, 2), 2, 3))
        );
        assert!(multiplicative_dependence(&rat(1, 2), &int(3)).is_err());
    }

    #[test]
    fn subtorus_examples() {
        let st = is_subtorus_translate(&tp("X - Y")).unwrap().unwrap();
        assert_eq!((st.d, st.e, st.base.clone()), (1, 1, (int(1), int(1))));
        assert_eq!(is_subtorus_translate(&tp("X + Y - 3")).unwrap(), None);
        let f = tp("2*X^2 - Y^3");
        let st = is_subtorus_translate(&f).unwrap().unwrap();
        assert_eq!((st.d, st.e), (2, 3));
        assert_eq!(st.base, (rat(1, 4), rat(1, 2)));
        assert!(parametrization_holds(&f, &st));
        assert!(matches!(
            is_subtorus_translate(&tp("X^2 - 4*Y^2")),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            is_subtorus_translate(&tp("X^2*Y + X*Y^2")),
            Err(Error::Reducible(_))
        ));
        assert_eq!(is_subtorus_translate(&tp("X^2 - 2*Y^2")).unwrap(), None);
        assert_eq!(is_subtorus_translate(&tp("X*Y - 2")).unwrap(), None);
        let st = is_subtorus_translate(&tp("X - 5")).unwrap().unwrap();
        assert!(parametrization_holds(&tp("X - 5"), &st));
    }

    #[test]
    fn solution_examples() {
        let p = LatticePointProblem::new(tp("X + Y - 3"), int(2), int(5)).unwrap();
        assert_eq!(exponential_solutions(&p, 20), vec![(1, 0)]);
        let p = LatticePointProblem::new(tp("X - Y"), int(4), int(8)).unwrap();
        let want: Vec<(u32, u32)> = (0..=6).map(|n| (3 * n, 2 * n)).collect();
        assert_eq!(exponential_solutions(&p, 20), want);
        let p = LatticePointProblem::new(tp("X - 2"), int(3), int(5)).unwrap();
        assert!(exponential_solutions(&p, 20).is_empty());
        assert!(LatticePointProblem::new(tp("X*Y - X"), int(3), int(5)).is_err());
        assert!(LatticePointProblem::new(tp("X - Y"), int(-1), int(5)).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        let p = LatticePointProblem::new(tp("X - Y"), int(4), int(8)).unwrap();
        let r = classify_dichotomy(&p, 20);
        match &r.tag {
            Dichotomy::SubtorusTranslate {
                invariant_element,
                step,
                ..
            } => {
                assert_eq!(invariant_element, &(int(64), int(64)));
                assert_eq!(*step, (3, 2));
                assert!(progression_violations(&r.solutions, *step).is_empty());
            }
            other => panic!("{other:?}"),
        }
        let p = LatticePointProblem::new(tp("X + Y - 3"), int(2), int(5)).unwrap();
        assert_eq!(classify_dichotomy(&p, 50).tag, Dichotomy::Finite);
        let p = LatticePointProblem::new(tp("X - Y"), int(2), int(3)).unwrap();
        let r = classify_dichotomy(&p, 50);
        assert_eq!((r.tag, r.solutions), (Dichotomy::Finite, vec![(0, 0)]));
        // a sign forces the doubled step: (−4)^m = 8^n
        let p = LatticePointProblem::new(tp("X - Y"), int(-4), int(8)).unwrap();
        let r = classify_dichotomy(&p, 12);
        assert_eq!(r.solutions, vec![(0, 0), (6, 4), (12, 8)]);
        match &r.tag {
            Dichotomy::SubtorusTranslate { step, .. } => {
                assert_eq!(*step, (6, 4));
                assert!(progression_violations(&r.solutions, *step).is_empty());
            }
            other => panic!("{other:?}"),
        }
    }
}
