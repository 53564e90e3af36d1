//! Markoff-type cubic surfaces `x² + y² + z² + ε·xyz = ax + by + cz + d`,
//! their Vieta moves and signed-permutation symmetries.
//!
//! A surface remembers where it came from. The once-punctured torus surface
//! `x² + y² + z² − xyz − 2 = k` is stored in the `+xyz` normal form obtained
//! from `x ↦ −x`; [`MarkoffSurface::trace_form`] and
//! [`MarkoffSurface::to_trace`] move between the two charts.

mod descent;
mod scan;

pub use descent::{canonical_image, descend, orbit_equal, Descent};
pub(crate) use scan::line_scan;
pub use scan::{
    complete_point, enumerate_minimal, integral_points_in_box, is_minimal, MinimalPoint,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{int_from_json, json_int, parse_integer, MPoly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// The two free coordinates once this one is fixed, in increasing order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("unknown axis {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Raw,
    Torus { k: BigInt },
    Sphere { k: [BigInt; 4] },
}

/// Which coordinates the coefficients are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// The `+εxyz` normal form.
    Canonical,
    /// Trace coordinates; differs from canonical only for torus surfaces.
    Trace,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkoffSurface {
    eps: i8,
    lin: [BigInt; 3],
    d: BigInt,
    provenance: Provenance,
    chart: Chart,
}

impl MarkoffSurface {
    pub fn raw(eps: i8, a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::precondition(format!("eps must be ±1, got {eps}")));
        }
        Ok(MarkoffSurface {
            eps,
            lin: [a, b, c],
            d,
            provenance: Provenance::Raw,
            chart: Chart::Canonical,
        })
    }

    /// `x² + y² + z² − xyz − 2 = k`, normalized by `x ↦ −x` to `ε = +1, d = k + 2`.
    pub fn from_torus(k: &BigInt) -> Self {
        MarkoffSurface {
            eps: 1,
            lin: [BigInt::zero(), BigInt::zero(), BigInt::zero()],
            d: k + 2,
            provenance: Provenance::Torus { k: k.clone() },
            chart: Chart::Canonical,
        }
    }

    pub fn from_sphere(k: &[BigInt; 4]) -> Self {
        let [k1, k2, k3, k4] = k;
        let a = k1 * k2 + k3 * k4;
        let b = k2 * k3 + k1 * k4;
        let c = k1 * k3 + k2 * k4;
        let d = BigInt::from(4) - k1 * k1 - k2 * k2 - k3 * k3 - k4 * k4 - k1 * k2 * k3 * k4;
        MarkoffSurface {
            eps: 1,
            lin: [a, b, c],
            d,
            provenance: Provenance::Sphere { k: k.clone() },
            chart: Chart::Canonical,
        }
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// Linear coefficient of the given coordinate (`a`, `b` or `c`).
    pub fn lin(&self, axis: Axis) -> &BigInt {
        &self.lin[axis.index()]
    }

    pub fn a(&self) -> &BigInt {
        &self.lin[0]
    }

    pub fn b(&self) -> &BigInt {
        &self.lin[1]
    }

    pub fn c(&self) -> &BigInt {
        &self.lin[2]
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.provenance, Provenance::Torus { .. })
    }

    /// Coordinate signs taking canonical coordinates to trace coordinates.
    fn chart_signs(&self) -> [i8; 3] {
        if self.is_torus() {
            [-1, 1, 1]
        } else {
            [1, 1, 1]
        }
    }

    fn with_chart(&self, chart: Chart) -> Self {
        if chart == self.chart {
            return self.clone();
        }
        let signs = self.chart_signs();
        let flip = signs.iter().filter(|&&s| s < 0).count() % 2 == 1;
        let mut out = self.clone();
        out.chart = chart;
        if flip {
            out.eps = -out.eps;
        }
        for (c, s) in out.lin.iter_mut().zip(signs) {
            if s < 0 {
                *c = -c.clone();
            }
        }
        out
    }

    /// The same surface written in trace coordinates.
    pub fn trace_form(&self) -> Self {
        self.with_chart(Chart::Trace)
    }

    pub fn canonical_form(&self) -> Self {
        self.with_chart(Chart::Canonical)
    }

    /// Moves a point between the two charts (the change is an involution).
    pub fn switch_chart<R: Ring>(&self, p: &SurfacePoint<R>) -> SurfacePoint<R> {
        let signs = self.chart_signs();
        SurfacePoint(std::array::from_fn(|i| {
            if signs[i] < 0 {
                -p.0[i].clone()
            } else {
                p.0[i].clone()
            }
        }))
    }

    /// Rewrites a point given in this surface's chart in trace coordinates.
    pub fn to_trace_coords<R: Ring>(&self, p: &SurfacePoint<R>) -> SurfacePoint<R> {
        match self.chart {
            Chart::Canonical => self.switch_chart(p),
            Chart::Trace => p.clone(),
        }
    }

    /// Rewrites a point given in trace coordinates in this surface's chart.
    pub fn from_trace_coords<R: Ring>(&self, p: &SurfacePoint<R>) -> SurfacePoint<R> {
        self.to_trace_coords(p)
    }

    /// The defining polynomial `x² + y² + z² + ε·xyz − ax − by − cz − d`.
    pub fn polynomial(&self) -> MPoly {
        let v: [MPoly; 3] = std::array::from_fn(MPoly::var);
        self.eval(&SurfacePoint(v))
    }

    pub fn eval<R: Ring>(&self, p: &SurfacePoint<R>) -> R {
        let [x, y, z] = &p.0;
        let mut acc = x.square() + y.square() + z.square();
        let xyz = x.clone() * y.clone() * z.clone();
        acc = if self.eps > 0 { acc + xyz } else { acc - xyz };
        for i in 0..3 {
            if !self.lin[i].is_zero() {
                acc = acc - R::from_int(&self.lin[i]) * p.0[i].clone();
            }
        }
        acc - R::from_int(&self.d)
    }

    pub fn contains<R: Ring>(&self, p: &SurfacePoint<R>) -> bool {
        self.eval(p).is_zero()
    }

    fn check_on<R: Ring>(&self, p: &SurfacePoint<R>) -> Result<()> {
        let r = self.eval(p);
        if r.is_zero() {
            Ok(())
        } else {
            Err(Error::OffSurface(format!("residual {r:?}")))
        }
    }

    /// The other root of the equation viewed as a quadratic in `axis`.
    pub fn vieta_move<R: Ring>(&self, axis: Axis, p: &SurfacePoint<R>) -> Result<SurfacePoint<R>> {
        self.check_on(p)?;
        Ok(self.vieta_move_unchecked(axis, p))
    }

    /// [`vieta_move`](Self::vieta_move) without the membership check.
    pub fn vieta_move_unchecked<R: Ring>(
        &self,
        axis: Axis,
        p: &SurfacePoint<R>,
    ) -> SurfacePoint<R> {
        let i = axis.index();
        let (u, v) = axis.others();
        let prod = p.0[u.index()].clone() * p.0[v.index()].clone();
        let prod = if self.eps > 0 { -prod } else { prod };
        let mut out = p.clone();
        out.0[i] = R::from_int(&self.lin[i]) + prod - p.0[i].clone();
        out
    }

    /// Signed permutations with an even number of sign changes that preserve
    /// the defining polynomial, each confirmed by symbolic substitution.
    pub fn symmetries(&self) -> Vec<Sym> {
        let f = self.polynomial();
        let vars: SurfacePoint<MPoly> = SurfacePoint(std::array::from_fn(MPoly::var));
        Sym::all_even()
            .into_iter()
            .filter(|s| self.eval(&s.apply(&vars)) == f)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let prov = match &self.provenance {
            Provenance::Raw => json!({"type": "raw"}),
            Provenance::Torus { k } => json!({"type": "torus", "k": json_int(k)}),
            Provenance::Sphere { k } => {
                json!({"type": "sphere", "k": k.iter().map(json_int).collect::<Vec<_>>()})
            }
        };
        json!({
            "eps": self.eps,
            "a": json_int(&self.lin[0]),
            "b": json_int(&self.lin[1]),
            "c": json_int(&self.lin[2]),
            "d": json_int(&self.d),
            "provenance": prov,
            "chart": match self.chart { Chart::Canonical => "canonical", Chart::Trace => "trace" },
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("not a surface: {v}"));
        let field = |name: &str| v.get(name).ok_or_else(bad).and_then(int_from_json);
        let prov = v.get("provenance");
        let kind = prov.and_then(|p| p.get("type")).and_then(Value::as_str);
        let base = match kind {
            Some("torus") => {
                MarkoffSurface::from_torus(&int_from_json(prov.unwrap().get("k").ok_or_else(bad)?)?)
            }
            Some("sphere") => {
                let ks = prov
                    .unwrap()
                    .get("k")
                    .and_then(Value::as_array)
                    .ok_or_else(bad)?;
                if ks.len() != 4 {
                    return Err(bad());
                }
                let ks: Vec<BigInt> = ks.iter().map(int_from_json).collect::<Result<_>>()?;
                MarkoffSurface::from_sphere(&[
                    ks[0].clone(),
                    ks[1].clone(),
                    ks[2].clone(),
                    ks[3].clone(),
                ])
            }
            _ => {
                let eps = i8::try_from(field("eps")?).map_err(|_| bad())?;
                MarkoffSurface::raw(eps, field("a")?, field("b")?, field("c")?, field("d")?)?
            }
        };
        let chart = match v.get("chart").and_then(Value::as_str) {
            Some("trace") => Chart::Trace,
            _ => Chart::Canonical,
        };
        Ok(base.with_chart(chart))
    }
}

impl fmt::Display for MarkoffSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.polynomial())
    }
}

/// Parses `torus:k`, `sphere:k1,k2,k3,k4` or `raw:eps,a,b,c,d`.
impl FromStr for MarkoffSurface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("surface {s:?} needs the form kind:args")))?;
        let nums: Vec<BigInt> = rest.split(',').map(parse_integer).collect::<Result<_>>()?;
        let want = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{kind} surface takes {n} integers, got {}",
                    nums.len()
                )))
            }
        };
        match kind.trim() {
            "torus" => {
                want(1)?;
                Ok(MarkoffSurface::from_torus(&nums[0]))
            }
            "sphere" => {
                want(4)?;
                Ok(MarkoffSurface::from_sphere(&[
                    nums[0].clone(),
                    nums[1].clone(),
                    nums[2].clone(),
                    nums[3].clone(),
                ]))
            }
            "raw" => {
                want(5)?;
                let eps =
                    i8::try_from(&nums[0]).map_err(|_| Error::Parse("eps must be ±1".into()))?;
                MarkoffSurface::raw(
                    eps,
                    nums[1].clone(),
                    nums[2].clone(),
                    nums[3].clone(),
                    nums[4].clone(),
                )
            }
            other => Err(Error::Parse(format!("unknown surface kind {other:?}"))),
        }
    }
}

/// A point `(x, y, z)` with coordinates in a common ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfacePoint<R>(pub [R; 3]);

impl<R: Ring> SurfacePoint<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        SurfacePoint([x, y, z])
    }

    pub fn get(&self, axis: Axis) -> &R {
        &self.0[axis.index()]
    }

    pub fn with(&self, axis: Axis, v: R) -> Self {
        let mut out = self.clone();
        out.0[axis.index()] = v;
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SurfacePoint<S> {
        SurfacePoint(std::array::from_fn(|i| f(&self.0[i])))
    }
}

impl SurfacePoint<BigInt> {
    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        SurfacePoint([x.into(), y.into(), z.into()])
    }

    /// Max-norm `max(|x|, |y|, |z|)`.
    pub fn norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap()
    }

    pub fn abs_sum(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({"x": json_int(&self.0[0]), "y": json_int(&self.0[1]), "z": json_int(&self.0[2])})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("point is missing {k}: {v}")))
                .and_then(int_from_json)
        };
        Ok(SurfacePoint([get("x")?, get("y")?, get("z")?]))
    }
}

impl<R: fmt::Display> fmt::Display for SurfacePoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Parses `x,y,z` or `(x, y, z)` with integer entries.
impl FromStr for SurfacePoint<BigInt> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<BigInt> = inner.split(',').map(parse_integer).collect::<Result<_>>()?;
        if v.len() != 3 {
            return Err(Error::Parse(format!(
                "a point needs three coordinates: {s:?}"
            )));
        }
        Ok(SurfacePoint([v[0].clone(), v[1].clone(), v[2].clone()]))
    }
}

/// A signed coordinate permutation: `out[i] = signs[i] · p[perm[i]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub perm: [usize; 3],
    pub signs: [i8; 3],
}

impl Sym {
    pub const IDENTITY: Sym = Sym {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    /// All 24 signed permutations with an even number of sign changes.
    pub fn all_even() -> Vec<Sym> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        const SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]];
        PERMS
            .iter()
            .flat_map(|&perm| SIGNS.iter().map(move |&signs| Sym { perm, signs }))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Sym::IDENTITY
    }

    pub fn apply<R: Ring>(&self, p: &SurfacePoint<R>) -> SurfacePoint<R> {
        SurfacePoint(std::array::from_fn(|i| {
            let c = p.0[self.perm[i]].clone();
            if self.signs[i] < 0 {
                -c
            } else {
                c
            }
        }))
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Sym) -> Sym {
        Sym {
            perm: std::array::from_fn(|i| self.perm[next.perm[i]]),
            signs: std::array::from_fn(|i| next.signs[i] * self.signs[next.perm[i]]),
        }
    }

    pub fn inverse(&self) -> Sym {
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for j in 0..3 {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        Sym { perm, signs }
    }

    pub fn to_json(&self) -> Value {
        json!({"perm": self.perm, "signs": self.signs})
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..3)
            .map(|i| {
                let s = if self.signs[i] < 0 { "-" } else { "" };
                format!("{s}{}", Axis::from_index(self.perm[i]))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Move(Axis),
    Sym(Sym),
}

/// A word in Vieta moves and symmetries, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveWord(pub Vec<Step>);

impl MoveWord {
    pub fn moves(axes: &[Axis]) -> Self {
        MoveWord(axes.iter().map(|&a| Step::Move(a)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of Vieta moves; symmetries are free.
    pub fn move_count(&self) -> usize {
        self.0.iter().filter(|s| matches!(s, Step::Move(_))).count()
    }

    pub fn push(&mut self, step: Step) {
        if let Step::Sym(s) = step {
            if s.is_identity() {
                return;
            }
        }
        self.0.push(step);
    }

    pub fn apply<R: Ring>(
        &self,
        s: &MarkoffSurface,
        p: &SurfacePoint<R>,
    ) -> Result<SurfacePoint<R>> {
        let mut cur = p.clone();
        for step in &self.0 {
            cur = match step {
                Step::Move(a) => s.vieta_move(*a, &cur)?,
                Step::Sym(g) => g.apply(&cur),
            };
        }
        Ok(cur)
    }

    /// The word that undoes this one.
    pub fn inverse(&self) -> MoveWord {
        MoveWord(
            self.0
                .iter()
                .rev()
                .map(|s| match s {
                    Step::Move(a) => Step::Move(*a),
                    Step::Sym(g) => Step::Sym(g.inverse()),
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|s| match s {
                    Step::Move(a) => json!({"move": a.name()}),
                    Step::Sym(g) => json!({"sym": g.to_json()}),
                })
                .collect(),
        )
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Step::Move(a) => format!("m_{a}"),
                Step::Sym(g) => format!("σ{g}"),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> SurfacePoint<BigInt> {
        SurfacePoint::from_i64(x, y, z)
    }

    fn raw(e: i8, a: i64, b: i64, c: i64, d: i64) -> MarkoffSurface {
        MarkoffSurface::raw(e, a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    #[test]
    fn torus_normal_form() {
        for (k, d) in [(-2, 0), (2, 4), (0, 2)] {
            let s = MarkoffSurface::from_torus(&k.into());
            assert_eq!(
                (s.eps(), s.a(), s.d()),
                (1, &BigInt::zero(), &BigInt::from(d))
            );
            // the trace chart is the -xyz presentation
            let t = s.trace_form();
            assert_eq!(t.eps(), -1);
            let p = pt(-3, 3, 3);
            assert_eq!(s.eval(&p), t.eval(&s.switch_chart(&p)));
        }
    }

    #[test]
    fn sphere_coefficients() {
        let s = MarkoffSurface::from_sphere(&[2.into(), 2.into(), 2.into(), 2.into()]);
        assert_eq!(s.to_json()["a"], 8);
        assert_eq!(s.to_json()["d"], -28);
        let s = MarkoffSurface::from_sphere(&[1.into(), 0.into(), 0.into(), 0.into()]);
        assert_eq!(s.d(), &BigInt::from(3));
        assert_eq!(s.lin(Axis::Y), &BigInt::zero());
    }

    #[test]
    fn eval_and_moves() {
        let s = raw(1, 0, 0, 0, 0);
        assert!(s.contains(&pt(-3, 3, 3)));
        assert!(s.contains(&pt(0, 0, 0)));
        assert_eq!(raw(1, 0, 0, 0, 4).eval(&pt(0, 0, 0)), BigInt::from(-4));
        assert_eq!(s.vieta_move(Axis::X, &pt(-3, 3, 3)).unwrap(), pt(-6, 3, 3));
        assert_eq!(s.vieta_move(Axis::X, &pt(0, 0, 0)).unwrap(), pt(0, 0, 0));
        assert!(s.vieta_move(Axis::X, &pt(1, 1, 1)).is_err());
    }

    #[test]
    fn symmetry_counts() {
        assert_eq!(raw(1, 0, 0, 0, 0).symmetries().len(), 24);
        assert_eq!(raw(1, 1, 2, 3, 0).symmetries(), vec![Sym::IDENTITY]);
        let syms = raw(1, 5, 5, 3, 0).symmetries();
        assert_eq!(syms.len(), 2);
        assert!(syms.contains(&Sym {
            perm: [1, 0, 2],
            signs: [1, 1, 1]
        }));
    }

    #[test]
    fn sym_algebra() {
        let p = pt(2, -5, 7);
        for g in Sym::all_even() {
            assert_eq!(g.inverse().apply(&g.apply(&p)), p);
            for h in Sym::all_even() {
                assert_eq!(g.then(&h).apply(&p), h.apply(&g.apply(&p)));
            }
        }
    }

    #[test]
    fn parse_and_json_roundtrip() {
        for name in ["torus:-2", "sphere:1,2,3,4", "raw:-1,1,2,3,4"] {
            let s: MarkoffSurface = name.parse().unwrap();
            assert_eq!(MarkoffSurface::from_json(&s.to_json()).unwrap(), s);
            let t = s.trace_form();
            assert_eq!(MarkoffSurface::from_json(&t.to_json()).unwrap(), t);
        }
        assert!("raw:2,0,0,0,0".parse::<MarkoffSurface>().is_err());
        assert!("cube:1".parse::<MarkoffSurface>().is_err());
        let p: SurfacePoint<BigInt> = "(-3, 3, 3)".parse().unwrap();
        assert_eq!(SurfacePoint::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn polynomial_coordinates() {
        use crate::exactnum::Poly;
        use num_rational::BigRational;
        // (2, T, T) lies on the torus k = 2 in trace coordinates
        let s = MarkoffSurface::from_torus(&2.into()).trace_form();
        let t = Poly::<BigRational>::var();
        let two = Poly::constant(BigRational::from_integer(2.into()));
        let p = SurfacePoint::new(two, t.clone(), t);
        assert!(s.contains(&p));
        let q = s.vieta_move(Axis::Y, &p).unwrap();
        assert!(s.contains(&q));
        assert_eq!(s.vieta_move(Axis::Y, &q).unwrap(), p);
    }
}
