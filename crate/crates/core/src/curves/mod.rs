//! Curves on a surface: integrable versus nonintegrable, bounded traces at
//! the places at infinity, and integral points.
//!
//! A curve is integrable when some trace function is constant along it. On
//! torus surfaces the candidate traces are the slope traces; on sphere
//! surfaces they are the three coordinates.

mod solve;

pub use solve::{
    corollary5_solve, curve_points_in_box, solve_curve_integral, solve_curve_od, OrbitGenerator,
    SolutionSet,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{json_rat, rational_roots, MPoly, Place, Poly, RatFunc, Ring, Valued};
use crate::fibers::ParabolicFamily;
use crate::slopes::{Slope, SlopeTraces};
use crate::surface::{Axis, MarkoffSurface, Provenance, SurfacePoint};

#[derive(Clone, Debug, PartialEq)]
pub enum CurveShape {
    /// Rational functions of one parameter `T`, in the surface's chart.
    Parametrized(SurfacePoint<RatFunc>),
    /// Common zeros on the surface of integer polynomials in the surface's chart.
    Implicit(Vec<MPoly>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveOnSurface {
    pub surface: MarkoffSurface,
    pub shape: CurveShape,
}

/// A candidate trace function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFunction {
    Slope(Slope),
    Coordinate(Axis),
}

impl TraceFunction {
    /// The coordinate this trace reads off directly, if any.
    pub fn axis(self) -> Option<Axis> {
        match self {
            TraceFunction::Coordinate(a) => Some(a),
            TraceFunction::Slope(s) if s == Slope::INFINITY => Some(Axis::X),
            TraceFunction::Slope(s) if (s.p(), s.q()) == (0, 1) => Some(Axis::Y),
            TraceFunction::Slope(s) if (s.p(), s.q()) == (1, 1) => Some(Axis::Z),
            TraceFunction::Slope(_) => None,
        }
    }

    fn eval<R: Ring>(self, traces: &mut SlopeTraces<R>, p: &SurfacePoint<R>) -> R {
        match self {
            TraceFunction::Slope(s) => traces.trace(s),
            TraceFunction::Coordinate(a) => p.get(a).clone(),
        }
    }

    fn degree(self) -> u32 {
        match self {
            TraceFunction::Slope(s) => crate::slopes::trace_polynomial(s)
                .total_degree()
                .unwrap_or(0),
            TraceFunction::Coordinate(_) => 1,
        }
    }
}

impl fmt::Display for TraceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceFunction::Slope(s) => write!(f, "{s}"),
            TraceFunction::Coordinate(a) => write!(f, "{a}"),
        }
    }
}

impl From<TraceFunction> for Value {
    fn from(t: TraceFunction) -> Value {
        match t {
            TraceFunction::Slope(s) => json!({"slope": s.to_string()}),
            TraceFunction::Coordinate(a) => json!({"coordinate": a.name()}),
        }
    }
}

/// Two curve points (trace coordinates) where a trace takes different values.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub trace: TraceFunction,
    pub points: [SurfacePoint<BigRational>; 2],
    pub values: [BigRational; 2],
}

impl Witness {
    fn to_json(&self) -> Value {
        let pt = |p: &SurfacePoint<BigRational>| p.0.iter().map(json_rat).collect::<Vec<_>>();
        json!({
            "trace": Value::from(self.trace),
            "points": [pt(&self.points[0]), pt(&self.points[1])],
            "values": [json_rat(&self.values[0]), json_rat(&self.values[1])],
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveClass {
    /// `trace ≡ t` along the curve (in trace coordinates).
    Integrable {
        trace: TraceFunction,
        t: BigRational,
    },
    /// Every candidate trace up to the bound is nonconstant; witnesses are
    /// kept for the coordinate traces.
    Nonintegrable {
        checked: usize,
        witnesses: Vec<Witness>,
    },
}

impl CurveClass {
    pub fn to_json(&self) -> Value {
        match self {
            CurveClass::Integrable { trace, t } => {
                json!({"class": "integrable", "trace": Value::from(*trace), "t": json_rat(t)})
            }
            CurveClass::Nonintegrable { checked, witnesses } => json!({
                "class": "nonintegrable",
                "traces_checked": checked,
                "witnesses": witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

/// A bounded trace near one place at infinity of a parametrized curve.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityWitness {
    pub place: Place,
    pub trace: TraceFunction,
    pub valuation: Option<i64>,
    /// Limit of the trace at the place.
    pub value: BigRational,
    /// The trace along the curve, in the parameter.
    pub function: RatFunc,
}

impl InfinityWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "place": self.place.to_string(),
            "trace": Value::from(self.trace),
            "valuation": self.valuation,
            "value": json_rat(&self.value),
            "function": self.function.to_text(),
        })
    }
}

fn is_multiple_of_surface(s: &MarkoffSurface, g: &MPoly) -> bool {
    let (r1, r0) = reduce_mod_surface(s, g);
    r1.is_zero() && r0.is_zero()
}

/// Coefficients of `p` as a polynomial in `z`.
fn z_coefficients(p: &MPoly) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(); p.degree_in(2) as usize + 1];
    for (e, c) in p.terms() {
        let k = e[2] as usize;
        out[k] = out[k].clone() + MPoly::from_terms([([e[0], e[1], 0], c.clone())]);
    }
    out
}

/// `g mod F = r₁·z + r₀`, where `F = z² + a₁z + a₀` is the surface polynomial.
pub(crate) fn reduce_mod_surface(s: &MarkoffSurface, g: &MPoly) -> (MPoly, MPoly) {
    let f = z_coefficients(&s.polynomial());
    let (a1, a0) = (f[1].clone(), f[0].clone());
    let mut c = z_coefficients(g);
    for k in (2..c.len()).rev() {
        let top = std::mem::take(&mut c[k]);
        c[k - 1] = c[k - 1].clone() - top.clone() * a1.clone();
        c[k - 2] = c[k - 2].clone() - top * a0.clone();
    }
    c.resize(2, MPoly::zero());
    (c[1].clone(), c[0].clone())
}

impl CurveOnSurface {
    /// Checks that the parametrization lies on the surface identically.
    pub fn parametrized(s: &MarkoffSurface, p: SurfacePoint<RatFunc>) -> Result<Self> {
        let r = s.eval(&p);
        if !r.is_zero() {
            return Err(Error::OffSurface(format!("residual {}", r.to_text())));
        }
        if p.0.iter().all(|c| c.constant_value().is_some()) {
            return Err(Error::precondition("constant parametrization"));
        }
        Ok(CurveOnSurface {
            surface: s.clone(),
            shape: CurveShape::Parametrized(p),
        })
    }

    pub fn implicit(s: &MarkoffSurface, gs: Vec<MPoly>) -> Result<Self> {
        if gs.is_empty() {
            return Err(Error::precondition(
                "an implicit curve needs at least one equation",
            ));
        }
        for g in &gs {
            if g.is_constant() {
                return Err(Error::precondition("constant equation"));
            }
            if is_multiple_of_surface(s, g) {
                return Err(Error::precondition(format!(
                    "{g} vanishes on the whole surface"
                )));
            }
        }
        Ok(CurveOnSurface {
            surface: s.clone(),
            shape: CurveShape::Implicit(gs),
        })
    }

    /// A polynomial fiber family, when its coefficients are rational.
    pub fn from_family(s: &MarkoffSurface, fam: &ParabolicFamily) -> Result<Self> {
        let p = fam
            .rational()
            .ok_or_else(|| Error::Unsupported("family has irrational coefficients".into()))?;
        let p = s.from_trace_coords(&p.map(|c| RatFunc::from_poly(c.clone())));
        CurveOnSurface::parametrized(s, p)
    }

    /// Parametrization in trace coordinates.
    fn trace_param(&self) -> Option<SurfacePoint<RatFunc>> {
        match &self.shape {
            CurveShape::Parametrized(p) => Some(self.surface.to_trace_coords(p)),
            CurveShape::Implicit(_) => None,
        }
    }

    /// Exact membership of an integral point given in the surface's chart.
    pub fn contains(&self, p: &SurfacePoint<BigInt>) -> bool {
        if !self.surface.contains(p) {
            return false;
        }
        match &self.shape {
            CurveShape::Implicit(gs) => gs.iter().all(|g| g.eval(&p.0).is_zero()),
            CurveShape::Parametrized(c) => {
                !parameters_of(c, &p.map(|v| BigRational::from_integer(v.clone()))).is_empty()
            }
        }
    }

    /// The single linear equation `coordinate = t` (in trace coordinates)
    /// cutting out this curve, if that is its shape.
    pub(crate) fn as_fiber(&self) -> Option<(Axis, BigRational)> {
        let CurveShape::Implicit(gs) = &self.shape else {
            return None;
        };
        let [g] = gs.as_slice() else { return None };
        if g.total_degree() != Some(1) {
            return None;
        }
        let mut axis = None;
        let mut lead = BigInt::zero();
        for (e, c) in g.terms() {
            if *e == [0, 0, 0] {
                continue;
            }
            let i = e.iter().position(|&k| k == 1).unwrap();
            if axis.is_some() {
                return None;
            }
            axis = Some(Axis::from_index(i));
            lead = c.clone();
        }
        let axis = axis?;
        let t = BigRational::new(-g.constant_term(), lead);
        let pt = SurfacePoint([
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
        .with(axis, t);
        Some((axis, self.surface.to_trace_coords(&pt).get(axis).clone()))
    }

    fn candidates(&self, slope_bound: i64) -> Result<Vec<TraceFunction>> {
        match self.surface.provenance() {
            Provenance::Raw => Err(Error::NoModuliInterpretation),
            Provenance::Sphere { .. } => Ok(Axis::ALL
                .into_iter()
                .map(TraceFunction::Coordinate)
                .collect()),
            Provenance::Torus { .. } => {
                if slope_bound < 1 {
                    return Err(Error::precondition("slope bound must be positive"));
                }
                Ok(Slope::up_to(slope_bound)
                    .into_iter()
                    .map(TraceFunction::Slope)
                    .collect())
            }
        }
    }
}

/// Parameter values (rational, finite) mapping to `p`.
fn parameters_of(c: &SurfacePoint<RatFunc>, p: &SurfacePoint<BigRational>) -> Vec<BigRational> {
    let Some(i) = (0..3).find(|&i| c.0[i].constant_value().is_none()) else {
        return vec![];
    };
    let f = &c.0[i];
    let eq = f.num().clone() - f.den().scale(&p.0[i]);
    rational_roots(&eq)
        .unwrap_or_default()
        .into_iter()
        .filter(|t| (0..3).all(|j| c.0[j].eval(t).as_ref() == Some(&p.0[j])))
        .collect()
}

/// Sample parameter values avoiding poles.
fn sample_params(
    c: &SurfacePoint<RatFunc>,
    n: usize,
) -> Vec<(BigRational, SurfacePoint<BigRational>)> {
    let mut out = Vec::new();
    let mut k: i64 = 0;
    while out.len() < n {
        let t =
            BigRational::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }));
        k += 1;
        let vals: Option<Vec<BigRational>> = c.0.iter().map(|f| f.eval(&t)).collect();
        if let Some(v) = vals {
            out.push((t, SurfacePoint([v[0].clone(), v[1].clone(), v[2].clone()])));
        }
    }
    out
}

const SAMPLE_BOX: i64 = 40;

/// Integrable or nonintegrable, by composing candidate traces with the
/// parametrization, or by sampling integral points of an implicit curve.
pub fn classify_curve(c: &CurveOnSurface, slope_bound: i64) -> Result<CurveClass> {
    let cands = c.candidates(slope_bound)?;
    if let Some((axis, t)) = c.as_fiber() {
        let trace = if c.surface.is_torus() {
            TraceFunction::Slope(
                [Slope::INFINITY, Slope::new(0, 1)?, Slope::new(1, 1)?][axis.index()],
            )
        } else {
            TraceFunction::Coordinate(axis)
        };
        return Ok(CurveClass::Integrable { trace, t });
    }
    match c.trace_param() {
        Some(param) => classify_parametrized(&param, &cands),
        None => classify_implicit(c, &cands),
    }
}

fn classify_parametrized(
    param: &SurfacePoint<RatFunc>,
    cands: &[TraceFunction],
) -> Result<CurveClass> {
    let [x, y, z] = param.0.clone();
    let mut traces = SlopeTraces::new(x, y, z);
    // values at a few parameters rule out most candidates without composing
    let samples = sample_params(param, 3);
    let mut numeric: Vec<SlopeTraces<BigRational>> = samples
        .iter()
        .map(|(_, p)| SlopeTraces::new(p.0[0].clone(), p.0[1].clone(), p.0[2].clone()))
        .collect();
    let mut witnesses = Vec::new();
    for &tf in cands {
        let vals: Vec<BigRational> = numeric
            .iter_mut()
            .zip(&samples)
            .map(|(tr, (_, p))| tf.eval(tr, p))
            .collect();
        if let Some(j) = (1..vals.len()).find(|&j| vals[j] != vals[0]) {
            if tf.axis().is_some() {
                witnesses.push(Witness {
                    trace: tf,
                    points: [samples[0].1.clone(), samples[j].1.clone()],
                    values: [vals[0].clone(), vals[j].clone()],
                });
            }
            continue;
        }
        let f = tf.eval(&mut traces, param);
        if let Some(t) = f.constant_value() {
            return Ok(CurveClass::Integrable { trace: tf, t });
        }
        if tf.axis().is_some() {
            // two parameter values where the trace differs
            let deg = f
                .num()
                .degree()
                .unwrap_or(0)
                .max(f.den().degree().unwrap_or(0));
            let samples = sample_params(param, deg + 2);
            let vals: Vec<BigRational> = samples.iter().map(|(t, _)| f.eval(t).unwrap()).collect();
            let j = (1..vals.len()).find(|&j| vals[j] != vals[0]).unwrap();
            witnesses.push(Witness {
                trace: tf,
                points: [samples[0].1.clone(), samples[j].1.clone()],
                values: [vals[0].clone(), vals[j].clone()],
            });
        }
    }
    Ok(CurveClass::Nonintegrable {
        checked: cands.len(),
        witnesses,
    })
}

fn classify_implicit(c: &CurveOnSurface, cands: &[TraceFunction]) -> Result<CurveClass> {
    let CurveShape::Implicit(gs) = &c.shape else {
        unreachable!()
    };
    let samples: Vec<SurfacePoint<BigInt>> = curve_points_in_box(&c.surface, gs, SAMPLE_BOX)?
        .iter()
        .map(|p| c.surface.to_trace_coords(p))
        .collect();
    let curve_degree = 3 * gs.iter().filter_map(MPoly::total_degree).min().unwrap_or(1);
    let mut per_point: Vec<SlopeTraces<BigInt>> = samples
        .iter()
        .map(|p| SlopeTraces::new(p.0[0].clone(), p.0[1].clone(), p.0[2].clone()))
        .collect();
    let mut witnesses = Vec::new();
    let mut undetermined = None;
    for &tf in cands {
        let vals: Vec<BigInt> = per_point
            .iter_mut()
            .zip(&samples)
            .map(|(tr, p)| tf.eval(tr, p))
            .collect();
        match (1..vals.len()).find(|&j| vals[j] != vals[0]) {
            Some(j) => {
                if tf.axis().is_some() {
                    let q =
                        |p: &SurfacePoint<BigInt>| p.map(|v| BigRational::from_integer(v.clone()));
                    witnesses.push(Witness {
                        trace: tf,
                        points: [q(&samples[0]), q(&samples[j])],
                        values: [vals[0].clone().into(), vals[j].clone().into()],
                    });
                }
            }
            None => {
                // constant on more points than a transverse intersection allows
                if samples.len() as u32 > curve_degree * tf.degree() {
                    return Ok(CurveClass::Integrable {
                        trace: tf,
                        t: vals[0].clone().into(),
                    });
                }
                undetermined.get_or_insert(tf);
            }
        }
    }
    if let Some(tf) = undetermined {
        return Err(Error::Undetermined(format!(
            "{} integral sample points with |coords| <= {SAMPLE_BOX} cannot decide trace {tf}",
            samples.len()
        )));
    }
    Ok(CurveClass::Nonintegrable {
        checked: cands.len(),
        witnesses,
    })
}

/// Places at infinity of a parametrized curve: the poles of the
/// coordinates, and `T = ∞` when some coordinate is unbounded there.
pub fn places_at_infinity(c: &SurfacePoint<RatFunc>) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for f in &c.0 {
        if f.den().degree().unwrap_or(0) == 0 {
            continue;
        }
        let roots = rational_roots(f.den()).unwrap_or_default();
        let found: usize = roots.iter().map(|r| f.den().order_at(r)).sum();
        if found != f.den().degree().unwrap() {
            return Err(Error::Unsupported(format!(
                "denominator {} has irrational roots",
                f.den().to_text()
            )));
        }
        for r in roots {
            let p = Place::Point(r);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| match (a, b) {
        (Place::Point(x), Place::Point(y)) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    if c.0.iter().any(|f| {
        f.valuation(&Place::Infinity)
            .ok()
            .flatten()
            .is_some_and(|v| v < 0)
    }) {
        out.push(Place::Infinity);
    }
    Ok(out)
}

/// Value of `f` at a place where its valuation is nonnegative.
fn limit_at(f: &RatFunc, place: &Place, v: Option<i64>) -> BigRational {
    match (v, place) {
        (None, _) => BigRational::zero(),
        (Some(v), _) if v > 0 => BigRational::zero(),
        (_, Place::Infinity) => {
            f.num().leading().unwrap().clone() / f.den().leading().unwrap().clone()
        }
        (_, Place::Point(a)) => f
            .eval(a)
            .expect("no pole where the valuation is nonnegative"),
        (_, Place::Padic(_)) => unreachable!(),
    }
}

/// For each place at infinity, the first candidate trace that stays bounded
/// there, with its limiting value.
pub fn infinity_witnesses(c: &CurveOnSurface, slope_bound: i64) -> Result<Vec<InfinityWitness>> {
    let param = c
        .trace_param()
        .ok_or_else(|| Error::precondition("infinity witnesses need a parametrized curve"))?;
    let cands = c.candidates(slope_bound)?;
    let [x, y, z] = param.0.clone();
    let mut traces = SlopeTraces::new(x, y, z);
    let mut out = Vec::new();
    for place in places_at_infinity(&param)? {
        let mut hit = None;
        for &tf in &cands {
            let f = tf.eval(&mut traces, &param);
            let v = f.valuation(&place)?;
            if v.is_none_or(|v| v >= 0) {
                hit = Some(InfinityWitness {
                    value: limit_at(&f, &place, v),
                    place: place.clone(),
                    trace: tf,
                    valuation: v,
                    function: f,
                });
                break;
            }
        }
        let w = hit.ok_or_else(|| {
            Error::bound(
                "witness",
                format!("no bounded trace at {place} within slope bound {slope_bound}"),
            )
        })?;
        debug_assert!(w.valuation.is_none_or(|v| v >= 0));
        out.push(w);
    }
    Ok(out)
}

/// Integer values a witness trace can take near its place, per the
/// valuation data: `|α − value| ≤ 2·max(1, |value|, |leading data|)`.
pub(crate) fn candidate_range(w: &InfinityWitness) -> (BigInt, BigInt) {
    let lead = |p: &Poly<BigRational>| {
        p.leading()
            .map(|c| c.abs())
            .unwrap_or_else(BigRational::zero)
    };
    let mut r = w.value.abs().max(BigRational::one());
    r = r.max(lead(w.function.num()) / lead(w.function.den()).max(BigRational::one()));
    let r = (r * BigInt::from(2)).ceil().to_integer();
    (
        (&w.value - BigRational::from_integer(r.clone()))
            .floor()
            .to_integer(),
        (&w.value + BigRational::from_integer(r))
            .ceil()
            .to_integer(),
    )
}

impl fmt::Display for CurveOnSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            CurveShape::Parametrized(p) => write!(
                f,
                "({}, {}, {}) on {}",
                p.0[0].to_text(),
                p.0[1].to_text(),
                p.0[2].to_text(),
                self.surface
            ),
            CurveShape::Implicit(gs) => {
                let eqs: Vec<String> = gs.iter().map(|g| format!("{g} = 0")).collect();
                write!(f, "{} on {}", eqs.join(", "), self.surface)
            }
        }
    }
}

impl CurveOnSurface {
    pub fn to_json(&self) -> Value {
        let shape = match &self.shape {
            CurveShape::Parametrized(p) => {
                json!({"parametrized": p.0.iter().map(RatFunc::to_text).collect::<Vec<_>>()})
            }
            CurveShape::Implicit(gs) => {
                json!({"implicit": gs.iter().map(|g| g.to_string()).collect::<Vec<_>>()})
            }
        };
        json!({"surface": self.surface.to_json(), "shape": shape})
    }
}

#[cfg(test)]
mod tests;
