//! Integral points on curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{
    candidate_range, classify_curve, infinity_witnesses, reduce_mod_surface, CurveClass,
    CurveOnSurface, CurveShape,
};
use crate::error::{Error, Result};
use crate::exactnum::{integer_roots, is_integral, json_int, MPoly, Poly, QuadInt, RatFunc};
use crate::fibers::{
    fiber_generator_apply, fiber_integral_points, fiber_symmetries, parametrize_parabolic_fiber,
    points_over_od, FiberClass, Generator,
};
use crate::surface::{
    complete_point, enumerate_minimal, Axis, MarkoffSurface, MinimalPoint, Provenance,
    SurfacePoint, Sym,
};

/// An infinite generator orbit on a fiber: every point is `σ(gⁿ(rep))`
/// for a fiber symmetry `σ` and an integer `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitGenerator {
    /// In the surface's chart.
    pub rep: SurfacePoint<BigInt>,
    pub axis: Axis,
    /// Fiber value in trace coordinates.
    pub t: BigInt,
    pub generator: Generator,
    /// Fiber symmetries, acting on trace coordinates.
    pub symmetries: Vec<Sym>,
    /// Orbit points inside the search box, in the surface's chart.
    pub members: Vec<SurfacePoint<BigInt>>,
}

impl OrbitGenerator {
    /// `gⁿ(rep)`, in the surface's chart.
    pub fn point(&self, s: &MarkoffSurface, n: i64) -> SurfacePoint<BigInt> {
        let p = fiber_generator_apply(s, self.axis, &s.to_trace_coords(&self.rep), n)
            .expect("rep lies on the surface");
        s.from_trace_coords(&p)
    }

    pub fn to_json(&self, s: &MarkoffSurface) -> Value {
        json!({
            "rep": self.rep.to_json(),
            "rep_trace": s.to_trace_coords(&self.rep).to_json(),
            "axis": self.axis.name(),
            "t": json_int(&self.t),
            "generator": self.generator.name(),
            "symmetries": self.symmetries.iter().map(Sym::to_json).collect::<Vec<_>>(),
            "members_in_box": self.members.iter().map(SurfacePoint::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub surface: MarkoffSurface,
    pub classification: Option<CurveClass>,
    /// Points not covered by an orbit generator or a family, in the surface's chart.
    pub finite_points: Vec<SurfacePoint<BigInt>>,
    pub orbit_generators: Vec<OrbitGenerator>,
    /// Polynomial families giving integral points at every integer parameter.
    pub families: Vec<SurfacePoint<Poly<BigRational>>>,
    pub od_points: Vec<SurfacePoint<QuadInt>>,
    pub minimal_points: Vec<MinimalPoint>,
    /// Candidate trace values scanned at the places at infinity.
    pub candidate_ranges: Vec<Value>,
    pub certified: bool,
    pub search_bound: i64,
    pub method: &'static str,
}

impl SolutionSet {
    fn empty(s: &MarkoffSurface, h: i64, method: &'static str) -> Self {
        SolutionSet {
            surface: s.clone(),
            classification: None,
            finite_points: vec![],
            orbit_generators: vec![],
            families: vec![],
            od_points: vec![],
            minimal_points: vec![],
            candidate_ranges: vec![],
            certified: false,
            search_bound: h,
            method,
        }
    }

    /// Every point listed explicitly, including orbit members in the box.
    pub fn box_points(&self) -> Vec<SurfacePoint<BigInt>> {
        let mut out = self.finite_points.clone();
        for o in &self.orbit_generators {
            out.extend(o.members.iter().cloned());
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> Value {
        let fam = |p: &SurfacePoint<Poly<BigRational>>| {
            p.0.iter().map(|c| c.to_text()).collect::<Vec<_>>()
        };
        let od = |p: &SurfacePoint<QuadInt>| p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "method": self.method,
            "certified": self.certified,
            "H": self.search_bound,
            "classification": self.classification.as_ref().map(CurveClass::to_json),
            "finite_points": self.finite_points.iter().map(SurfacePoint::to_json).collect::<Vec<_>>(),
            "orbit_generators": self.orbit_generators.iter().map(|o| o.to_json(&self.surface)).collect::<Vec<_>>(),
            "families": self.families.iter().map(fam).collect::<Vec<_>>(),
            "od_points": self.od_points.iter().map(od).collect::<Vec<_>>(),
            "minimal_points": self.minimal_points.iter().map(MinimalPoint::to_json).collect::<Vec<_>>(),
            "candidate_ranges": self.candidate_ranges,
        })
    }
}

/// Integral points with `|coords| ≤ h` on the surface and on every `g = 0`,
/// sorted. For each `x` the resultant of the surface polynomial and the
/// first equation with respect to `z` gives the admissible `y`.
pub fn curve_points_in_box(
    s: &MarkoffSurface,
    gs: &[MPoly],
    h: i64,
) -> Result<Vec<SurfacePoint<BigInt>>> {
    let Some(g) = gs.first() else {
        return Err(Error::precondition("no equations"));
    };
    if h < 0 {
        return Err(Error::precondition("height bound must be nonnegative"));
    }
    let f = s.polynomial();
    let coef = |k: u32| {
        MPoly::from_terms(
            f.terms()
                .filter(|(e, _)| e[2] == k)
                .map(|(e, c)| ([e[0], e[1], 0], c.clone())),
        )
    };
    let (a1, a0) = (coef(1), coef(0));
    let (r1, r0) = reduce_mod_surface(s, g);
    let res = r0.clone() * r0.clone() - a1 * r0 * r1.clone() + a0 * r1.clone() * r1;
    let hb = BigInt::from(h);
    let mut pts: Vec<SurfacePoint<BigInt>> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|x| {
            let xv = Poly::constant(BigRational::from_integer(x.into()));
            let ry = res.eval(&[xv, Poly::var(), Poly::zero()]);
            let ys: Vec<BigInt> = match integer_roots(&ry, &-hb.clone(), &hb) {
                Some(ys) => ys,
                None => (-h..=h).map(BigInt::from).collect(),
            };
            let mut out = Vec::new();
            for y in ys {
                let p = SurfacePoint([BigInt::from(x), y, BigInt::zero()]);
                for z in complete_point(s, Axis::Z, &p) {
                    let q = p.with(Axis::Z, z);
                    if q.0[2].abs() <= hb && gs.iter().all(|g| g.eval(&q.0).is_zero()) {
                        out.push(q);
                    }
                }
            }
            out
        })
        .collect();
    pts.sort();
    pts.dedup();
    Ok(pts)
}

fn box_solve(c: &CurveOnSurface, h: i64) -> Result<SolutionSet> {
    let CurveShape::Implicit(gs) = &c.shape else {
        return Err(Error::Unsupported(
            "box search needs an implicit curve".into(),
        ));
    };
    let mut out = SolutionSet::empty(&c.surface, h, "box search");
    out.finite_points = curve_points_in_box(&c.surface, gs, h)?;
    Ok(out)
}

/// Residue classes `T ≡ r (mod D)` on which a polynomial family is
/// integer valued, each rewritten as `S ↦ family(r + D·S)`.
fn integral_families(
    p: &SurfacePoint<Poly<BigRational>>,
) -> Result<Vec<SurfacePoint<Poly<BigRational>>>> {
    let mut den = BigInt::one();
    for c in &p.0 {
        for a in c.coeffs() {
            den = den.lcm(a.denom());
        }
    }
    let dn = den
        .to_i64()
        .filter(|&d| d <= 10_000)
        .ok_or_else(|| Error::Unsupported(format!("coefficient denominator {den} too large")))?;
    let deg = p.0.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let mut out = Vec::new();
    for r in 0..dn {
        let sub = Poly::new(vec![
            BigRational::from_integer(r.into()),
            BigRational::from_integer(den.clone()),
        ]);
        let q = p.map(|c| c.compose(&sub));
        // integer valued iff integral at deg + 1 consecutive integers
        let ok = (0..=deg as i64).all(|s| {
            q.0.iter()
                .all(|c| is_integral(&c.eval(&BigRational::from_integer(s.into()))))
        });
        if ok {
            out.push(q);
        }
    }
    Ok(out)
}

fn fiber_solve(c: &CurveOnSurface, axis: Axis, t: &BigRational, h: i64) -> Result<SolutionSet> {
    let s = &c.surface;
    let mut out = SolutionSet::empty(s, h, "fiber orbits");
    if !is_integral(t) {
        out.certified = true;
        return Ok(out);
    }
    let ti = t.to_integer();
    let fp = fiber_integral_points(s, axis, &ti, h)?;
    let perfect = fp
        .descriptor
        .as_ref()
        .is_some_and(|d| d.class == FiberClass::Perfect);
    let user = |p: &SurfacePoint<BigInt>| s.from_trace_coords(p);
    let keep = |p: &SurfacePoint<BigInt>| c.contains(&user(p));
    if perfect && ti.abs() > BigInt::from(2) && matches!(c.shape, CurveShape::Implicit(_)) {
        let syms = fiber_symmetries(s, axis);
        for o in fp.orbits.iter().filter(|o| o.period.is_none()) {
            out.orbit_generators.push(OrbitGenerator {
                rep: user(&o.rep),
                axis,
                t: ti.clone(),
                generator: fp.generator,
                symmetries: syms.clone(),
                members: o.members.iter().map(user).collect(),
            });
        }
        out.finite_points = fp.sporadic.iter().map(user).collect();
        out.certified = true;
    } else {
        out.method = "fiber box search";
        out.finite_points = fp.points.iter().filter(|p| keep(p)).map(user).collect();
        if !perfect {
            if let Ok(fam) = parametrize_parabolic_fiber(s, axis, t) {
                if let Some(r) = fam.rational() {
                    out.families = integral_families(&s.from_trace_coords(&r))?;
                }
            }
        }
    }
    out.finite_points.sort();
    Ok(out)
}

fn candidate_solve(c: &CurveOnSurface, h: i64, slope_bound: i64) -> Result<SolutionSet> {
    let CurveShape::Parametrized(param) = &c.shape else {
        unreachable!()
    };
    let mut out = SolutionSet::empty(&c.surface, h, "bounded traces at infinity");
    let mut pts = Vec::new();
    for w in infinity_witnesses(c, slope_bound)? {
        let (mut lo, mut hi) = candidate_range(&w);
        if w.trace.axis().is_some() {
            lo = lo.min(BigInt::from(-h));
            hi = hi.max(BigInt::from(h));
        }
        out.candidate_ranges.push(json!({
            "place": w.place.to_string(),
            "trace": Value::from(w.trace),
            "value": crate::exactnum::json_rat(&w.value),
            "range": [json_int(&lo), json_int(&hi)],
        }));
        let (lo, hi) = (lo.to_i64().unwrap(), hi.to_i64().unwrap());
        let f = &w.function;
        let found: Vec<SurfacePoint<BigInt>> = (lo..=hi)
            .into_par_iter()
            .flat_map_iter(|alpha| {
                let eq = f.num().clone() - f.den().scale(&BigRational::from_integer(alpha.into()));
                crate::exactnum::rational_roots(&eq)
                    .unwrap_or_default()
                    .into_iter()
                    .filter_map(|t| {
                        let v: Option<Vec<BigRational>> =
                            param.0.iter().map(|g| g.eval(&t)).collect();
                        let v = v?;
                        v.iter()
                            .all(is_integral)
                            .then(|| SurfacePoint(std::array::from_fn(|i| v[i].to_integer())))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        pts.extend(found);
    }
    pts.sort();
    pts.dedup();
    out.finite_points = pts;
    out.certified = true;
    Ok(out)
}

/// Integral points of a curve: fiber orbits or polynomial families for
/// integrable curves, bounded-trace candidates for parametrized
/// nonintegrable curves, and a box search otherwise.
pub fn solve_curve_integral(c: &CurveOnSurface, h: i64, slope_bound: i64) -> Result<SolutionSet> {
    if h < 1 {
        return Err(Error::precondition("height bound must be at least 1"));
    }
    let class = classify_curve(c, slope_bound)?;
    let mut out = match (&class, &c.shape) {
        (CurveClass::Integrable { .. }, CurveShape::Parametrized(p))
            if p.0.iter().all(RatFunc::is_polynomial) =>
        {
            let mut out = SolutionSet::empty(&c.surface, h, "polynomial families");
            out.families = integral_families(&p.map(|f| f.num().clone()))?;
            out.certified = true;
            out
        }
        (CurveClass::Integrable { trace, t }, _) => match (trace.axis(), c.as_fiber()) {
            (Some(axis), Some(_)) => fiber_solve(c, axis, t, h)?,
            (Some(axis), None) if matches!(c.shape, CurveShape::Parametrized(_)) => {
                fiber_solve(c, axis, t, h)?
            }
            (_, _) if matches!(c.shape, CurveShape::Implicit(_)) => box_solve(c, h)?,
            _ => {
                return Err(Error::Unsupported(format!(
                    "rational curve with constant trace {trace}"
                )))
            }
        },
        (CurveClass::Nonintegrable { .. }, CurveShape::Parametrized(_)) => {
            candidate_solve(c, h, slope_bound)?
        }
        (CurveClass::Nonintegrable { .. }, CurveShape::Implicit(_)) => box_solve(c, h)?,
    };
    out.classification = Some(class);
    Ok(out)
}

/// Points of an implicit curve with coordinates in the ring of integers of
/// `Q(√−d)`, basis coordinates bounded by `h`.
pub fn solve_curve_od(c: &CurveOnSurface, d: &BigInt, h: i64) -> Result<SolutionSet> {
    let CurveShape::Implicit(gs) = &c.shape else {
        return Err(Error::Unsupported(
            "O_d solving needs an implicit curve".into(),
        ));
    };
    let s = &c.surface;
    let syms = s.symmetries();
    let mut pts: Vec<SurfacePoint<QuadInt>> = Vec::new();
    for rep in points_over_od(s, d, h)? {
        let e = SurfacePoint(rep.0.clone().map(|v| v.to_elt()));
        for img in syms.iter().flat_map(|g| {
            let q = g.apply(&e);
            [q.clone(), q.map(|v| v.conj())]
        }) {
            if gs.iter().all(|g| g.eval(&img.0).is_zero()) {
                let back = img
                    .0
                    .clone()
                    .map(|v| QuadInt::from_elt(&v, d).expect("symmetries preserve O_d"));
                pts.push(SurfacePoint(back));
            }
        }
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    pts.dedup();
    let mut out = SolutionSet::empty(s, h, "O_d box search");
    out.od_points = pts;
    Ok(out)
}

/// Integral solutions of the surface equation together with `constraints`.
/// Without constraints, the descent-minimal points in the box.
pub fn corollary5_solve(
    s: &MarkoffSurface,
    constraints: &[MPoly],
    h: i64,
    slope_bound: i64,
) -> Result<SolutionSet> {
    if h < 1 {
        return Err(Error::precondition("height bound must be at least 1"));
    }
    if constraints.is_empty() {
        let mut out = SolutionSet::empty(s, h, "minimal points");
        out.minimal_points = enumerate_minimal(s, h)?;
        return Ok(out);
    }
    let c = CurveOnSurface::implicit(s, constraints.to_vec())?;
    if matches!(s.provenance(), Provenance::Raw) {
        return box_solve(&c, h);
    }
    match solve_curve_integral(&c, h, slope_bound) {
        Err(Error::Undetermined(_)) => box_solve(&c, h),
        r => r,
    }
}
