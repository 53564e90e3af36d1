//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 on success, 1 when `selftest` finds a failure, 2 on
//! malformed input or violated preconditions, 3 when a search bound is hit.

mod selftest;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::curves::{
    classify_curve, corollary5_solve, infinity_witnesses, solve_curve_integral, solve_curve_od,
    CurveOnSurface, SolutionSet,
};
use crate::error::{Error, Result};
use crate::exactnum::{
    format_rational, json_int, json_rat, parse_expr, parse_integer, parse_rational, Field, MPoly,
    Place, RatFunc, Valued,
};
use crate::fibers::{
    classify_fiber, fiber_conic, fiber_generator_apply, fiber_integral_points,
    parametrize_parabolic_fiber, points_over_od, Generator,
};
use crate::slopes::{
    systole_search, trace_of_slope, trace_polynomial, translation_length, Mat2, Rep11, Slope,
};
use crate::surface::{descend, enumerate_minimal, orbit_equal, Axis, MarkoffSurface, SurfacePoint};
use crate::torus_lattice::{
    classify_dichotomy, exponential_solutions, is_subtorus_translate, LatticePointProblem,
    TorusPoly,
};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "MARKOFF_WORKERS";

/// Bounds and reproducibility knobs shared by every command.
#[derive(Args, Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Coordinate bound for box searches.
    #[arg(long = "H", global = true, default_value_t = 100)]
    pub height_bound: i64,
    /// Slopes p/q with |p|, q up to this bound are tried.
    #[arg(long, global = true, default_value_t = 20)]
    pub slope_bound: i64,
    /// Search depth for orbit connections.
    #[arg(long, global = true, default_value_t = 40)]
    pub orbit_depth: usize,
    /// Squarefree d for O_d scans.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [1i64, 2, 3, 7])]
    pub d_list: Vec<i64>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.height_bound < 1 || self.slope_bound < 1 || self.orbit_depth < 1 {
            return Err(Error::precondition("bounds must be positive"));
        }
        if self.d_list.iter().any(|&d| d < 1) {
            return Err(Error::precondition("d values must be positive"));
        }
        Ok(())
    }

    /// Echo for the output document; leaves out the worker count so output
    /// does not depend on it.
    pub fn to_json(&self) -> Value {
        json!({
            "H": self.height_bound,
            "slope_bound": self.slope_bound,
            "orbit_depth": self.orbit_depth,
            "d_list": self.d_list,
            "seed": self.seed,
        })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "markoff",
    version,
    about = "Integral points on Markoff-type cubic surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a surface in both charts.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Vieta descent to a minimal point.
    Descend {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether two points share an orbit, with a connecting word.
    Orbit {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Minimal points in the box, one per symmetry class.
    Enumerate {
        #[arg(long)]
        surface: String,
        /// Also list every integral point in the box.
        #[arg(long)]
        points: bool,
        /// Also scan O_d for each d in --d-list.
        #[arg(long)]
        od: bool,
    },
    /// Fibers of a trace coordinate.
    #[command(subcommand)]
    Fiber(FiberCmd),
    /// Curves on a surface.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Integral solutions of the surface equation plus constraints.
    Solve {
        #[arg(long)]
        surface: String,
        /// Constraint polynomial in x, y, z (`lhs = rhs` allowed); repeatable.
        #[arg(long, allow_hyphen_values = true)]
        constraint: Vec<String>,
    },
    /// Slope traces.
    #[command(subcommand)]
    Slope(SlopeCmd),
    /// Bruhat–Tits tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// First slope whose trace is integral at the place.
    Systole {
        #[command(flatten)]
        place: PlaceArgs,
        /// Trace triple `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        triple: Option<String>,
        /// Matrix A, e.g. `[[2,0],[0,1/2]]`.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Points (x^m, y^n) on a curve in the torus.
    #[command(subcommand, name = "torus-lattice")]
    TorusLattice(LatticeCmd),
    /// Run the invariant suites.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    /// Once-punctured torus with boundary trace k.
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Four-holed sphere with boundary traces k1..k4.
    Sphere {
        /// `k1,k2,k3,k4`.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// `x² + y² + z² + eps·xyz = ax + by + cz + d`.
    Raw {
        /// `eps,a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    #[arg(long)]
    surface: String,
    #[arg(long, default_value = "x")]
    axis: String,
    /// Fiber value in trace coordinates.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
}

#[derive(Subcommand, Debug)]
pub enum FiberCmd {
    /// Perfect, parabolic or degenerate, with the fiber conic.
    Classify(FiberArgs),
    /// The conic cut out by the fiber.
    Conic(FiberArgs),
    /// Generator images `gⁿ(point)` for |n| ≤ steps (trace coordinates).
    Orbit {
        #[command(flatten)]
        fiber: FiberArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 3)]
        steps: i64,
    },
    /// Integral fiber points in the box, grouped into orbits.
    Points(FiberArgs),
    /// Polynomial family filling a parabolic fiber.
    ParabolicParam(FiberArgs),
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long)]
    surface: String,
    /// `x(T); y(T); z(T)` in the surface's chart.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eq")]
    param: Option<String>,
    /// Equation in x, y, z; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    eq: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Integrable (constant trace) or nonintegrable, with witnesses.
    Classify(CurveArgs),
    /// Integral points on the curve.
    Solve {
        #[command(flatten)]
        curve: CurveArgs,
        /// `Z` or `O_d` (with d from --d-list).
        #[arg(long, default_value = "Z")]
        ring: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SlopeCmd {
    /// Trace of a slope at a trace triple.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Trace of a slope as a polynomial in x, y, z.
    Poly {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
}

#[derive(Args, Debug)]
pub struct PlaceArgs {
    /// Prime for the p-adic valuation on Q.
    #[arg(long)]
    p: Option<i64>,
    /// Place of Q(T): `oo` or a rational point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "p")]
    place: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Translation length of an SL2 matrix.
    Length {
        #[command(flatten)]
        place: PlaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// Polynomial in X, Y.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// Exponent bound.
    #[arg(long = "M", default_value_t = 20)]
    m: u32,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Finite or subtorus translate, with the solutions in the box.
    Classify(LatticeArgs),
    /// Solutions with exponents up to M.
    Solve(LatticeArgs),
}

fn point(s: &str) -> Result<SurfacePoint<BigInt>> {
    s.parse()
}

fn surface(s: &str) -> Result<MarkoffSurface> {
    s.parse()
}

fn axis(s: &str) -> Result<Axis> {
    s.parse()
}

/// `p` in this surface's chart, plus trace coordinates for torus surfaces.
fn both_charts(s: &MarkoffSurface, p: &SurfacePoint<BigInt>) -> Value {
    if s.is_torus() {
        json!({"point": p.to_json(), "trace": s.to_trace_coords(p).to_json()})
    } else {
        json!({"point": p.to_json()})
    }
}

fn surface_json(s: &MarkoffSurface) -> Value {
    json!({
        "surface": s.to_json(),
        "equation": format!("{} = 0", s.polynomial()),
        "trace_form": s.trace_form().to_json(),
        "trace_equation": format!("{} = 0", s.trace_form().polynomial()),
        "involution": if s.is_torus() { "(x, y, z) -> (-x, y, z)" } else { "identity" },
        "symmetries": s.symmetries().len(),
    })
}

fn mpoly(s: &str) -> Result<MPoly> {
    let names = ["x", "y", "z"];
    parse_expr(s)?.eval(
        &|v| names.iter().position(|n| *n == v).map(MPoly::var),
        &|_, _| None,
    )
}

fn ratfunc(s: &str) -> Result<RatFunc> {
    parse_expr(s)?.eval(&|v| (v == "T").then(RatFunc::var), &|a, b| a.div(b))
}

fn place(args: &PlaceArgs) -> Result<Place> {
    match (&args.p, &args.place) {
        (Some(p), None) => Place::padic(*p),
        (None, Some(s)) if s == "oo" || s == "inf" => Ok(Place::Infinity),
        (None, Some(s)) => Ok(Place::Point(parse_rational(s)?)),
        _ => Err(Error::precondition("give --p or --place")),
    }
}

/// `[[a,b],[c,d]]`.
fn matrix_entries(s: &str) -> Result<[String; 4]> {
    let flat: String = s.chars().filter(|c| !"[] ".contains(*c)).collect();
    let parts: Vec<String> = flat.split(',').map(str::to_string).collect();
    parts
        .try_into()
        .map_err(|_| Error::Parse(format!("expected a 2x2 matrix, got {s}")))
}

fn matrix<F>(s: &str, entry: impl Fn(&str) -> Result<F>) -> Result<Mat2<F>> {
    let [a, b, c, d] = matrix_entries(s)?;
    Ok(Mat2([[entry(&a)?, entry(&b)?], [entry(&c)?, entry(&d)?]]))
}

fn rational_entry(s: &str) -> Result<BigRational> {
    parse_expr(s)?.eval(&|_| None, &|a: &BigRational, b| a.div(b))
}

fn triple<F>(s: &str, entry: impl Fn(&str) -> Result<F>) -> Result<[F; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected x,y,z, got {s}")));
    };
    Ok([entry(x)?, entry(y)?, entry(z)?])
}

fn curve(args: &CurveArgs) -> Result<CurveOnSurface> {
    let s = surface(&args.surface)?;
    match &args.param {
        Some(p) => {
            let parts: Vec<&str> = p.split(';').collect();
            let [x, y, z] = parts.as_slice() else {
                return Err(Error::Parse(
                    "--param needs three ';'-separated functions".into(),
                ));
            };
            CurveOnSurface::parametrized(&s, SurfacePoint([ratfunc(x)?, ratfunc(y)?, ratfunc(z)?]))
        }
        None => {
            CurveOnSurface::implicit(&s, args.eq.iter().map(|e| mpoly(e)).collect::<Result<_>>()?)
        }
    }
}

fn solution_json(sol: &SolutionSet) -> Value {
    let mut v = sol.to_json();
    if sol.surface.is_torus() {
        v["finite_points_trace"] = Value::Array(
            sol.finite_points
                .iter()
                .map(|p| sol.surface.to_trace_coords(p).to_json())
                .collect(),
        );
    }
    v
}

fn lattice_problem(args: &LatticeArgs) -> Result<LatticePointProblem> {
    LatticePointProblem::new(
        args.f.parse::<TorusPoly>()?,
        parse_rational(&args.x)?,
        parse_rational(&args.y)?,
    )
}

fn run_command(cmd: &Command, cfg: &RunConfig) -> Result<Value> {
    let h = cfg.height_bound;
    Ok(match cmd {
        Command::Surface(sc) => {
            let s = match sc {
                SurfaceCmd::Torus { k } => MarkoffSurface::from_torus(&parse_integer(k)?),
                SurfaceCmd::Sphere { k } => surface(&format!("sphere:{k}"))?,
                SurfaceCmd::Raw { coeffs } => surface(&format!("raw:{coeffs}"))?,
            };
            surface_json(&s)
        }
        Command::Descend {
            surface: ss,
            point: ps,
        } => {
            let s = surface(ss)?;
            let d = descend(&s, &point(ps)?)?;
            json!({
                "start": both_charts(&s, &point(ps)?),
                "minimal": both_charts(&s, &d.point),
                "word": d.word.to_json(),
                "norms": d.norms.iter().map(json_int).collect::<Vec<_>>(),
            })
        }
        Command::Orbit { surface: ss, p, q } => {
            let s = surface(ss)?;
            let (p, q) = (point(p)?, point(q)?);
            let w = orbit_equal(&s, &p, &q, cfg.orbit_depth)?;
            json!({
                "p": both_charts(&s, &p),
                "q": both_charts(&s, &q),
                "same_orbit": w.is_some(),
                "word": w.map(|w| w.to_json()),
            })
        }
        Command::Enumerate {
            surface: ss,
            points,
            od,
        } => {
            let s = surface(ss)?;
            let mins = enumerate_minimal(&s, h)?;
            let mut v = json!({
                "surface": surface_json(&s),
                "minimal_points": mins.iter().map(|m| {
                    let mut j = m.to_json();
                    j["trace"] = s.to_trace_coords(&m.point).to_json();
                    j
                }).collect::<Vec<_>>(),
            });
            if *points {
                let all = crate::surface::integral_points_in_box(&s, h);
                v["points"] = Value::Array(all.iter().map(SurfacePoint::to_json).collect());
            }
            if *od {
                let mut per = serde_json::Map::new();
                for d in &cfg.d_list {
                    let pts = points_over_od(&s, &BigInt::from(*d), h.min(64))?;
                    per.insert(
                        d.to_string(),
                        Value::Array(
                            pts.iter()
                                .map(|p| {
                                    json!(p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                                })
                                .collect(),
                        ),
                    );
                }
                v["od_points"] = Value::Object(per);
                v["od_bound"] = json!(h.min(64));
            }
            v
        }
        Command::Fiber(fc) => fiber(fc, cfg)?,
        Command::Curve(CurveCmd::Classify(args)) => {
            let c = curve(args)?;
            let mut v = json!({"curve": c.to_json(), "classification": classify_curve(&c, cfg.slope_bound)?.to_json()});
            if args.param.is_some() {
                v["infinity_witnesses"] = match infinity_witnesses(&c, cfg.slope_bound) {
                    Ok(ws) => Value::Array(ws.iter().map(|w| w.to_json()).collect()),
                    Err(e) => json!({"error": e.to_string()}),
                };
            }
            v
        }
        Command::Curve(CurveCmd::Solve { curve: args, ring }) => {
            let c = curve(args)?;
            match ring.as_str() {
                "Z" => solution_json(&solve_curve_integral(&c, h, cfg.slope_bound)?),
                "O_d" => {
                    let mut per = serde_json::Map::new();
                    for d in &cfg.d_list {
                        per.insert(
                            d.to_string(),
                            solve_curve_od(&c, &BigInt::from(*d), h.min(64))?.to_json(),
                        );
                    }
                    Value::Object(per)
                }
                other => return Err(Error::Parse(format!("unknown ring {other}"))),
            }
        }
        Command::Solve {
            surface: ss,
            constraint,
        } => {
            let s = surface(ss)?;
            let cs: Vec<MPoly> = constraint.iter().map(|c| mpoly(c)).collect::<Result<_>>()?;
            let mut v = solution_json(&corollary5_solve(&s, &cs, h, cfg.slope_bound)?);
            v["surface"] = surface_json(&s);
            v["constraints"] = json!(cs.iter().map(|c| format!("{c} = 0")).collect::<Vec<_>>());
            v
        }
        Command::Slope(SlopeCmd::Trace { slope, triple: t }) => {
            let sl: Slope = slope.parse()?;
            let t = triple(t, rational_entry)?;
            json!({"slope": sl.to_string(), "trace": format_rational(&trace_of_slope(sl, &t))})
        }
        Command::Slope(SlopeCmd::Poly { slope }) => {
            let sl: Slope = slope.parse()?;
            json!({"slope": sl.to_string(), "polynomial": trace_polynomial(sl).to_string()})
        }
        Command::Tree(TreeCmd::Length {
            place: pa,
            matrix: m,
        }) => {
            let pl = place(pa)?;
            let length = match pl {
                Place::Padic(_) => translation_length(&matrix(m, rational_entry)?, &pl)?,
                _ => translation_length(&matrix(m, ratfunc)?, &pl)?,
            };
            json!({"place": pl.to_string(), "length": length})
        }
        Command::Systole {
            place: pa,
            triple: t,
            a,
            b,
        } => {
            let pl = place(pa)?;
            match pl {
                Place::Padic(_) => systole(
                    &pl,
                    t,
                    a,
                    b,
                    cfg.slope_bound,
                    rational_entry,
                    format_rational,
                )?,
                _ => systole(&pl, t, a, b, cfg.slope_bound, ratfunc, |f: &RatFunc| {
                    f.to_text()
                })?,
            }
        }
        Command::TorusLattice(LatticeCmd::Classify(args)) => {
            let prob = lattice_problem(args)?;
            let mut v = classify_dichotomy(&prob, args.m).to_json();
            v["problem"] = prob.to_json();
            v["subtorus"] = match is_subtorus_translate(&prob.f) {
                Ok(Some(st)) => {
                    json!({"d": st.d, "e": st.e, "base": [json_rat(&st.base.0), json_rat(&st.base.1)]})
                }
                Ok(None) => Value::Null,
                Err(e) => json!({"error": e.to_string()}),
            };
            v
        }
        Command::TorusLattice(LatticeCmd::Solve(args)) => {
            let prob = lattice_problem(args)?;
            json!({"problem": prob.to_json(), "bound": args.m, "solutions": exponential_solutions(&prob, args.m)})
        }
        Command::Selftest => selftest::run(cfg)?,
    })
}

fn systole<F: Field + Valued>(
    pl: &Place,
    t: &Option<String>,
    a: &Option<String>,
    b: &Option<String>,
    bound: i64,
    entry: impl Fn(&str) -> Result<F> + Copy,
    show: impl Fn(&F) -> String,
) -> Result<Value> {
    let t = match (t, a, b) {
        (Some(t), None, None) => triple(t, entry)?,
        (None, Some(a), Some(b)) => {
            Rep11::new(matrix(a, entry)?, matrix(b, entry)?)?.trace_triple()
        }
        _ => return Err(Error::precondition("give --triple or both --a and --b")),
    };
    let hit = systole_search(&t, pl, bound)?;
    Ok(
        json!({"place": pl.to_string(), "triple": t.iter().map(&show).collect::<Vec<_>>(), "hit": hit.to_json(show)}),
    )
}

fn fiber(fc: &FiberCmd, cfg: &RunConfig) -> Result<Value> {
    let args = match fc {
        FiberCmd::Classify(a)
        | FiberCmd::Conic(a)
        | FiberCmd::Points(a)
        | FiberCmd::ParabolicParam(a) => a,
        FiberCmd::Orbit { fiber, .. } => fiber,
    };
    let s = surface(&args.surface)?;
    let ax = axis(&args.axis)?;
    let t = parse_rational(&args.t)?;
    Ok(match fc {
        FiberCmd::Classify(_) => classify_fiber(&s, ax, &t)?.to_json(),
        FiberCmd::Conic(_) => {
            let c = fiber_conic(&s, ax, &t);
            json!({"axis": ax.name(), "t": json_rat(&t), "conic": c.to_json(), "text": c.to_string()})
        }
        FiberCmd::Orbit {
            point: ps, steps, ..
        } => {
            let p = point(ps)?;
            if p.get(ax) != &t.to_integer() || !t.is_integer() {
                return Err(Error::precondition(format!(
                    "point is not on the fiber {ax} = {}",
                    args.t
                )));
            }
            let imgs: Vec<Value> = (-steps..=*steps)
                .map(|n| {
                    Ok(json!({"n": n, "point": fiber_generator_apply(&s, ax, &p, n)?.to_json()}))
                })
                .collect::<Result<_>>()?;
            json!({"axis": ax.name(), "t": json_rat(&t), "generator": Generator::for_fiber(&s, ax).name(), "images": imgs})
        }
        FiberCmd::Points(_) => {
            if !t.is_integer() {
                return Err(Error::precondition("integral fiber points need integral t"));
            }
            let fp = fiber_integral_points(&s, ax, &t.to_integer(), cfg.height_bound)?;
            let mut v = fp.to_json();
            v["points"] = Value::Array(fp.points.iter().map(SurfacePoint::to_json).collect());
            v
        }
        FiberCmd::ParabolicParam(_) => parametrize_parabolic_fiber(&s, ax, &t)?.to_json(),
    })
}

fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses `argv`, runs the command and writes the JSON document. Returns the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let doc = json!({"error": {"kind": "parse", "message": e.to_string().trim_end()}});
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            return 2;
        }
    };
    let (doc, code) = match run(&cli) {
        Ok((v, code)) => (v, code),
        Err(e) => (error_json(&e), exit_code(&e)),
    };
    let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    match &cli.config.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}

/// Runs a parsed command on its own worker pool.
pub fn run(cli: &Cli) -> Result<(Value, i32)> {
    cli.config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.workers)
        .build()
        .map_err(|e| Error::precondition(e.to_string()))?;
    let result = pool.install(|| run_command(&cli.command, &cli.config))?;
    let code = match (&cli.command, result.get("passed")) {
        (Command::Selftest, Some(Value::Bool(false))) => 1,
        _ => 0,
    };
    Ok((
        json!({"config": cli.config.to_json(), "result": result}),
        code,
    ))
}

/// Runs `argv` and returns the JSON document and exit code, for tests.
pub fn run_args<I, T>(argv: I) -> (Value, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => match run(&cli) {
            Ok(r) => r,
            Err(e) => (error_json(&e), exit_code(&e)),
        },
        Err(e) => (
            json!({"error": {"kind": "parse", "message": e.to_string()}}),
            2,
        ),
    }
}
