//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use markoff::cli::run_args;
use markoff::exactnum::{Place, Poly, Ring};
use markoff::fibers::{
    classify_fiber, fiber_generator_apply, fiber_symmetries, parametrize_parabolic_fiber,
};
use markoff::slopes::{
    constant_trace_slope, farey_triangles, trace_of_slope, trace_polynomial, translation_length,
    Mat2,
};
use markoff::surface::{descend, orbit_equal, Axis, MarkoffSurface, SurfacePoint};
use markoff::torus_lattice::{
    classify_dichotomy, preserves_curve, Dichotomy, LatticePointProblem, TorusPoly,
};
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Markoff numbers up to 1000 from a direct scan of x² + y² + z² = 3xyz.
const MARKOFF_UP_TO_1000: [i64; 13] = [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pt(p: [i64; 3]) -> SurfacePoint<BigInt> {
    SurfacePoint::from_i64(p[0], p[1], p[2])
}

fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Roots of `w² + b·w + c` in integers.
fn int_quadratic_roots(b: i128, c: i128) -> Vec<i128> {
    let Some(r) = isqrt_exact(b * b - 4 * c) else {
        return vec![];
    };
    let mut out: Vec<i128> = [-b - r, -b + r]
        .into_iter()
        .filter(|n| n % 2 == 0)
        .map(|n| n / 2)
        .collect();
    out.dedup();
    out
}

fn markoff_orbit_unity() -> Outcome {
    let h = 3000i64;
    let s = MarkoffSurface::from_torus(&BigInt::from(-2));
    let (doc, code) = run_args([
        "markoff",
        "enumerate",
        "--surface",
        "torus:-2",
        "--H",
        "3000",
    ]);
    check(code == 0, format!("enumerate exited with {code}"))?;
    let mins: Vec<&serde_json::Value> = doc["result"]["minimal_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| &m["point"])
        .collect();
    let want = [
        serde_json::json!({"x": -3, "y": 3, "z": 3}),
        serde_json::json!({"x": 0, "y": 0, "z": 0}),
    ];
    check(
        mins.len() == 2 && want.iter().all(|w| mins.contains(&w)),
        format!("minimal classes {mins:?}"),
    )?;

    // x² + y² + z² + xyz = 0 solved for z over the box
    let mut pts = Vec::new();
    for x in -h as i128..=h as i128 {
        for y in -h as i128..=h as i128 {
            for z in int_quadratic_roots(x * y, x * x + y * y) {
                if z.abs() <= h as i128 {
                    pts.push([x as i64, y as i64, z as i64]);
                }
            }
        }
    }
    let base = pt([-3, 3, 3]);
    let mut markoff = BTreeSet::new();
    for p in &pts {
        if *p == [0, 0, 0] {
            continue;
        }
        let p3 = pt(*p);
        let word = orbit_equal(&s, &p3, &base, 40).map_err(|e| e.to_string())?;
        let word = word.ok_or(format!("{p:?} not connected to (-3,3,3)"))?;
        check(
            word.apply(&s, &p3).map_err(|e| e.to_string())? == base,
            format!("bad word for {p:?}"),
        )?;
        for c in p {
            if c.abs() <= 3000 {
                markoff.insert(c.abs() / 3);
            }
        }
    }
    let got: Vec<i64> = markoff.into_iter().filter(|&m| m <= 1000).collect();
    check(
        got == MARKOFF_UP_TO_1000,
        format!("Markoff numbers {got:?}"),
    )?;
    Ok(format!(
        "{} box points, 2 classes, {} Markoff numbers",
        pts.len(),
        got.len()
    ))
}

fn random_surface(rng: &mut ChaCha8Rng) -> MarkoffSurface {
    match rng.gen_range(0..3) {
        0 => MarkoffSurface::from_torus(&BigInt::from(rng.gen_range(-20..=20))),
        1 => MarkoffSurface::from_sphere(&[(); 4].map(|_| BigInt::from(rng.gen_range(-4..=4)))),
        _ => {
            let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
            let [a, b, c, d] = [6, 6, 6, 10].map(|r| BigInt::from(rng.gen_range(-r..=r)));
            MarkoffSurface::raw(eps, a, b, c, d).unwrap()
        }
    }
}

fn involution_and_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut surfaces = Vec::new();
    while surfaces.len() < 20 {
        let s = random_surface(&mut rng);
        // seeds: integral points found by solving for z
        let seeds: Vec<SurfacePoint<BigInt>> = (-40i64..=40)
            .flat_map(|x| (-40i64..=40).map(move |y| (x, y)))
            .flat_map(|(x, y)| {
                let p = SurfacePoint::from_i64(x, y, 0);
                markoff::surface::complete_point(&s, Axis::Z, &p)
                    .into_iter()
                    .map(move |z| p.with(Axis::Z, z))
            })
            .collect();
        if !seeds.is_empty() {
            surfaces.push((s, seeds));
        }
    }
    let mut checked = 0;
    for (s, seeds) in &surfaces {
        for _ in 0..500 {
            let mut p = seeds[rng.gen_range(0..seeds.len())].clone();
            for _ in 0..rng.gen_range(0..=12) {
                p = s
                    .vieta_move(Axis::from_index(rng.gen_range(0..3)), &p)
                    .map_err(|e| e.to_string())?;
            }
            check(s.eval(&p).is_zero(), format!("{p} left the surface"))?;
            for axis in Axis::ALL {
                let m = s.vieta_move(axis, &p).map_err(|e| e.to_string())?;
                check(
                    s.eval(&m).is_zero(),
                    format!("move {axis:?} left the surface at {p}"),
                )?;
                check(
                    s.vieta_move(axis, &m).unwrap() == p,
                    format!("move {axis:?} not an involution at {p}"),
                )?;
            }
            let d = descend(s, &p).map_err(|e| e.to_string())?;
            check(
                d.norms.windows(2).all(|w| w[1] < w[0]),
                format!("norms not decreasing from {p}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} points on {} surfaces", surfaces.len()))
}

/// The family is nonconstant, on the surface, and sits on the fiber.
fn verified_family(s: &MarkoffSurface, axis: Axis, t: &BigRational) -> bool {
    let Ok(fam) = parametrize_parabolic_fiber(s, axis, t) else {
        return false;
    };
    let on_fiber = fam
        .point
        .get(axis)
        .constant_value()
        .and_then(|c| c.as_rational().cloned())
        == Some(t.clone());
    fam.is_nonconstant() && fam.lies_on(s) && on_fiber
}

fn fiber_vs_parametrization() -> Outcome {
    let mut checked = 0;
    let mut parabolic = 0;
    let mut run = |s: &MarkoffSurface, t: i64| -> Result<(), String> {
        let t = BigRational::from_integer(t.into());
        for axis in Axis::ALL {
            let d = classify_fiber(s, axis, &t).map_err(|e| e.to_string())?;
            let fam = verified_family(s, axis, &t);
            check(
                d.class.is_parabolic() == fam,
                format!("{} axis {axis:?} t={t}: class/family", s.to_json()),
            )?;
            // t = ±2 is parabolic on its own; the constant decides the rest
            let pm2 = t.abs() == BigRational::from_integer(2.into());
            check(
                !d.class.is_parabolic() == (!pm2 && !d.degenerate_constant().is_zero()),
                format!("{} axis {axis:?} t={t}: class/constant", s.to_json()),
            )?;
            checked += 1;
            parabolic += fam as usize;
        }
        Ok(())
    };
    for k in -10..=10 {
        let s = MarkoffSurface::from_torus(&BigInt::from(k));
        for t in -10..=10 {
            run(&s, t)?;
        }
    }
    for k1 in -3..=3 {
        for k2 in -3..=3 {
            for k3 in -3..=3 {
                for k4 in -3..=3 {
                    let s = MarkoffSurface::from_sphere(&[k1, k2, k3, k4].map(BigInt::from));
                    for t in -6..=6 {
                        run(&s, t)?;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} fibers, {parabolic} parabolic"))
}

fn twist_finite_generation() -> Outcome {
    let h: i128 = 1_000_000;
    let s = MarkoffSurface::from_torus(&BigInt::from(-2));
    // trace coordinates: y² − 3yz + z² + 9 = 0 on x = 3
    let mut pts = BTreeSet::new();
    for y in -h..=h {
        for z in int_quadratic_roots(-3 * y, y * y + 9) {
            if z.abs() <= h {
                pts.insert(pt([3, y as i64, z as i64]));
            }
        }
    }
    let rep = pt([3, 3, 3]);
    let syms = fiber_symmetries(&s, Axis::X);
    let mut reach = BTreeSet::new();
    for n in -40..=40 {
        let g = fiber_generator_apply(&s, Axis::X, &rep, n).map_err(|e| e.to_string())?;
        for sym in &syms {
            reach.insert(sym.apply(&g));
        }
    }
    let missing: Vec<_> = pts.iter().filter(|p| !reach.contains(*p)).collect();
    check(
        missing.is_empty(),
        format!("unreached: {:?}", &missing[..missing.len().min(3)]),
    )?;
    Ok(format!("{} fiber points reached", pts.len()))
}

fn vp(r: &BigRational, p: i64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

fn random_rational(rng: &mut ChaCha8Rng, p: i64) -> BigRational {
    let num = rng.gen_range(-30..=30i64);
    let den = p.pow(rng.gen_range(0..4)) * rng.gen_range(1..=6i64);
    q(num * p.pow(rng.gen_range(0..3)), den)
}

fn random_sl2(rng: &mut ChaCha8Rng, p: i64) -> Mat2<BigRational> {
    loop {
        let a = random_rational(rng, p);
        if a.is_zero() {
            continue;
        }
        let (b, c) = (random_rational(rng, p), random_rational(rng, p));
        let d = (BigRational::one() + &b * &c) / &a;
        return Mat2([[a, b], [c, d]]);
    }
}

fn translation_length_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut zero = 0;
    for i in 0..1000 {
        let p = [2, 3, 5][i % 3];
        let place = Place::padic(p).unwrap();
        let g = random_sl2(&mut rng, p);
        let len = translation_length(&g, &place).map_err(|e| e.to_string())?;
        let integral = vp(&g.trace(), p).is_none_or(|v| v >= 0);
        check(
            (len == 0) == integral,
            format!("length {len} for {g:?} at p={p}"),
        )?;
        let h = random_sl2(&mut rng, p);
        let conj = h.mul(&g).mul(&h.adjugate());
        check(
            translation_length(&conj, &place).unwrap() == len,
            format!("conjugate of {g:?} at p={p}"),
        )?;
        zero += (len == 0) as usize;
    }
    Ok(format!("1000 matrices, {zero} elliptic"))
}

fn constant_slopes_on_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 200 {
        let k = rng.gen_range(-10..=10i64);
        let s = MarkoffSurface::from_torus(&BigInt::from(k));
        let mut ts = vec![2, -2];
        if let Some(r) = isqrt_exact((k + 2) as i128) {
            ts.extend([r as i64, -(r as i64)]);
        }
        let t = BigRational::from_integer(ts[rng.gen_range(0..ts.len())].into());
        let axis = Axis::from_index(rng.gen_range(0..3));
        let Ok(fam) = parametrize_parabolic_fiber(&s, axis, &t) else {
            continue;
        };
        let Some(mut c) = fam.rational() else {
            continue;
        };
        let st = s.trace_form();
        for _ in 0..rng.gen_range(0..=6) {
            c = st.vieta_move_unchecked(Axis::from_index(rng.gen_range(0..3)), &c);
        }
        check(
            st.contains(&c),
            format!("moved family off the surface (k={k})"),
        )?;
        let (slope, value) =
            constant_trace_slope(&c, 50).map_err(|e| format!("k={k} t={t}: {e}"))?;
        let tr: Poly<BigRational> = trace_of_slope(slope, &c.0);
        check(
            tr == Poly::constant(value.clone()),
            format!("trace of {slope} not constant (k={k})"),
        )?;
        done += 1;
    }
    Ok("200 families".into())
}

fn fricke_identity() -> Outcome {
    let x = markoff::exactnum::MPoly::var(0);
    let y = markoff::exactnum::MPoly::var(1);
    let z = markoff::exactnum::MPoly::var(2);
    let kappa = |a: &markoff::exactnum::MPoly,
                 b: &markoff::exactnum::MPoly,
                 c: &markoff::exactnum::MPoly| {
        a.square() + b.square() + c.square() - a.clone() * b.clone() * c.clone() - Ring::from_i64(2)
    };
    let want = kappa(&x, &y, &z);
    let tris = farey_triangles(6);
    for [a, b, c] in &tris {
        let got = kappa(
            &trace_polynomial(*a),
            &trace_polynomial(*b),
            &trace_polynomial(*c),
        );
        check(got == want, format!("triangle {a}, {b}, {c}"))?;
    }
    Ok(format!("{} triangles", tris.len()))
}

fn dichotomy_examples() -> Outcome {
    let f: TorusPoly = "X - Y".parse().unwrap();
    let prob = LatticePointProblem::new(f.clone(), q(4, 1), q(8, 1)).unwrap();
    let res = classify_dichotomy(&prob, 50);
    let Dichotomy::SubtorusTranslate {
        invariant_element, ..
    } = &res.tag
    else {
        return Err(format!("X - Y: {:?}", res.tag));
    };
    check(
        *invariant_element == (q(64, 1), q(64, 1)),
        format!("invariant element {invariant_element:?}"),
    )?;
    // (64X) − (64Y) = 64·(X − Y)
    let scaled = f.scale_vars(&q(64, 1), &q(64, 1));
    check(
        scaled == f.clone() * TorusPoly::constant(q(64, 1)),
        "scaling does not preserve X - Y",
    )?;
    check(
        preserves_curve(&f, invariant_element),
        "preserves_curve disagrees",
    )?;

    let g: TorusPoly = "X + Y - 3".parse().unwrap();
    let prob = LatticePointProblem::new(g, q(2, 1), q(5, 1)).unwrap();
    let res = classify_dichotomy(&prob, 50);
    let mut scan = Vec::new();
    for m in 0..=50u32 {
        for n in 0..=50u32 {
            if BigInt::from(2).pow(m) + BigInt::from(5).pow(n) == BigInt::from(3) {
                scan.push((m, n));
            }
        }
    }
    check(
        res.tag == Dichotomy::Finite,
        format!("X + Y - 3: {:?}", res.tag),
    )?;
    check(
        res.solutions == scan && scan == vec![(1, 0)],
        format!("solutions {:?} vs scan {scan:?}", res.solutions),
    )?;
    Ok("subtorus (64,64); finite {(1,0)}".into())
}

fn constrained_solve_end_to_end() -> Outcome {
    let h: i128 = 10_000;
    let (doc, code) = run_args([
        "markoff",
        "solve",
        "--surface",
        "raw:1,0,0,0,0",
        "--constraint",
        "x+y",
        "--H",
        "10000",
    ]);
    check(code == 0, format!("solve exited with {code}: {doc}"))?;
    let got: BTreeSet<[i64; 3]> = doc["result"]["finite_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            [
                p["x"].as_i64().unwrap(),
                p["y"].as_i64().unwrap(),
                p["z"].as_i64().unwrap(),
            ]
        })
        .collect();
    // y = −x: z² − x²·z + 2x² = 0
    let mut want = BTreeSet::new();
    for x in -h..=h {
        for z in int_quadratic_roots(-x * x, 2 * x * x) {
            if z.abs() <= h {
                want.insert([x as i64, -x as i64, z as i64]);
            }
        }
    }
    check(
        got == want,
        format!("solve {got:?} vs brute force {want:?}"),
    )?;
    Ok(format!("{} points", got.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("markoff orbit unity", markoff_orbit_unity),
        ("involution and conservation", involution_and_conservation),
        (
            "fiber classification vs parametrization",
            fiber_vs_parametrization,
        ),
        ("twist finite generation", twist_finite_generation),
        ("translation length criterion", translation_length_criterion),
        (
            "constant trace slopes on polynomial families",
            constant_slopes_on_families,
        ),
        ("fricke identity on farey triangles", fricke_identity),
        ("lattice point dichotomy", dichotomy_examples),
        ("integral points on x + y = 0", constrained_solve_end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
