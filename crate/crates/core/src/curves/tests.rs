use super::*;
use crate::exactnum::{int, parse_expr};
use crate::surface::MarkoffSurface;

fn torus(k: i64) -> MarkoffSurface {
    MarkoffSurface::from_torus(&k.into())
}

fn poly(s: &str) -> MPoly {
    let e = parse_expr(s).unwrap();
    e.eval(
        &|v| ["x", "y", "z"].iter().position(|n| *n == v).map(MPoly::var),
        &|_, _| None,
    )
    .unwrap()
}

fn rf(coeffs: &[i64]) -> RatFunc {
    RatFunc::from_poly(Poly::new(coeffs.iter().map(|&c| int(c)).collect()))
}

/// `(2, T, T)` on `k = 2`, written in the canonical chart.
fn parabolic_family() -> CurveOnSurface {
    let s = torus(2);
    CurveOnSurface::parametrized(&s, SurfacePoint([rf(&[-2]), rf(&[0, 1]), rf(&[0, 1])])).unwrap()
}

/// `(λ, λs, λ(1 + s))` with `λ = −(2s² + 2s + 2)/(s² + s)`: the plane
/// section `z = x + y` of the `k = −2` surface.
fn plane_section() -> CurveOnSurface {
    let lam = RatFunc::new(
        Poly::new(vec![int(-2), int(-2), int(-2)]),
        Poly::new(vec![int(0), int(1), int(1)]),
    )
    .unwrap();
    let p = SurfacePoint([lam.clone(), lam.clone() * rf(&[0, 1]), lam * rf(&[1, 1])]);
    CurveOnSurface::parametrized(&torus(-2), p).unwrap()
}

#[test]
fn reduction_mod_surface() {
    let s = torus(-2);
    assert!(is_multiple_of_surface(&s, &s.polynomial()));
    assert!(is_multiple_of_surface(
        &s,
        &(s.polynomial() * poly("x + z^2"))
    ));
    assert!(!is_multiple_of_surface(&s, &poly("z^3 - x")));
    assert!(CurveOnSurface::implicit(&s, vec![s.polynomial()]).is_err());
}

#[test]
fn classify_examples() {
    let s = torus(-2);
    let fiber = CurveOnSurface::implicit(&s, vec![poly("x + 3")]).unwrap();
    assert_eq!(
        classify_curve(&fiber, 5).unwrap(),
        CurveClass::Integrable {
            trace: TraceFunction::Slope(Slope::INFINITY),
            t: int(3)
        }
    );
    let fam = parabolic_family();
    assert!(
        matches!(classify_curve(&fam, 5).unwrap(), CurveClass::Integrable { t, .. } if t == int(2))
    );
    let sphere = MarkoffSurface::from_sphere(&[0.into(), 0.into(), 0.into(), 0.into()]);
    let c = CurveOnSurface::implicit(&sphere, vec![poly("x + y")]).unwrap();
    match classify_curve(&c, 5).unwrap() {
        CurveClass::Nonintegrable { checked, witnesses } => {
            assert_eq!(checked, 3);
            assert_eq!(witnesses.len(), 3);
            for w in witnesses {
                assert_ne!(w.values[0], w.values[1]);
            }
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        classify_curve(&plane_section(), 6).unwrap(),
        CurveClass::Nonintegrable { .. }
    ));
    let raw = MarkoffSurface::raw(1, 0.into(), 0.into(), 0.into(), 0.into()).unwrap();
    let c = CurveOnSurface::implicit(&raw, vec![poly("x + y")]).unwrap();
    assert_eq!(classify_curve(&c, 5), Err(Error::NoModuliInterpretation));
}

#[test]
fn witnesses_at_infinity() {
    // (2, T + 2, T) on k = 6, trace coordinates
    let s = torus(6).trace_form();
    let c = CurveOnSurface::parametrized(&s, SurfacePoint([rf(&[2]), rf(&[2, 1]), rf(&[0, 1])]))
        .unwrap();
    let w = infinity_witnesses(&c, 5).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(
        (w[0].place.clone(), w[0].trace.axis(), w[0].value.clone()),
        (Place::Infinity, Some(Axis::X), int(2))
    );

    let w = infinity_witnesses(&plane_section(), 6).unwrap();
    let places: Vec<Place> = w.iter().map(|w| w.place.clone()).collect();
    assert_eq!(
        places,
        vec![Place::Point(int(-1)), Place::Point(int(0)), Place::Infinity]
    );
    let axes: Vec<Option<Axis>> = w.iter().map(|w| w.trace.axis()).collect();
    assert_eq!(axes, vec![Some(Axis::Z), Some(Axis::Y), Some(Axis::X)]);
    // trace coordinates flip x on torus surfaces
    let values: Vec<BigRational> = w.iter().map(|w| w.value.clone()).collect();
    assert_eq!(values, vec![int(2), int(-2), int(2)]);
    for w in &w {
        assert!(w.valuation.is_none_or(|v| v >= 0));
    }
}

#[test]
fn parametrized_solve_matches_brute_force() {
    let c = plane_section();
    let s = &c.surface;
    let got = solve_curve_integral(&c, 60, 6).unwrap();
    assert!(got.certified);
    let h = 60;
    let mut brute = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                let p = SurfacePoint::from_i64(x, y, z);
                if z == x + y && s.contains(&p) {
                    brute.push(p);
                }
            }
        }
    }
    // the node at the origin has only irrational parameters
    brute.retain(|p| c.contains(p));
    let inside: Vec<_> = got
        .finite_points
        .iter()
        .filter(|p| p.0.iter().all(|v| v.abs() <= h.into()))
        .cloned()
        .collect();
    assert_eq!(inside, brute);
    assert_eq!(brute.len(), 3);

    // the implicit description agrees far out
    let imp = curve_points_in_box(s, &[poly("z - x - y")], 10_000).unwrap();
    let wide = solve_curve_integral(&c, 10_000, 6).unwrap();
    let on_param: Vec<_> = imp.into_iter().filter(|p| c.contains(p)).collect();
    let wide_in: Vec<_> = wide
        .finite_points
        .into_iter()
        .filter(|p| p.0.iter().all(|v| v.abs() <= 10_000.into()))
        .collect();
    assert_eq!(wide_in, on_param);
}

#[test]
fn fiber_curve_orbit() {
    let s = torus(-2);
    let c = CurveOnSurface::implicit(&s, vec![poly("x + 3")]).unwrap();
    let sol = solve_curve_integral(&c, 20, 5).unwrap();
    assert!(sol.certified);
    assert_eq!(sol.orbit_generators.len(), 1);
    let g = &sol.orbit_generators[0];
    assert_eq!(g.rep, SurfacePoint::from_i64(-3, 3, 3));
    assert_eq!(s.to_trace_coords(&g.rep), SurfacePoint::from_i64(3, 3, 3));
    assert!(sol.finite_points.is_empty());
    let brute: Vec<_> = curve_points_in_box(&s, &[poly("x + 3")], 20).unwrap();
    assert_eq!(sol.box_points(), brute);
    for n in -4..=4 {
        assert!(c.contains(&g.point(&s, n)));
    }
}

#[test]
fn families_for_polynomial_curves() {
    let sol = solve_curve_integral(&parabolic_family(), 10, 5).unwrap();
    assert!(sol.certified);
    assert_eq!(sol.families.len(), 1);
    assert_eq!(sol.families[0].0[1].to_text(), "T");
    // half-integer coefficients: integral only for even T
    let s = torus(2).trace_form();
    let half = RatFunc::from_poly(Poly::new(vec![int(0), crate::exactnum::rat(1, 2)]));
    let c = CurveOnSurface::parametrized(&s, SurfacePoint([rf(&[2]), half.clone(), half])).unwrap();
    let sol = solve_curve_integral(&c, 10, 5).unwrap();
    assert_eq!(sol.families.len(), 1);
    assert_eq!(sol.families[0].0[1].to_text(), "T");
}

#[test]
fn sphere_section_matches_brute_force() {
    let sphere = MarkoffSurface::from_sphere(&[0.into(), 0.into(), 0.into(), 0.into()]);
    let sol = corollary5_solve(&sphere, &[poly("x + y")], 100, 5).unwrap();
    assert!(!sol.certified);
    let mut brute = Vec::new();
    for x in -100i64..=100 {
        for z in -100i64..=100 {
            let p = SurfacePoint::from_i64(x, -x, z);
            if sphere.contains(&p) {
                brute.push(p);
            }
        }
    }
    assert_eq!(sol.finite_points, brute);
    assert!(brute.contains(&SurfacePoint::from_i64(0, 0, 2)));
}

#[test]
fn constrained_solve_dispatch() {
    let s = torus(-2);
    let none = corollary5_solve(&s, &[], 50, 5).unwrap();
    assert_eq!(none.minimal_points.len(), 2);
    let fib = corollary5_solve(&s, &[poly("x + 3")], 100, 5).unwrap();
    assert_eq!(fib.orbit_generators.len(), 1);
}

#[test]
fn od_points_on_a_section() {
    let s = torus(-2);
    let c = CurveOnSurface::implicit(&s, vec![poly("x")]).unwrap();
    let d = BigInt::from(1);
    let sol = solve_curve_od(&c, &d, 3).unwrap();
    let q = |a: i64, b: i64| crate::exactnum::QuadInt::new(&d, a.into(), b.into()).unwrap();
    assert!(sol
        .od_points
        .contains(&SurfacePoint([q(0, 0), q(1, 0), q(0, 1)])));
    for p in &sol.od_points {
        let e = SurfacePoint(p.0.clone().map(|v| v.to_elt()));
        assert!(s.contains(&e));
        assert!(e.0[0].is_zero());
    }
}
