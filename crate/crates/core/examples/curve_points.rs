// Integral points on curves in a surface.
//
// $ cargo run --release --example curve_points

use markoff::curves::{classify_curve, corollary5_solve, solve_curve_integral, CurveOnSurface};
use markoff::exactnum::{MPoly, Ring};
use markoff::surface::MarkoffSurface;

fn main() -> markoff::Result<()> {
    let s: MarkoffSurface = "torus:-2".parse()?;
    let (x, y, z) = (MPoly::var(0), MPoly::var(1), MPoly::var(2));

    let fiber = CurveOnSurface::implicit(&s, vec![x.clone() + MPoly::from_i64(3)])?;
    let sol = solve_curve_integral(&fiber, 1000, 20)?;
    println!(
        "x = -3: {}, {} orbit generator(s)",
        classify_curve(&fiber, 20)?.to_json(),
        sol.orbit_generators.len()
    );

    let section = CurveOnSurface::implicit(&s, vec![z - x.clone() - y.clone()])?;
    let sol = solve_curve_integral(&section, 10_000, 20)?;
    println!(
        "z = x + y: {} finite points, certified {}",
        sol.finite_points.len(),
        sol.certified
    );
    for p in &sol.finite_points {
        println!("  {p}");
    }

    let raw = MarkoffSurface::raw(1, 0.into(), 0.into(), 0.into(), 0.into())?;
    let sol = corollary5_solve(&raw, &[x + y], 10_000, 20)?;
    println!(
        "raw surface, x + y = 0: {:?}",
        sol.finite_points
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
