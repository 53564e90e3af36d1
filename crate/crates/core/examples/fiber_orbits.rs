// Fibers of a trace coordinate: classification, twist orbits, parabolic families.
//
// $ cargo run --example fiber_orbits

use markoff::exactnum::int;
use markoff::fibers::{
    classify_fiber, fiber_generator_apply, fiber_integral_points, parametrize_parabolic_fiber,
};
use markoff::surface::{Axis, MarkoffSurface, SurfacePoint};
use num_bigint::BigInt;

fn main() -> markoff::Result<()> {
    let s = MarkoffSurface::from_torus(&BigInt::from(-2));
    let d = classify_fiber(&s, Axis::X, &int(3))?;
    println!("x = 3: {:?}, conic {}", d.class, d.conic);

    // trace coordinates
    let mut p = SurfacePoint::from_i64(3, 3, 3);
    for _ in 0..4 {
        p = fiber_generator_apply(&s, Axis::X, &p, 1)?;
        println!("  {p}");
    }

    let pts = fiber_integral_points(&s, Axis::X, &BigInt::from(3), 1000)?;
    println!(
        "{} fiber points in the box, {} orbit(s)",
        pts.points.len(),
        pts.orbits.len()
    );

    let sphere: MarkoffSurface = "sphere:1,1,1,1".parse()?;
    let fam = parametrize_parabolic_fiber(&sphere, Axis::Y, &int(2))?;
    println!("parabolic family {}", fam.to_json());
    Ok(())
}
