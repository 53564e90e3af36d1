// Points over rings of integers of imaginary quadratic fields.
//
// $ cargo run --example quadratic_points

use markoff::exactnum::{solve_lambda, QuadInt};
use markoff::fibers::points_over_od;
use markoff::surface::MarkoffSurface;
use num_bigint::BigInt;

fn main() -> markoff::Result<()> {
    let s: MarkoffSurface = "torus:-2".parse()?;
    for d in [1, 2, 3] {
        let pts = points_over_od(&s, &BigInt::from(d), 4)?;
        println!(
            "O_{d}: {} points with coordinates of height <= 4",
            pts.len()
        );
    }
    let w = QuadInt::new(&BigInt::from(3), 1.into(), 1.into())?;
    // half basis for d = 3 (mod 4): (a + b·sqrt(-d))/2
    println!("{w} has norm {}", w.to_elt().norm());
    println!(
        "lambda for t = 3: {}",
        solve_lambda(&markoff::exactnum::int(3))
    );
    Ok(())
}
