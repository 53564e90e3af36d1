// Markoff triples from the k = -2 torus surface.
//
// $ cargo run --example markoff_descent

use markoff::surface::{
    descend, enumerate_minimal, integral_points_in_box, orbit_equal, MarkoffSurface, SurfacePoint,
};
use num_bigint::BigInt;
use num_traits::Signed;

fn main() -> markoff::Result<()> {
    let s: MarkoffSurface = "torus:-2".parse()?;
    for m in enumerate_minimal(&s, 100)? {
        println!("minimal {} parabolic on {:?}", m.point, m.parabolic);
    }

    let p: SurfacePoint<BigInt> = "-3,15,39".parse()?;
    let d = descend(&s, &p)?;
    println!("{p} descends to {} via {}", d.point, d.word.to_json());

    let q: SurfacePoint<BigInt> = "-3,3,6".parse()?;
    if let Some(w) = orbit_equal(&s, &p, &q, 40)? {
        println!("{p} ~ {q} by {} moves", w.move_count());
    }

    // coordinates over 3 are Markoff numbers
    let mut nums: Vec<BigInt> = integral_points_in_box(&s, 300)
        .iter()
        .flat_map(|p| p.0.iter().map(|c| c.abs() / 3))
        .filter(|n| *n > BigInt::from(0))
        .collect();
    nums.sort();
    nums.dedup();
    println!("Markoff numbers up to 100: {nums:?}");
    Ok(())
}
