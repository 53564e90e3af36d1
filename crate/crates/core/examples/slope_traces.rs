// Traces of simple closed curves on the once-punctured torus.
//
// $ cargo run --example slope_traces

use markoff::slopes::{farey_triangles, trace_of_slope, trace_polynomial, Slope};
use num_bigint::BigInt;

fn main() -> markoff::Result<()> {
    let t = [3, 3, 3].map(BigInt::from);
    for sl in Slope::up_to(3) {
        println!(
            "{sl:>5}  {:>6}  {}",
            trace_of_slope(sl, &t),
            trace_polynomial(sl)
        );
    }
    let [a, b, c] = farey_triangles(3)[5];
    println!("Farey triangle {a}, {b}, {c}");
    Ok(())
}
