// Points (x^m, y^n) on a curve in the two-dimensional torus.
//
// $ cargo run --example lattice_dichotomy

use markoff::exactnum::int;
use markoff::torus_lattice::{classify_dichotomy, multiplicative_dependence, LatticePointProblem};

fn main() -> markoff::Result<()> {
    let p = LatticePointProblem::new("X - Y".parse()?, int(4), int(8))?;
    println!("{}", classify_dichotomy(&p, 30).to_json());
    if let Some((v, a, b)) = multiplicative_dependence(&int(4), &int(8))? {
        println!("4 = {v}^{a}, 8 = {v}^{b}");
    }

    let p = LatticePointProblem::new("X + Y - 3".parse()?, int(2), int(5))?;
    println!("{}", classify_dichotomy(&p, 50).to_json());
    Ok(())
}
