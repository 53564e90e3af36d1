// Translation lengths on the Bruhat-Tits tree and nonarchimedean systoles.
//
// $ cargo run --example tree_lengths

use markoff::exactnum::{parse_rational, Place, RatFunc, Ring};
use markoff::slopes::{systole_search, translation_length, Mat2, Rep11};
use num_rational::BigRational;

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn main() -> markoff::Result<()> {
    let two = Place::padic(2)?;
    let g = Mat2([[q("2"), q("0")], [q("0"), q("1/2")]]);
    println!("diag(2, 1/2) at p=2: {}", translation_length(&g, &two)?);

    let rep = Rep11::new(g, Mat2([[q("1"), q("1/2")], [q("0"), q("1")]]))?;
    let hit = systole_search(&rep.trace_triple(), &two, 20)?;
    println!("systole {}", hit.to_json(|r| r.to_string()));

    let t = RatFunc::var();
    let one = RatFunc::from_i64(1);
    let h = Mat2([[t.clone(), one.clone()], [-one, RatFunc::from_i64(0)]]);
    println!(
        "[[T,1],[-1,0]] at T=oo: {}",
        translation_length(&h, &Place::Infinity)?
    );
    Ok(())
}
