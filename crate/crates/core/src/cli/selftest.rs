//! Quick randomized invariant checks behind `markoff selftest`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::RunConfig;
use crate::error::Result;
use crate::exactnum::{Place, Ring, Valued};
use crate::fibers::{classify_fiber, fiber_family};
use crate::slopes::{farey_triangles, translation_length, Mat2, SlopeTraces};
use crate::surface::{descend, Axis, MarkoffSurface, SurfacePoint};

struct Suite {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Suite {
    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "checked": self.checked,
            "passed": self.failures.is_empty(),
            "failures": self.failures.iter().take(5).collect::<Vec<_>>(),
        })
    }
}

fn random_surface(rng: &mut ChaCha8Rng) -> MarkoffSurface {
    if rng.gen_bool(0.5) {
        MarkoffSurface::from_torus(&BigInt::from(rng.gen_range(-10..=10)))
    } else {
        MarkoffSurface::from_sphere(&[(); 4].map(|_| BigInt::from(rng.gen_range(-3..=3))))
    }
}

/// Random points reached from a point of `s` built by solving for `z`.
fn random_point(s: &MarkoffSurface, rng: &mut ChaCha8Rng) -> Option<SurfacePoint<BigInt>> {
    let (x, y) = (rng.gen_range(-30..=30i64), rng.gen_range(-30..=30i64));
    let z = crate::surface::complete_point(s, Axis::Z, &SurfacePoint::from_i64(x, y, 0))
        .into_iter()
        .next()?;
    let mut p = SurfacePoint::new(x.into(), y.into(), z);
    for _ in 0..rng.gen_range(0..8) {
        p = s.vieta_move_unchecked(Axis::from_index(rng.gen_range(0..3)), &p);
    }
    Some(p)
}

fn moves_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut suite = Suite {
        name: "vieta_moves",
        checked: 0,
        failures: vec![],
    };
    while suite.checked < 500 {
        let s = random_surface(rng);
        let Some(p) = random_point(&s, rng) else {
            continue;
        };
        suite.checked += 1;
        for axis in Axis::ALL {
            let q = s.vieta_move_unchecked(axis, &p);
            if !s.contains(&q) || s.vieta_move_unchecked(axis, &q) != p {
                suite
                    .failures
                    .push(format!("{} move {} at {p}", s.to_json(), axis.name()));
            }
        }
        match descend(&s, &p) {
            Ok(d) if d.norms.windows(2).all(|w| w[1] < w[0]) => {}
            _ => suite.failures.push(format!("descent from {p}")),
        }
    }
    suite
}

fn fiber_suite() -> Result<Suite> {
    let mut suite = Suite {
        name: "parabolic_fibers",
        checked: 0,
        failures: vec![],
    };
    for k in -6..=6 {
        let s = MarkoffSurface::from_torus(&BigInt::from(k));
        for t in -6..=6 {
            let t = BigRational::from_integer(t.into());
            let desc = classify_fiber(&s, Axis::X, &t)?;
            let fam = fiber_family(&s, Axis::X, &t);
            suite.checked += 1;
            if desc.class.is_parabolic() != fam.is_some() {
                suite.failures.push(format!("torus {k}, t = {t}"));
            }
        }
    }
    Ok(suite)
}

fn fricke_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut suite = Suite {
        name: "fricke_identity",
        checked: 0,
        failures: vec![],
    };
    let tris = farey_triangles(5);
    for _ in 0..20 {
        let t = [(); 3].map(|_| BigInt::from(rng.gen_range(-20..=20)));
        let k = t[0].square() + t[1].square() + t[2].square() - t[0].clone() * &t[1] * &t[2];
        let mut tr = SlopeTraces::new(t[0].clone(), t[1].clone(), t[2].clone());
        for [a, b, c] in &tris {
            let (a, b, c) = (tr.trace(*a), tr.trace(*b), tr.trace(*c));
            suite.checked += 1;
            if a.square() + b.square() + c.square() - a.clone() * &b * &c != k {
                suite.failures.push(format!("triple {t:?}"));
            }
        }
    }
    suite
}

fn tree_suite(rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut suite = Suite {
        name: "tree_lengths",
        checked: 0,
        failures: vec![],
    };
    for p in [2, 3, 5] {
        let place = Place::padic(p)?;
        for _ in 0..100 {
            let num = rng.gen_range(-40..=40i64);
            let den = rng.gen_range(1..=40i64);
            let a = BigRational::new(num.into(), den.into());
            let b = BigRational::from_integer(rng.gen_range(-9..=9).into());
            // [[a, b], [0, 1/a]] has trace a + 1/a.
            if a == BigRational::from_integer(0.into()) {
                continue;
            }
            let g = Mat2([
                [a.clone(), b],
                [BigRational::from_integer(0.into()), a.recip()],
            ]);
            let len = translation_length(&g, &place)?;
            let v = g.trace().valuation(&place)?;
            suite.checked += 1;
            if (len == 0) != v.is_none_or(|v| v >= 0) {
                suite
                    .failures
                    .push(format!("{p}-adic length of diag({a}, 1/{a})"));
            }
        }
    }
    Ok(suite)
}

/// Runs every suite; the document's `passed` field is the conjunction.
pub fn run(cfg: &RunConfig) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let suites = [
        moves_suite(&mut rng),
        fiber_suite()?,
        fricke_suite(&mut rng),
        tree_suite(&mut rng)?,
    ];
    Ok(json!({
        "passed": suites.iter().all(|s| s.failures.is_empty()),
        "suites": suites.iter().map(Suite::to_json).collect::<Vec<_>>(),
    }))
}
