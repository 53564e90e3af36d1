//! Points with coordinates in the ring of integers of `Q(√−d)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::QuadInt;
use crate::surface::{MarkoffSurface, SurfacePoint, Sym};

/// Element of `Z[√−d]` written as `(r, s)`; an element of `O_d` is stored
/// doubled, so that half-basis elements stay integral.
type Pair = (i128, i128);

fn mul(d: i128, a: Pair, b: Pair) -> Pair {
    (a.0 * b.0 - d * a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn add(a: Pair, b: Pair) -> Pair {
    (a.0 + b.0, a.1 + b.1)
}

fn scale(k: i128, a: Pair) -> Pair {
    (k * a.0, k * a.1)
}

/// Points of `s` with every coordinate in `O_d` and every basis
/// coordinate bounded by `h` in absolute value, one per class under surface
/// symmetries and complex conjugation, sorted.
pub fn points_over_od(
    s: &MarkoffSurface,
    d: &BigInt,
    h: i64,
) -> Result<Vec<SurfacePoint<QuadInt>>> {
    if h < 0 {
        return Err(Error::precondition("height bound must be nonnegative"));
    }
    QuadInt::new(d, 0.into(), 0.into())?;
    let too_big = || Error::bound("coefficient", "O_d scan needs small coefficients");
    let small = |n: &BigInt| {
        n.to_i128()
            .filter(|v| v.abs() < 1 << 40)
            .ok_or_else(too_big)
    };
    let (di, a, b, c, dd) = (
        small(d)?,
        small(s.a())?,
        small(s.b())?,
        small(s.c())?,
        small(s.d())?,
    );
    if h > 1 << 12 {
        return Err(too_big());
    }
    let half = di % 4 == 3;
    let mut elems: Vec<(Pair, QuadInt)> = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            if let Ok(q) = QuadInt::new(d, x.into(), y.into()) {
                let doubled = if half {
                    (x as i128, y as i128)
                } else {
                    (2 * x as i128, 2 * y as i128)
                };
                elems.push((doubled, q));
            }
        }
    }
    let eps = s.eps() as i128;
    // with X = 2x etc.: 8·F = 2(X² + Y² + Z²) + ε·XYZ − 4(aX + bY + cZ) − 8d
    let syms = s.symmetries();
    let mut found: Vec<SurfacePoint<QuadInt>> = elems
        .par_iter()
        .flat_map_iter(|(xx, xq)| {
            let mut out = Vec::new();
            for (yy, yq) in &elems {
                let xy = mul(di, *xx, *yy);
                let base = add(
                    scale(2, add(mul(di, *xx, *xx), mul(di, *yy, *yy))),
                    scale(-4, add(scale(a, *xx), scale(b, *yy))),
                );
                let base = add(base, (-8 * dd, 0));
                for (zz, zq) in &elems {
                    let v = add(
                        add(base, scale(2, mul(di, *zz, *zz))),
                        add(scale(eps, mul(di, xy, *zz)), scale(-4 * c, *zz)),
                    );
                    if v == (0, 0) {
                        out.push(SurfacePoint([xq.clone(), yq.clone(), zq.clone()]));
                    }
                }
            }
            out
        })
        .collect();
    found = found.into_iter().map(|p| class_rep(&syms, &p)).collect();
    found.sort();
    found.dedup();
    Ok(found)
}

fn apply(g: &Sym, p: &SurfacePoint<QuadInt>) -> SurfacePoint<QuadInt> {
    SurfacePoint(std::array::from_fn(|i| {
        let c = p.0[g.perm[i]].clone();
        if g.signs[i] < 0 {
            QuadInt {
                a: -c.a,
                b: -c.b,
                ..c
            }
        } else {
            c
        }
    }))
}

fn class_rep(syms: &[Sym], p: &SurfacePoint<QuadInt>) -> SurfacePoint<QuadInt> {
    let conj = SurfacePoint(p.0.clone().map(|c| c.conj()));
    syms.iter()
        .flat_map(|g| [apply(g, p), apply(g, &conj)])
        .min()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_surface(s: &MarkoffSurface, p: &SurfacePoint<QuadInt>) -> bool {
        s.contains(&SurfacePoint(p.0.clone().map(|c| c.to_elt())))
    }

    #[test]
    fn gaussian_points_markoff() {
        let s: MarkoffSurface = "torus:-2".parse().unwrap();
        let pts = points_over_od(&s, &1.into(), 3).unwrap();
        assert!(pts.iter().all(|p| on_surface(&s, p)));
        let zero = QuadInt::new(&1.into(), 0.into(), 0.into()).unwrap();
        assert!(pts.contains(&SurfacePoint([zero.clone(), zero.clone(), zero])));
        let three = |v: i64| QuadInt::new(&1.into(), v.into(), 0.into()).unwrap();
        // (−3, 3, 3) is stored under its smallest symmetric image
        assert!(pts.iter().any(|p| p
            .0
            .iter()
            .all(|c| c.b == BigInt::from(0) && (c.a == three(3).a || c.a == three(-3).a))));
    }

    #[test]
    fn matches_brute_force() {
        for name in ["torus:2", "torus:-2", "sphere:1,0,1,0"] {
            let s: MarkoffSurface = name.parse().unwrap();
            for d in [1, 2, 3] {
                let d = BigInt::from(d);
                let elems: Vec<QuadInt> = (-2..=2)
                    .flat_map(|a| (-2..=2).map(move |b| (a, b)))
                    .filter_map(|(a, b)| QuadInt::new(&d, a.into(), b.into()).ok())
                    .collect();
                let syms = s.symmetries();
                let mut want = Vec::new();
                for x in &elems {
                    for y in &elems {
                        for z in &elems {
                            let p = SurfacePoint([x.clone(), y.clone(), z.clone()]);
                            if on_surface(&s, &p) {
                                want.push(class_rep(&syms, &p));
                            }
                        }
                    }
                }
                want.sort();
                want.dedup();
                assert_eq!(points_over_od(&s, &d, 2).unwrap(), want, "{name} d={d}");
            }
        }
    }

    #[test]
    fn half_basis_and_zero_box() {
        let s: MarkoffSurface = "torus:-2".parse().unwrap();
        let pts = points_over_od(&s, &3.into(), 0).unwrap();
        assert_eq!(pts.len(), 1);
        let pts = points_over_od(&s, &3.into(), 2).unwrap();
        assert!(pts.iter().all(|p| on_surface(&s, p)));
        assert!(points_over_od(&s, &4.into(), 2).is_err());
    }
}
