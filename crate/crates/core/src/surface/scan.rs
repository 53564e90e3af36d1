//! Box enumeration of integral points.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::descent::{best_move, canonical_image};
use super::{Axis, MarkoffSurface, SurfacePoint};
use crate::error::{Error, Result};
use crate::exactnum::exact_sqrt;

/// Integer values of coordinate `axis` that complete `p` (whose `axis`
/// entry is ignored) to a point of `s`.
pub fn complete_point(s: &MarkoffSurface, axis: Axis, p: &SurfacePoint<BigInt>) -> Vec<BigInt> {
    let (u, v) = axis.others();
    let (pu, pv) = (p.get(u), p.get(v));
    // w² + b·w + c = 0
    let uv = pu * pv;
    let b = if s.eps() > 0 { uv } else { -uv } - s.lin(axis);
    let c = pu * pu + pv * pv - s.lin(u) * pu - s.lin(v) * pv - s.d();
    let disc = &b * &b - 4 * &c;
    let Some(r) = exact_sqrt(&disc) else {
        return vec![];
    };
    let mut out = Vec::new();
    for num in [-&b - &r, -&b + &r] {
        if (&num % 2u32).is_zero() {
            out.push(num / 2);
        }
    }
    out.dedup();
    out
}

struct Small {
    eps: i128,
    lin: [i128; 3],
    d: i128,
}

impl Small {
    fn new(s: &MarkoffSurface, h: i64) -> Option<Small> {
        const LIM: i128 = 1 << 40;
        if h > 1 << 24 {
            return None;
        }
        let get = |n: &BigInt| n.to_i128().filter(|v| v.abs() <= LIM);
        Some(Small {
            eps: s.eps() as i128,
            lin: [get(s.a())?, get(s.b())?, get(s.c())?],
            d: get(s.d())?,
        })
    }

    /// Integer values of coordinate `axis` completing `p`.
    fn roots(&self, axis: Axis, p: &[i128; 3]) -> Vec<i128> {
        let (u, v) = axis.others();
        let (pu, pv) = (p[u.index()], p[v.index()]);
        let b = self.eps * pu * pv - self.lin[axis.index()];
        let c = pu * pu + pv * pv - self.lin[u.index()] * pu - self.lin[v.index()] * pv - self.d;
        let disc = b * b - 4 * c;
        if disc < 0 {
            return vec![];
        }
        let r = disc.sqrt();
        if r * r != disc {
            return vec![];
        }
        let mut out = Vec::new();
        for num in [-b - r, -b + r] {
            if num % 2 == 0 {
                out.push(num / 2);
            }
            if r == 0 {
                break;
            }
        }
        out
    }

    fn z_roots(&self, x: i128, y: i128, h: i128, out: &mut Vec<[i128; 3]>) {
        for z in self.roots(Axis::Z, &[x, y, 0]) {
            if z.abs() <= h {
                out.push([x, y, z]);
            }
        }
    }
}

/// Every integral point of `s` with `max(|x|,|y|,|z|) ≤ h`, sorted.
///
/// The scan runs over `(x, y)` in parallel and solves for `z`.
pub fn integral_points_in_box(s: &MarkoffSurface, h: i64) -> Vec<SurfacePoint<BigInt>> {
    let mut pts: Vec<SurfacePoint<BigInt>> = match Small::new(s, h) {
        Some(small) => {
            let h = h as i128;
            (-h..=h)
                .into_par_iter()
                .flat_map_iter(|x| {
                    let mut out = Vec::new();
                    for y in -h..=h {
                        small.z_roots(x, y, h, &mut out);
                    }
                    out
                })
                .map(|[x, y, z]| SurfacePoint([x.into(), y.into(), z.into()]))
                .collect()
        }
        None => {
            let hb = BigInt::from(h);
            (-h..=h)
                .into_par_iter()
                .flat_map_iter(|x| {
                    let mut out = Vec::new();
                    for y in -h..=h {
                        let p = SurfacePoint::from_i64(x, y, 0);
                        for z in complete_point(s, Axis::Z, &p) {
                            if z.abs() <= hb {
                                out.push(p.with(Axis::Z, z));
                            }
                        }
                    }
                    out
                })
                .collect()
        }
    };
    pts.sort();
    pts.dedup();
    pts
}

/// Integral points of `s` with coordinate `fixed` equal to `t`, coordinate
/// `scan` in `[-h, h]` and the remaining coordinate in `[-h, h]`; sorted.
pub(crate) fn line_scan(
    s: &MarkoffSurface,
    fixed: Axis,
    t: &BigInt,
    scan: Axis,
    h: i64,
) -> Vec<SurfacePoint<BigInt>> {
    let solve = Axis::ALL
        .into_iter()
        .find(|&a| a != fixed && a != scan)
        .unwrap();
    let hb = BigInt::from(h);
    let small = Small::new(s, h).zip(t.to_i128().filter(|v| v.abs() <= 1 << 24));
    let mut pts: Vec<SurfacePoint<BigInt>> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut out = Vec::new();
            match &small {
                Some((sm, t)) => {
                    let mut p = [0i128; 3];
                    p[fixed.index()] = *t;
                    p[scan.index()] = u as i128;
                    for w in sm.roots(solve, &p) {
                        if w.abs() <= h as i128 {
                            p[solve.index()] = w;
                            out.push(SurfacePoint(p.map(BigInt::from)));
                        }
                    }
                }
                None => {
                    let p = SurfacePoint::from_i64(0, 0, 0)
                        .with(fixed, t.clone())
                        .with(scan, u.into());
                    for w in complete_point(s, solve, &p) {
                        if w.abs() <= hb {
                            out.push(p.with(solve, w));
                        }
                    }
                }
            }
            out
        })
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// A descent-minimal point, with the trace coordinates that put it on a
/// parabolic fiber (empty for raw surfaces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPoint {
    pub point: SurfacePoint<BigInt>,
    pub parabolic: Vec<Axis>,
}

impl MinimalPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.to_json(),
            "parabolic_axes": self.parabolic.iter().map(|a| a.name()).collect::<Vec<_>>(),
        })
    }
}

pub fn is_minimal(s: &MarkoffSurface, p: &SurfacePoint<BigInt>) -> bool {
    best_move(s, p).is_none()
}

/// Descent-minimal integral points in the box of radius `h`, one per
/// symmetry class, sorted.
pub fn enumerate_minimal(s: &MarkoffSurface, h: i64) -> Result<Vec<MinimalPoint>> {
    if h < 1 {
        return Err(Error::precondition("height bound must be at least 1"));
    }
    let syms = s.symmetries();
    let mut reps: Vec<SurfacePoint<BigInt>> = integral_points_in_box(s, h)
        .into_par_iter()
        .filter(|p| is_minimal(s, p))
        .map(|p| canonical_image(&syms, &p).0)
        .collect();
    reps.sort();
    reps.dedup();
    Ok(reps
        .into_iter()
        .map(|point| MinimalPoint {
            parabolic: crate::fibers::parabolic_axes(s, &point),
            point,
        })
        .collect())
}
