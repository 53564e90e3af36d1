use markoff::exactnum::Place;
use markoff::slopes::{trace_of_slope, translation_length, Mat2, Slope};
use markoff::surface::{descend, Axis, MarkoffSurface, SurfacePoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn torus_point(k: i64, x: i64, y: i64) -> Option<(MarkoffSurface, SurfacePoint<BigInt>)> {
    let s = MarkoffSurface::from_torus(&BigInt::from(k));
    let p = SurfacePoint::from_i64(x, y, 0);
    let z = markoff::surface::complete_point(&s, Axis::Z, &p)
        .into_iter()
        .next()?;
    Some((s, p.with(Axis::Z, z)))
}

proptest! {
    #[test]
    fn moves_are_involutions(k in -30i64..30, x in -50i64..50, y in -50i64..50, word in prop::collection::vec(0usize..3, 0..10)) {
        if let Some((s, mut p)) = torus_point(k, x, y) {
            for i in word {
                let q = s.vieta_move(Axis::from_index(i), &p).unwrap();
                prop_assert_eq!(s.vieta_move(Axis::from_index(i), &q).unwrap(), p.clone());
                p = q;
            }
            prop_assert!(s.contains(&p));
            let d = descend(&s, &p).unwrap();
            prop_assert!(s.contains(&d.point));
            prop_assert_eq!(d.word.apply(&s, &p).unwrap(), d.point);
        }
    }

    #[test]
    fn slope_traces_swap_with_reflection(p in -12i64..12, q in 1i64..12, t in prop::array::uniform3(-9i64..9)) {
        let sl = Slope::normalized(p, q);
        let t = t.map(BigInt::from);
        // swapping x and y reflects p/q to q/p
        let swapped = [t[1].clone(), t[0].clone(), t[2].clone()];
        let refl = Slope::normalized(sl.q(), sl.p());
        if sl.p() > 0 {
            prop_assert_eq!(trace_of_slope(sl, &t), trace_of_slope(refl, &swapped));
        }
    }

    #[test]
    fn diagonal_lengths(n in 1i64..200, d in 1i64..200, e in 0u32..6) {
        let a = BigRational::new(BigInt::from(n) * BigInt::from(2).pow(e), BigInt::from(d));
        let g = Mat2([[a.clone(), BigRational::zero()], [BigRational::zero(), a.recip()]]);
        let place = Place::padic(2).unwrap();
        let v = markoff::exactnum::padic_valuation(&a, &BigInt::from(2)).unwrap();
        prop_assert_eq!(translation_length(&g, &place).unwrap(), 2 * v.unsigned_abs());
        prop_assert!(g.det().is_one());
    }
}
