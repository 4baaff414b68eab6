use std::sync::Arc;

use proptest::prelude::*;
use tadic_core::arith::{one_plus_t_pow, CycRing, FieldCtx, PadicRing, Ring, Zmod, ZqRing};
use tadic_core::parse::parse_laurent;
use tadic_core::polytope::DegreeData;
use tadic_core::series::{NewtonPolygon, SeriesRing, SlopeSeries, Tail, Valuation, Q};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_series_is_a_homomorphism(p in prime(), t1 in any::<u64>(), t2 in any::<u64>()) {
        let zm = Zmod::new(p, 10).unwrap();
        let (t1, t2) = (zm.reduce_u64(t1), zm.reduce_u64(t2));
        let (out, a) = one_plus_t_pow(&zm, t1, 12).unwrap();
        let (_, b) = one_plus_t_pow(&zm, t2, 12).unwrap();
        let (_, c) = one_plus_t_pow(&zm, zm.add(t1, t2), 12).unwrap();
        prop_assert_eq!(SeriesRing::new(out, 12).mul(&a, &b), c);
    }

    #[test]
    fn teichmuller_is_multiplicative(i in 0u64..80, j in 0u64..80, (p, a) in prop::sample::select(vec![(2u64, 3u32), (3, 2), (5, 2), (7, 1)])) {
        let ctx = Arc::new(FieldCtx::new(p, a).unwrap());
        let zq = ZqRing::new(ctx.clone(), 8).unwrap();
        let (x, y) = (ctx.exp(i), ctx.exp(j));
        let prod = zq.mul(&zq.teichmuller(x), &zq.teichmuller(y));
        prop_assert_eq!(prod, zq.teichmuller(ctx.mul(x, y)));
    }

    #[test]
    fn cyclotomic_valuation_is_additive(p in prime(), m in 1u32..=2, x in prop::collection::vec(any::<u64>(), 1..4), y in prop::collection::vec(any::<u64>(), 1..4)) {
        let ring = CycRing::new(p, m, 6).unwrap();
        let zm = ring.scalars();
        let mut a = ring.zero();
        let mut b = ring.zero();
        for (i, v) in x.iter().enumerate().take(a.len()) { a[i] = zm.reduce_u64(*v); }
        for (i, v) in y.iter().enumerate().take(b.len()) { b[i] = zm.reduce_u64(*v); }
        if let (Some(u), Some(v)) = (ring.ord(&a), ring.ord(&b)) {
            if u + v < ring.ord_cap() {
                prop_assert_eq!(ring.ord(&ring.mul(&a, &b)), Some(u + v));
            }
        }
    }

    #[test]
    fn newton_polygon_is_convex_and_below_points(vals in prop::collection::vec(0i64..30, 2..10)) {
        let mut vals = vals;
        vals[0] = 0;
        let pts: Vec<Valuation> = vals.iter().map(|&v| Valuation::Exact(Q::from(v))).collect();
        let np = NewtonPolygon::from_valuations(&pts, Tail::Vanishing);
        let sides = np.sides();
        for w in sides.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for (x, v) in vals.iter().enumerate() {
            prop_assert!(np.eval(x as i64).unwrap() <= Q::from(*v));
        }
        prop_assert_eq!(np.certified_upto, np.end());
    }

    #[test]
    fn slope_series_round_trips(slopes in prop::collection::vec((0i64..12, 1i64..4, 1u64..4), 1..5)) {
        let list: Vec<(Q, u64)> = slopes.iter().map(|&(n, d, m)| (Q::new(n, d), m)).collect();
        let s = SlopeSeries::from_slopes(&list);
        prop_assert_eq!(SlopeSeries::from_polygon(&s.to_polygon(), true), s.clone());
        prop_assert_eq!(s.mul(&SlopeSeries::one()), s.clone());
    }

    #[test]
    fn slope_series_product_commutes(a in prop::collection::vec((0i64..6, 1u64..3), 1..4), b in prop::collection::vec((0i64..6, 1u64..3), 1..4)) {
        let sa = SlopeSeries::from_slopes(&a.iter().map(|&(n, m)| (Q::new(n, 2), m)).collect::<Vec<_>>());
        let sb = SlopeSeries::from_slopes(&b.iter().map(|&(n, m)| (Q::new(n, 3), m)).collect::<Vec<_>>());
        let ab = sa.mul(&sb);
        prop_assert_eq!(&ab, &sb.mul(&sa));
        prop_assert_eq!(ab.total_multiplicity(), sa.total_multiplicity() * sb.total_multiplicity());
    }

    #[test]
    fn hodge_polygon_scales(d in 1i64..6, p in prime(), a in 1u32..3, k in 0i64..8) {
        let ctx = Arc::new(FieldCtx::new(p, a).unwrap());
        let f = parse_laurent(&format!("x1^{d}"), &ctx, None).unwrap();
        let dd = DegreeData::new(&f).unwrap();
        let hp = dd.hodge_polygon(p, a, k);
        let scaled = dd.absolute_hodge_polygon(k).rescale(Q::from(a as i64 * (p as i64 - 1)));
        prop_assert_eq!(&hp, &scaled);
        let sides = hp.sides();
        for w in sides.windows(2) {
            prop_assert!(w[0].0 <= w[1].0);
        }
    }

    #[test]
    fn parser_accepts_what_it_prints(e1 in -4i64..5, e2 in -4i64..5, c in 1u64..7) {
        prop_assume!(e1 != 0 || e2 != 0);
        let ctx = Arc::new(FieldCtx::new(7, 1).unwrap());
        let text = format!("{c}*x1^{e1}*x2^{e2} + x1");
        if let Ok(f) = parse_laurent(&text, &ctx, Some(2)) {
            let expected = if e1 == 1 && e2 == 0 { 1 } else { 2 };
            prop_assert_eq!(f.len(), expected);
        }
    }
}
