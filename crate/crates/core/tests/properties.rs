use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use sinr_diagram::algebra::{sturm_count, to_rational, to_rational_point, ExactNetwork, RationalUniPoly};
use sinr_diagram::diagram1d::reception_intervals;
use sinr_diagram::geometry::two_station_config;
use sinr_diagram::model::transform_network;
use sinr_diagram::sinr::{is_heard, sinr, sinr_reciprocal};
use sinr_diagram::{Network, SimilarityTransform};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn separated(points: &[Vec<f64>], min: f64) -> bool {
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let d: f64 = points[a].iter().zip(&points[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            if d < min {
                return false;
            }
        }
    }
    true
}

/// Stations on a 1/8 lattice so every parameter is an exact binary value.
fn network_2d(max_n: usize) -> impl Strategy<Value = Network> {
    (
        prop::collection::vec(((-32i32..=32, -32i32..=32), 1u32..=16), 2..=max_n),
        0u32..=4,
        4u32..=12,
        prop::bool::ANY,
    )
        .prop_filter_map("stations too close", |(st, noise, beta, wide)| {
            let pos: Vec<Vec<f64>> = st.iter().map(|((x, y), _)| vec![*x as f64 / 8.0, *y as f64 / 8.0]).collect();
            if !separated(&pos, 0.25) {
                return None;
            }
            let parts: Vec<(Vec<f64>, f64)> = pos.into_iter().zip(st.iter().map(|(_, w)| *w as f64 / 4.0)).collect();
            let alpha = if wide { 4.0 } else { 2.0 };
            Network::from_parts(2, &parts, noise as f64 / 8.0, beta as f64 / 4.0, alpha).ok()
        })
}

fn network_1d() -> impl Strategy<Value = Network> {
    (prop::collection::vec((-80i32..=80, 1u32..=16), 2..=6), 0u32..=2, 4u32..=12).prop_filter_map(
        "stations too close",
        |(st, noise, beta)| {
            let pos: Vec<Vec<f64>> = st.iter().map(|(x, _)| vec![*x as f64 / 8.0]).collect();
            if !separated(&pos, 0.25) {
                return None;
            }
            let parts: Vec<(Vec<f64>, f64)> = pos.into_iter().zip(st.iter().map(|(_, w)| *w as f64 / 4.0)).collect();
            Network::from_parts(1, &parts, noise as f64 / 20.0, beta as f64 / 4.0, 2.0).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_counts_known_roots(
        roots in prop::collection::btree_set(-20i64..=20, 0..7),
        a in -25i64..=25,
        len in 1i64..=30,
        extra in 0i64..=3,
    ) {
        // Irreducible factors (x^2 + extra + 1) add no real roots.
        let rs: Vec<BigRational> = roots.iter().map(|&r| q(r)).collect();
        let mut f = RationalUniPoly::from_roots(&rs);
        let quad = RationalUniPoly::new(vec![q(extra + 1), q(0), q(1)]);
        f = &f * &quad;
        // A repeated root must still be counted once.
        if let Some(&r) = roots.iter().next() {
            f = &f * &RationalUniPoly::from_roots(&[q(r)]);
        }
        let b = a + len;
        let expected = roots.iter().filter(|&&r| r > a && r <= b).count();
        prop_assert_eq!(sturm_count(&f, &q(a), &q(b)).unwrap(), expected);
    }

    #[test]
    fn reciprocal_is_inverse(net in network_2d(5), x in -6.0f64..6.0, y in -6.0f64..6.0, i in 0usize..5) {
        let i = i % net.n();
        let p = [x, y];
        prop_assume!(net.station_at(&p).is_none());
        let s = sinr(&net, i, &p).unwrap();
        let r = sinr_reciprocal(&net, i, &p).unwrap();
        prop_assert!((s * r - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn similarity_preserves_sinr(
        net in network_2d(5),
        theta in 0.0f64..std::f64::consts::TAU,
        scale in 0.25f64..4.0,
        t in (-10.0f64..10.0, -10.0f64..10.0),
        p in (-6.0f64..6.0, -6.0f64..6.0),
    ) {
        let f = SimilarityTransform::translation(vec![t.0, t.1])
            .compose(&SimilarityTransform::scaling(2, scale))
            .compose(&SimilarityTransform::rotation_2d(theta));
        let moved = transform_network(&net, &f).unwrap();
        let p = [p.0, p.1];
        prop_assume!(net.station_at(&p).is_none());
        let fp = f.apply(&p);
        for i in 0..net.n() {
            let a = sinr(&net, i, &p).unwrap();
            let b = sinr(&moved, i, &fp).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-300), "{} vs {}", a, b);
        }
    }

    #[test]
    fn characteristic_sign_matches_reception(net in network_2d(4), gx in -48i32..=48, gy in -48i32..=48) {
        let p = [gx as f64 / 8.0 + 1.0 / 64.0, gy as f64 / 8.0 + 1.0 / 64.0];
        prop_assume!(net.station_at(&p).is_none());
        let x = ExactNetwork::new(&net).unwrap();
        let pr = to_rational_point(&p).unwrap();
        for i in 0..net.n() {
            let v = sinr(&net, i, &p).unwrap();
            if (v / net.beta - 1.0).abs() < 1e-9 {
                continue;
            }
            let f = x.characteristic_at(i, &pr, &x.beta);
            prop_assert_eq!(!f.is_positive(), is_heard(&net, i, &p), "station {} sinr {}", i, v);
        }
    }

    #[test]
    fn reception_intervals_are_disjoint(net in network_1d()) {
        let mut all: Vec<(f64, f64, usize)> = Vec::new();
        for i in 0..net.n() {
            let set = reception_intervals(&net, i).unwrap();
            let own = to_rational(net.pos(i)[0]).unwrap();
            prop_assert!(set.contains(&own), "station {} outside its own zone", i);
            for w in set.intervals.windows(2) {
                prop_assert!(w[0].hi.approx() < w[1].lo.approx());
            }
            for iv in &set.intervals {
                all.push((iv.lo.approx(), iv.hi.approx(), i));
            }
        }
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in all.windows(2) {
            prop_assert!(w[0].1 <= w[1].0 + 1e-9, "zones of {} and {} overlap", w[0].2, w[1].2);
        }
    }

    #[test]
    fn two_station_closed_form(
        d in 0.25f64..4.0,
        p1 in 0.25f64..4.0,
        p2 in 0.25f64..4.0,
        beta in 1.0f64..3.0,
        pts in prop::collection::vec((-12.0f64..12.0, -12.0f64..12.0), 50),
    ) {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], p1), (vec![d, 0.0], p2)], 0.0, beta, 2.0).unwrap();
        let cfg = two_station_config(&net, 0, true).unwrap();
        for (x, y) in pts {
            let p = [x, y];
            if cfg.signed_distance(&p).abs() < 1e-9 || net.station_at(&p).is_some() {
                continue;
            }
            prop_assert_eq!(cfg.contains(&p), is_heard(&net, 0, &p), "point {:?}", p);
        }
    }
}
