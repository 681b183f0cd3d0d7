use chaosnet::dynamics::{Configuration, PhasePoint, Strategy as Seq};
use chaosnet::metric::{phase_distance, phase_distance_parts, TruncationPolicy};
use proptest::prelude::*;

fn point(n: usize, x: u32, seed: u64, prefix: Vec<usize>) -> PhasePoint {
    let prefix = prefix.into_iter().map(|c| (c - 1) % n + 1).collect();
    let s = Seq::uniform_random(n, seed)
        .unwrap()
        .with_prefix(prefix)
        .unwrap();
    PhasePoint::new(s, Configuration::from_index(n, x & ((1 << n) - 1)).unwrap()).unwrap()
}

fn arb_point(n: usize) -> impl Strategy<Value = PhasePoint> {
    (
        any::<u32>(),
        any::<u64>(),
        proptest::collection::vec(1usize..=20, 0..8),
    )
        .prop_map(move |(x, seed, prefix)| point(n, x, seed, prefix))
}

fn triple() -> impl Strategy<Value = (PhasePoint, PhasePoint, PhasePoint)> {
    (1usize..=20).prop_flat_map(|n| (arb_point(n), arb_point(n), arb_point(n)))
}

proptest! {
    #[test]
    fn metric_axioms((p, q, r) in triple()) {
        let t = TruncationPolicy::default();
        let pq = phase_distance_parts(&p, &q, t).unwrap();
        let qp = phase_distance_parts(&q, &p, t).unwrap();
        prop_assert_eq!(pq, qp);
        prop_assert_eq!(phase_distance_parts(&p, &p, t).unwrap().scaled(), 0);
        let pr = phase_distance_parts(&p, &r, t).unwrap().scaled();
        let qr = phase_distance_parts(&q, &r, t).unwrap().scaled();
        prop_assert!(pr <= pq.scaled() + qr);
        prop_assert_eq!(pq.value().floor() as u32, pq.integer_part());
        prop_assert!(pq.fractional() < 1.0);
    }

    #[test]
    fn deeper_truncation_never_shrinks((p, q, _) in triple(), a in 1u32..=36, b in 1u32..=36) {
        let (lo, hi) = (a.min(b), a.max(b));
        let d_lo = phase_distance_parts(&p, &q, TruncationPolicy::new(lo).unwrap()).unwrap();
        let d_hi = phase_distance_parts(&p, &q, TruncationPolicy::new(hi).unwrap()).unwrap();
        prop_assert_eq!(d_lo.integer_part(), d_hi.integer_part());
        let (s_lo, s_hi) = (d_lo.fractional(), d_hi.fractional());
        prop_assert!(s_lo <= s_hi + 1e-15);
        prop_assert!(s_hi - s_lo <= TruncationPolicy::new(lo).unwrap().error_bound(p.n_cells()) + 1e-15);
    }
}

#[test]
fn rejects_bad_depth_and_dimension() {
    assert!(TruncationPolicy::new(0).is_err());
    assert!(TruncationPolicy::new(TruncationPolicy::MAX_DEPTH + 1).is_err());
    let p = point(3, 0, 1, vec![]);
    let q = point(4, 0, 1, vec![]);
    assert!(phase_distance(&p, &q, TruncationPolicy::default()).is_err());
}
