// Constructive evidence of chaos for the negation on 3 cells: steering
// between configurations, periodic points arbitrarily close to a given
// point, and divergence of nearby orbits.
//
//     cargo run --example devaney_witnesses

use chaosnet::certify::{
    estimate_sensitivity, period_of, periodic_point_near, steer, IterationGraph,
};
use chaosnet::dynamics::{BooleanMap, Configuration, PhasePoint, Strategy};
use chaosnet::metric::{phase_distance, TruncationPolicy};

pub fn main() {
    let f = BooleanMap::builtin("f0_2").expect("builtin");
    let graph = IterationGraph::build(&f);

    let from: Configuration = "000".parse().expect("bits");
    let to: Configuration = "110".parse().expect("bits");
    let path = steer(&graph, from, to).expect("dims").expect("reachable");
    println!("steer {from} -> {to}: cells {path:?}");

    let p =
        PhasePoint::new(Strategy::uniform_random(3, 5).expect("strategy"), from).expect("point");
    for k in [1, 3, 6] {
        let q = periodic_point_near(&graph, &p, k).expect("periodic point");
        let d = phase_distance(&p, &q, TruncationPolicy::default()).expect("distance");
        println!(
            "k={k}: period {:>2}, distance {d:.2e} < 1e-{k}",
            period_of(&q).expect("periodic")
        );
    }

    let est = estimate_sensitivity(&f, 50, 40, 1).expect("probes");
    println!(
        "sensitivity: {}/{} probes diverged, max d_e = {}",
        est.diverged_count(),
        est.probes,
        est.max_divergence
    );
}
