// Certifies every builtin map and prints the verdict with its witness.
//
//     cargo run --example certify_builtins

use chaosnet::certify::{certify_devaney_chaos, IterationGraph};
use chaosnet::dynamics::BooleanMap;

pub fn main() {
    for name in chaosnet::dynamics::BUILTIN_NAMES {
        let f = BooleanMap::builtin(name).expect("builtin");
        let graph = IterationGraph::build(&f);
        let cert = certify_devaney_chaos(&f);
        print!(
            "{name:<5} N={} arcs={:<3} sccs={:<2} ",
            cert.n_cells,
            graph.arc_count(),
            cert.scc_count
        );
        match cert.witness {
            None => println!("chaotic"),
            Some((u, v)) => println!("not chaotic: no path from {u} to {v}"),
        }
    }
}
