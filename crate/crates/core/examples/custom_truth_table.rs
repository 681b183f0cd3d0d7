// Loads a map from the truth-table text format, certifies it, and writes
// the graph of iterations as an arc list.
//
//     cargo run --example custom_truth_table

use chaosnet::certify::{certify_devaney_chaos, IterationGraph};
use chaosnet::dynamics::BooleanMap;

// x -> (not x2, x1): a rotation with one negation
const TABLE: &str = "\
N=2
00 -> 10
10 -> 11
01 -> 00
11 -> 01
";

pub fn main() {
    let f = BooleanMap::parse_table(TABLE)
        .expect("table")
        .with_name("rotate");
    let cert = certify_devaney_chaos(&f);
    println!("{} sha256={}", f.label(), &cert.table_hash[..16]);
    println!("chaotic: {}", cert.is_chaotic());

    let mut arcs = Vec::new();
    IterationGraph::build(&f)
        .write_arcs(&mut arcs)
        .expect("write");
    print!("{}", String::from_utf8(arcs).expect("utf8"));

    let round_trip = BooleanMap::parse_table(&f.to_table_string()).expect("table");
    assert_eq!(round_trip.table(), f.table());
}
