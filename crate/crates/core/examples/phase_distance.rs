// Distances between phase points: the integer part counts differing cells,
// the fractional part encodes where the strategies first disagree.
//
//     cargo run --example phase_distance

use chaosnet::dynamics::{Configuration, PhasePoint, Strategy};
use chaosnet::metric::{phase_distance_parts, TruncationPolicy};

pub fn main() {
    let trunc = TruncationPolicy::default();
    let n = 3;
    let base = Strategy::uniform_random(n, 7).expect("strategy");
    let x: Configuration = "101".parse().expect("bits");
    let p = PhasePoint::new(base.clone(), x).expect("point");

    println!("S = {:?}...", base.take(10));
    for shared in [0, 1, 2, 4, 8] {
        let mut prefix = base.take(shared);
        prefix.push(base.term(shared + 1) % n + 1);
        let s = Strategy::uniform_random(n, 99)
            .expect("strategy")
            .with_prefix(prefix)
            .expect("prefix");
        let y = x.flipped(2).expect("cell");
        let q = PhasePoint::new(s, y).expect("point");
        let d = phase_distance_parts(&p, &q, trunc).expect("distance");
        println!(
            "shared terms {shared}: d = {:.16}  (d_e = {}, d_s = {:.3e})",
            d.value(),
            d.integer_part(),
            d.fractional()
        );
    }
    println!(
        "truncation error bound for N={n}: {:.1e}",
        trunc.error_bound(n)
    );
}
