// Runs the same chaotic iterations three ways: through `F_f` step by step,
// through the phase-space map `G_f`, and by replaying an explicit schedule.
//
//     cargo run --example chaotic_iterations

use chaosnet::dynamics::{
    chaotic_iterate, gf_iterate, gf_step, replay, BooleanMap, Configuration, PhasePoint, Strategy,
};

pub fn main() {
    let f = BooleanMap::builtin("f1_1").expect("builtin");
    let x0: Configuration = "010".parse().expect("bits");
    let s = Strategy::parse("prefix:3,3;random:42", 3).expect("strategy");

    println!("f = {}, x0 = {x0}, S = {s}", f.label());
    let xs = chaotic_iterate(&f, x0, &s, 8).expect("iterate");
    let mut point = PhasePoint::new(s.clone(), x0).expect("point");
    for (t, x) in xs.iter().enumerate() {
        point = gf_step(&f, &point).expect("step");
        assert_eq!(point.config, *x);
        println!("t={:<2} S={} x={x}", t + 1, s.term(t + 1));
    }

    let jumped = gf_iterate(&f, &PhasePoint::new(s.clone(), x0).expect("point"), 8).expect("jump");
    assert_eq!(jumped.config, xs[7]);
    assert_eq!(replay(&f, x0, &s.take(8)).expect("replay"), xs);
    println!(
        "after 8 steps the strategy starts with {:?}",
        jumped.strategy.take(4)
    );
}
