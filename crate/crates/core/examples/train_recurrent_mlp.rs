// Trains a perceptron on F_f, checks it on every input, and then runs it
// as a recurrent network alongside the chaotic iterations it learned.
//
//     cargo run --release --example train_recurrent_mlp

use chaosnet::dynamics::{chaotic_iterate, BooleanMap, Configuration, Strategy};
use chaosnet::nn::{
    recurrent_trajectory, train, verify_exact_equivalence, write_model, Encoding, MlpArchitecture,
    TrainingConfig,
};

pub fn main() {
    let f = BooleanMap::builtin("f0_2").expect("builtin");
    let arch = MlpArchitecture::new(3, Encoding::OneHot, vec![10]).expect("architecture");
    let (params, report) = train(&arch, &f, &TrainingConfig::default()).expect("training");
    println!(
        "{arch}: converged={} after {} epochs, mse={:.2e}",
        report.converged, report.epochs_used, report.final_mse
    );

    let eq = verify_exact_equivalence(&arch, &params, &f).expect("verify");
    println!(
        "exact on {}/{} inputs",
        eq.checked - eq.failures.len(),
        eq.checked
    );

    let x0 = Configuration::zeros(3).expect("zeros");
    let s = Strategy::uniform_random(3, 11).expect("strategy");
    let net = recurrent_trajectory(&arch, &params, x0, &s, 12).expect("recurrent");
    let truth = chaotic_iterate(&f, x0, &s, 12).expect("iterate");
    for (t, (a, b)) in net.iter().zip(&truth).enumerate() {
        println!("t={:<2} S={} net={a} f={b}", t + 1, s.term(t + 1));
    }
    if eq.exact {
        assert_eq!(net, truth);
    }

    let text = write_model(&arch, &params).expect("model");
    println!("model file: {} lines", text.lines().count());
}
