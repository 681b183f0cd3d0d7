//! Multilayer perceptrons that learn `F_f` and, fed back on themselves,
//! iterate it.
//!
//! A network trained on all pairs `((k, x), F_f(k, x))` becomes a global
//! recurrent network by thresholding its outputs into a configuration and
//! sending that configuration back to its state inputs, while the strategy
//! supplies the next cell index. When [`verify_exact_equivalence`] holds
//! for all `N·2^N` inputs, every trajectory of the recurrent network equals
//! the chaotic iterations of `f` (by induction on the step count), so the
//! network inherits the chaos certificate of `f`.

pub mod lbfgs;
mod mlp;
mod model_file;
mod train;

pub use mlp::{
    encode_input, forward, mse, mse_and_gradient, Encoding, MlpArchitecture, MlpParameters, Sample,
};
pub use model_file::{load_model, parse_model, save_model, write_model};
pub use train::{train, TrainingConfig, TrainingReport};

use crate::dynamics::{big_f_unchecked, BooleanMap, Configuration, Strategy};
use crate::error::{Error, Result};

/// The exhaustive training set of `F_f`: one pair per `(k, x)`, ordered by
/// `x` index then `k`.
pub fn build_training_set(f: &BooleanMap, encoding: Encoding) -> Result<Vec<Sample>> {
    let n = f.n_cells();
    let mut set = Vec::with_capacity(n << n);
    for x in Configuration::all(n)? {
        for k in 1..=n {
            let y = big_f_unchecked(f, k, x);
            set.push(Sample {
                input: encode_input(k, &x, encoding)?,
                target: y
                    .bits()
                    .into_iter()
                    .map(|b| if b { 1.0 } else { 0.0 })
                    .collect(),
            });
        }
    }
    Ok(set)
}

/// Rounds network outputs to a configuration: cell `i` is 1 iff `y_i ≥ 0.5`.
pub fn threshold_output(y: &[f64]) -> Result<Configuration> {
    if let Some(v) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("network output {v}")));
    }
    Configuration::from_bits(&y.iter().map(|&v| v >= 0.5).collect::<Vec<_>>())
}

fn predict(
    params: &MlpParameters,
    enc: Encoding,
    k: usize,
    x: Configuration,
) -> Result<Configuration> {
    threshold_output(&mlp::forward_unchecked(params, &encode_input(k, &x, enc)?))
}

/// Runs the network as a global recurrent system:
/// `x^{n+1} = threshold(forward(encode(S^{n+1}, x^n)))`. Returns
/// `(x^1, …, x^steps)`.
pub fn recurrent_trajectory(
    arch: &MlpArchitecture,
    params: &MlpParameters,
    x0: Configuration,
    strategy: &Strategy,
    steps: usize,
) -> Result<Vec<Configuration>> {
    params.check(arch)?;
    x0.check_same_dim(arch.n_cells)?;
    if strategy.n_cells() != arch.n_cells {
        return Err(Error::DimensionMismatch {
            expected: arch.n_cells,
            found: strategy.n_cells(),
        });
    }
    let mut x = x0;
    strategy
        .terms()
        .take(steps)
        .map(|k| {
            x = predict(params, arch.encoding, k, x)?;
            Ok(x)
        })
        .collect()
}

/// A `(k, x)` input on which the thresholded network disagrees with `F_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub cell: usize,
    pub input: Configuration,
    pub expected: Configuration,
    pub actual: Configuration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub exact: bool,
    pub checked: usize,
    pub failures: Vec<Mismatch>,
}

/// Checks the thresholded network against `F_f` on all `N·2^N` inputs.
pub fn verify_exact_equivalence(
    arch: &MlpArchitecture,
    params: &MlpParameters,
    f: &BooleanMap,
) -> Result<EquivalenceReport> {
    params.check(arch)?;
    if f.n_cells() != arch.n_cells {
        return Err(Error::DimensionMismatch {
            expected: arch.n_cells,
            found: f.n_cells(),
        });
    }
    let n = f.n_cells();
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in Configuration::all(n)? {
        for k in 1..=n {
            checked += 1;
            let expected = big_f_unchecked(f, k, x);
            let actual = predict(params, arch.encoding, k, x)?;
            if actual != expected {
                failures.push(Mismatch {
                    cell: k,
                    input: x,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(EquivalenceReport {
        exact: failures.is_empty(),
        checked,
        failures,
    })
}
