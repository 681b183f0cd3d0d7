use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::build_training_set;
use super::lbfgs::{Lbfgs, LbfgsConfig};
use super::mlp::{accumulate_gradient, MlpArchitecture, MlpParameters};
use crate::dynamics::BooleanMap;
use crate::error::{Error, Result};

/// Hyperparameters of one training run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingConfig {
    /// Training stops successfully once the MSE drops below this value.
    pub mse_threshold: f64,
    /// Upper bound on epochs (accepted L-BFGS iterations).
    pub max_epochs: usize,
    pub lbfgs_memory: usize,
    pub wolfe_c1: f64,
    pub wolfe_c2: f64,
    pub max_line_search: usize,
    /// Weights and biases start i.i.d. uniform on `[-init_scale, init_scale]`.
    pub init_scale: f64,
    pub seed: u64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            mse_threshold: 1e-2,
            max_epochs: 1000,
            lbfgs_memory: 10,
            wolfe_c1: 1e-4,
            wolfe_c2: 0.9,
            max_line_search: 20,
            init_scale: 0.5,
            seed: 0,
        }
    }
}

impl TrainingConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    fn lbfgs(&self) -> LbfgsConfig {
        LbfgsConfig {
            memory: self.lbfgs_memory,
            c1: self.wolfe_c1,
            c2: self.wolfe_c2,
            max_line_search: self.max_line_search,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mse_threshold.is_nan() || self.mse_threshold <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "MSE threshold must be positive, got {}",
                self.mse_threshold
            )));
        }
        if !(self.init_scale >= 0.0 && self.init_scale.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "init scale must be finite and non-negative, got {}",
                self.init_scale
            )));
        }
        self.lbfgs().validate().map_err(Error::InvalidConfig)
    }
}

/// Outcome of one training run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingReport {
    pub converged: bool,
    pub epochs_used: usize,
    pub final_mse: f64,
    pub seed: u64,
    pub architecture: String,
    /// MSE before training followed by the MSE after each epoch.
    pub mse_trace: Vec<f64>,
    /// Why training stopped early without converging.
    pub failure: Option<String>,
}

/// Full-batch L-BFGS on the MSE over all `N·2^N` pairs of `F_f`.
///
/// Deterministic given `cfg.seed`. Stops as soon as the MSE is below the
/// threshold, when `max_epochs` is reached, or when the optimizer cannot
/// make progress; the latter two report `converged = false`.
pub fn train(
    arch: &MlpArchitecture,
    f: &BooleanMap,
    cfg: &TrainingConfig,
) -> Result<(MlpParameters, TrainingReport)> {
    cfg.validate()?;
    if f.n_cells() != arch.n_cells {
        return Err(Error::DimensionMismatch {
            expected: arch.n_cells,
            found: f.n_cells(),
        });
    }
    let set = build_training_set(f, arch.encoding)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let init = MlpParameters::random(arch, cfg.init_scale, &mut rng);

    let mut scratch = init.clone();
    let mut objective = |x: &[f64], grad: &mut [f64]| {
        scratch.values_mut().copy_from_slice(x);
        accumulate_gradient(&scratch, &set, grad)
    };

    let mut opt = Lbfgs::new(cfg.lbfgs(), init.values().to_vec(), &mut objective);
    let mut trace = vec![opt.value()];
    let mut failure = None;
    let mut epochs = 0;
    let converged = loop {
        if opt.value() < cfg.mse_threshold {
            break true;
        }
        if epochs >= cfg.max_epochs {
            break false;
        }
        match opt.step(&mut objective) {
            Ok(info) => {
                epochs += 1;
                trace.push(info.value);
            }
            Err(e) => {
                failure = Some(e.to_string());
                break false;
            }
        }
    };

    let params = MlpParameters::from_values(arch, opt.x().to_vec())?;
    let report = TrainingReport {
        converged,
        epochs_used: epochs,
        final_mse: opt.value(),
        seed: cfg.seed,
        architecture: arch.to_string(),
        mse_trace: trace,
        failure,
    };
    Ok((params, report))
}
