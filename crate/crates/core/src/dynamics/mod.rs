//! Chaotic iterations over `B^N`.
//!
//! A system of `N` boolean cells evolves under a map `f: B^N -> B^N`; at
//! step `n` only the cell named by the strategy term `S^n` is replaced by
//! the corresponding component of `f`. The same dynamics is expressed on
//! the phase space `X = [1..N]^ℕ × B^N` by
//! `G_f(S, E) = (σ(S), F_f(i(S), E))`, where `σ` drops the first strategy
//! term and `i` reads it.

mod configuration;
mod map;
mod strategy;

pub use configuration::{Configuration, MAX_CELLS};
pub use map::{BooleanMap, BUILTIN_NAMES};
pub use strategy::{uniform_term, Generator, Strategy};

use crate::error::{Error, Result};

/// A point `(S, E)` of the phase space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhasePoint {
    pub strategy: Strategy,
    pub config: Configuration,
}

impl PhasePoint {
    pub fn new(strategy: Strategy, config: Configuration) -> Result<Self> {
        if strategy.n_cells() != config.n_cells() {
            return Err(Error::DimensionMismatch {
                expected: strategy.n_cells(),
                found: config.n_cells(),
            });
        }
        Ok(Self { strategy, config })
    }

    pub fn n_cells(&self) -> usize {
        self.config.n_cells()
    }
}

/// `F_f(k, x)`: `x` with cell `k` replaced by `f(x)_k`.
pub fn big_f(f: &BooleanMap, k: usize, x: Configuration) -> Result<Configuration> {
    x.check_same_dim(f.n_cells())?;
    x.check_cell(k)?;
    Ok(big_f_unchecked(f, k, x))
}

#[inline]
pub(crate) fn big_f_unchecked(f: &BooleanMap, k: usize, x: Configuration) -> Configuration {
    let image = f.apply_unchecked(x);
    let mask = 1u32 << (k - 1);
    let index = (x.index() & !mask) | (image.index() & mask);
    Configuration::from_index(x.n_cells(), index).expect("same width")
}

/// Runs `steps` chaotic iterations from `x0`, consuming strategy terms in
/// order starting at term 1. Returns `(x^1, …, x^steps)`.
pub fn chaotic_iterate(
    f: &BooleanMap,
    x0: Configuration,
    strategy: &Strategy,
    steps: usize,
) -> Result<Vec<Configuration>> {
    x0.check_same_dim(f.n_cells())?;
    if strategy.n_cells() != f.n_cells() {
        return Err(Error::DimensionMismatch {
            expected: f.n_cells(),
            found: strategy.n_cells(),
        });
    }
    Ok(strategy
        .terms()
        .take(steps)
        .scan(x0, |x, k| {
            *x = big_f_unchecked(f, k, *x);
            Some(*x)
        })
        .collect())
}

/// Replays an explicit list of cell indices from `x0`.
pub fn replay(f: &BooleanMap, x0: Configuration, cells: &[usize]) -> Result<Vec<Configuration>> {
    x0.check_same_dim(f.n_cells())?;
    let mut x = x0;
    cells
        .iter()
        .map(|&k| {
            x = big_f(f, k, x)?;
            Ok(x)
        })
        .collect()
}

/// One application of `G_f`.
pub fn gf_step(f: &BooleanMap, point: &PhasePoint) -> Result<PhasePoint> {
    if point.strategy.n_cells() != f.n_cells() {
        return Err(Error::DimensionMismatch {
            expected: f.n_cells(),
            found: point.strategy.n_cells(),
        });
    }
    let config = big_f(f, point.strategy.initial(), point.config)?;
    Ok(PhasePoint {
        strategy: point.strategy.shift(),
        config,
    })
}

/// `G_f` applied `steps` times.
pub fn gf_iterate(f: &BooleanMap, point: &PhasePoint, steps: usize) -> Result<PhasePoint> {
    (0..steps).try_fold(point.clone(), |p, _| gf_step(f, &p))
}
