//! Chaotic iterations on boolean networks, a strong-connectivity
//! certificate for Devaney chaos, and global recurrent multilayer
//! perceptrons trained to realize those iterations bit for bit.
//!
//! - [`dynamics`]: configurations, truth-table maps, strategies, `F_f`, `G_f`.
//! - [`metric`]: the phase-space distance `d = d_e + d_s`.
//! - [`certify`]: the graph of iterations, SCC certificate, and
//!   constructive transitivity / regularity / sensitivity witnesses.
//! - [`nn`]: from-scratch MLP, L-BFGS training, recurrent harness,
//!   exact-equivalence verifier, model files.
//! - [`experiment`]: the seeded training-table harness and its reports.

pub mod certify;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod metric;
pub mod nn;

pub use error::{Error, Result};
