//! The distance `d = d_e + d_s` on the phase space.
//!
//! `d_e` is the Hamming distance between configurations and
//! `d_s(S, Š) = 9/N · Σ_{k≥1} |S^k − Š^k| / 10^k` compares strategies
//! digit by digit. Since `|S^k − Š^k| ≤ N − 1`, `d_s < 1`, so the integer
//! part of `d` counts differing cells and the fractional part encodes how
//! long the two strategies agree.
//!
//! The series is evaluated on its first `K` terms ([`TruncationPolicy`]).
//! Dropping the tail changes `d_s` by at most `(N − 1)/N · 10^{−K}`.
//! The truncated sum is accumulated exactly as the integer
//! `M = Σ_{k≤K} |S^k − Š^k| · 10^{K−k}`, so `d_s = 9M / (N·10^K)` carries
//! a single rounding when converted to `f64`.

use crate::dynamics::{Configuration, PhasePoint, Strategy};
use crate::error::{Error, Result};

/// Number of strategy terms compared when evaluating `d_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    depth: u32,
}

impl TruncationPolicy {
    pub const DEFAULT_DEPTH: u32 = 16;
    /// `10^MAX_DEPTH · 19` still fits the exact `u128` accumulator.
    pub const MAX_DEPTH: u32 = 36;

    pub fn new(depth: u32) -> Result<Self> {
        if depth == 0 || depth > Self::MAX_DEPTH {
            return Err(Error::InvalidConfig(format!(
                "truncation depth must be in 1..={}, got {depth}",
                Self::MAX_DEPTH
            )));
        }
        Ok(Self { depth })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Largest change of `d_s` caused by truncating at this depth.
    pub fn error_bound(&self, n_cells: usize) -> f64 {
        (n_cells as f64 - 1.0) / n_cells as f64 * 10f64.powi(-(self.depth as i32))
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            depth: Self::DEFAULT_DEPTH,
        }
    }
}

/// Exact decomposition of a phase distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhaseDistance {
    /// `d_e`, the number of differing cells.
    pub config: u32,
    /// `M = Σ_{k≤K} |S^k − Š^k| · 10^{K−k}`.
    pub strategy_digits: u128,
    pub n_cells: usize,
    pub depth: u32,
}

impl PhaseDistance {
    /// `d_s` as a real.
    pub fn strategy(&self) -> f64 {
        strategy_value(self.strategy_digits, self.n_cells, self.depth)
    }

    /// `d = d_e + d_s`.
    pub fn value(&self) -> f64 {
        f64::from(self.config) + self.strategy()
    }

    /// Integer part of `d`, equal to `d_e` because `d_s < 1`.
    pub fn integer_part(&self) -> u32 {
        self.config
    }

    /// Fractional part of `d`, equal to `d_s`.
    pub fn fractional(&self) -> f64 {
        self.strategy()
    }

    /// `d · N · 10^K` as an exact integer, for exact comparisons between
    /// distances computed with the same `N` and `K`.
    pub fn scaled(&self) -> u128 {
        u128::from(self.config) * self.n_cells as u128 * 10u128.pow(self.depth)
            + 9 * self.strategy_digits
    }
}

fn strategy_value(digits: u128, n_cells: usize, depth: u32) -> f64 {
    (9 * digits) as f64 / (n_cells as f64 * 10f64.powi(depth as i32))
}

/// `d_e`: Hamming distance between two configurations.
pub fn config_distance(e1: &Configuration, e2: &Configuration) -> Result<u32> {
    e1.hamming(e2)
}

fn strategy_digits(s1: &Strategy, s2: &Strategy, trunc: TruncationPolicy) -> Result<u128> {
    if s1.n_cells() != s2.n_cells() {
        return Err(Error::DimensionMismatch {
            expected: s1.n_cells(),
            found: s2.n_cells(),
        });
    }
    Ok(s1
        .terms()
        .zip(s2.terms())
        .take(trunc.depth as usize)
        .fold(0u128, |acc, (a, b)| acc * 10 + a.abs_diff(b) as u128))
}

/// `d_s` truncated to `trunc.depth()` terms.
pub fn strategy_distance(s1: &Strategy, s2: &Strategy, trunc: TruncationPolicy) -> Result<f64> {
    let digits = strategy_digits(s1, s2, trunc)?;
    Ok(strategy_value(digits, s1.n_cells(), trunc.depth))
}

/// Both parts of `d`, exactly.
pub fn phase_distance_parts(
    p1: &PhasePoint,
    p2: &PhasePoint,
    trunc: TruncationPolicy,
) -> Result<PhaseDistance> {
    Ok(PhaseDistance {
        config: config_distance(&p1.config, &p2.config)?,
        strategy_digits: strategy_digits(&p1.strategy, &p2.strategy, trunc)?,
        n_cells: p1.n_cells(),
        depth: trunc.depth,
    })
}

/// `d((S,E), (Š,Ě)) = d_e(E,Ě) + d_s(S,Š)`.
pub fn phase_distance(p1: &PhasePoint, p2: &PhasePoint, trunc: TruncationPolicy) -> Result<f64> {
    phase_distance_parts(p1, p2, trunc).map(|d| d.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Generator;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn config_distance_examples() {
        assert_eq!(config_distance(&cfg("011"), &cfg("011")).unwrap(), 0);
        assert_eq!(config_distance(&cfg("011"), &cfg("110")).unwrap(), 2);
        assert_eq!(config_distance(&cfg("0000"), &cfg("1111")).unwrap(), 4);
        assert!(config_distance(&cfg("00"), &cfg("000")).is_err());
    }

    #[test]
    fn strategy_distance_examples() {
        let t = TruncationPolicy::default();
        let s = Strategy::uniform_random(3, 3).unwrap();
        assert_eq!(strategy_distance(&s, &s.clone(), t).unwrap(), 0.0);

        let a = Strategy::new(3, vec![1, 2, 1], Generator::Periodic(vec![2].into())).unwrap();
        let b = Strategy::new(3, vec![1, 3, 1], Generator::Periodic(vec![2].into())).unwrap();
        let d = strategy_distance(&a, &b, t).unwrap();
        assert!((d - 0.03).abs() < 1e-15, "{d}");

        let ones = Strategy::periodic(3, vec![1]).unwrap();
        let threes = Strategy::periodic(3, vec![3]).unwrap();
        let d = strategy_distance(&ones, &threes, t).unwrap();
        // (9/3)·2·(1/9)·(1 − 10^{-16}) by the geometric series
        let expected = 3.0 * 2.0 * (1.0 / 9.0) * (1.0 - 1e-16);
        assert!((d - expected).abs() < 1e-15, "{d} vs {expected}");
    }

    #[test]
    fn phase_distance_examples() {
        let t = TruncationPolicy::default();
        let s = Strategy::uniform_random(3, 11).unwrap();
        let p = PhasePoint::new(s, cfg("011")).unwrap();
        assert_eq!(phase_distance(&p, &p, t).unwrap(), 0.0);

        let a = PhasePoint::new(
            Strategy::new(3, vec![1, 2], Generator::Periodic(vec![1].into())).unwrap(),
            cfg("011"),
        )
        .unwrap();
        let b = PhasePoint::new(
            Strategy::new(3, vec![1, 3], Generator::Periodic(vec![1].into())).unwrap(),
            cfg("110"),
        )
        .unwrap();
        let parts = phase_distance_parts(&a, &b, t).unwrap();
        assert_eq!(parts.integer_part(), 2);
        assert!((parts.value() - 2.03).abs() < 1e-15);
        assert_eq!(parts.value().floor(), 2.0);
    }

    #[test]
    fn truncation_bound_holds() {
        // depth 4 against depth 30 as a stand-in for the full series
        let a = Strategy::uniform_random(7, 1).unwrap();
        let b = Strategy::uniform_random(7, 2).unwrap();
        let short = TruncationPolicy::new(4).unwrap();
        let long = TruncationPolicy::new(30).unwrap();
        let gap =
            strategy_distance(&a, &b, long).unwrap() - strategy_distance(&a, &b, short).unwrap();
        assert!(gap >= 0.0 && gap <= short.error_bound(7), "{gap}");
    }

    #[test]
    fn truncation_policy_bounds() {
        assert!(TruncationPolicy::new(0).is_err());
        assert!(TruncationPolicy::new(37).is_err());
        assert_eq!(TruncationPolicy::default().depth(), 16);
    }
}
