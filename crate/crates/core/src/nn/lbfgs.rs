//! Limited-memory BFGS with a strong Wolfe line search.
//!
//! The search direction comes from the two-loop recursion over the last
//! `memory` curvature pairs with initial scaling `γ = sᵀy / yᵀy`. Step
//! lengths satisfy
//!
//! ```text
//! φ(α) ≤ φ(0) + c1·α·φ'(0)        (sufficient decrease)
//! |φ'(α)| ≤ c2·|φ'(0)|            (curvature)
//! ```
//!
//! found by bracketing followed by a zoom phase that places trial steps at
//! the minimizer of the cubic interpolating the bracket ends, safeguarded
//! away from the bracket boundary.

use std::collections::VecDeque;
use std::fmt;

/// A differentiable objective. Writes `∇f(x)` into `grad` and returns `f(x)`.
pub trait Objective {
    fn evaluate(&mut self, x: &[f64], grad: &mut [f64]) -> f64;
}

impl<F> Objective for F
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    fn evaluate(&mut self, x: &[f64], grad: &mut [f64]) -> f64 {
        self(x, grad)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LbfgsConfig {
    pub memory: usize,
    pub c1: f64,
    pub c2: f64,
    /// Objective evaluations allowed per line search.
    pub max_line_search: usize,
}

impl Default for LbfgsConfig {
    fn default() -> Self {
        Self {
            memory: 10,
            c1: 1e-4,
            c2: 0.9,
            max_line_search: 20,
        }
    }
}

impl LbfgsConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.memory == 0 {
            return Err("L-BFGS memory must be at least 1".into());
        }
        if !(0.0 < self.c1 && self.c1 < self.c2 && self.c2 < 1.0) {
            return Err(format!(
                "Wolfe constants must satisfy 0 < c1 < c2 < 1, got c1={} c2={}",
                self.c1, self.c2
            ));
        }
        if self.max_line_search == 0 {
            return Err("line search needs at least one trial".into());
        }
        Ok(())
    }
}

/// Why an iteration could not be completed.
#[derive(Clone, Debug, PartialEq)]
pub enum StepFailure {
    /// The gradient vanished: `x` is a stationary point.
    Stationary { grad_norm: f64 },
    /// No step satisfying the Wolfe conditions within the trial budget,
    /// even along steepest descent.
    LineSearch { trials: usize, last_step: f64 },
    /// The objective returned a non-finite value at the starting point.
    NonFinite,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::Stationary { grad_norm } => {
                write!(f, "stationary point (|g| = {grad_norm:e})")
            }
            StepFailure::LineSearch { trials, last_step } => write!(
                f,
                "line search failed after {trials} trials (last step {last_step:e})"
            ),
            StepFailure::NonFinite => write!(f, "objective is not finite"),
        }
    }
}

/// Outcome of an accepted iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepInfo {
    pub value: f64,
    pub step: f64,
    pub evaluations: usize,
    /// The quasi-Newton direction was rejected and steepest descent used.
    pub restarted: bool,
}

/// Optimizer state: current iterate, value, gradient and curvature pairs.
pub struct Lbfgs {
    config: LbfgsConfig,
    x: Vec<f64>,
    value: f64,
    grad: Vec<f64>,
    history: VecDeque<(Vec<f64>, Vec<f64>, f64)>,
    iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct Trial {
    step: f64,
    value: f64,
    slope: f64,
}

impl Lbfgs {
    pub fn new<O: Objective>(config: LbfgsConfig, x0: Vec<f64>, objective: &mut O) -> Self {
        let mut grad = vec![0.0; x0.len()];
        let value = objective.evaluate(&x0, &mut grad);
        Self {
            config,
            x: x0,
            value,
            grad,
            history: VecDeque::with_capacity(config.memory),
            iterations: 0,
        }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        &self.grad
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    fn direction(&self) -> Vec<f64> {
        let mut q: Vec<f64> = self.grad.iter().map(|g| -g).collect();
        let mut alphas = Vec::with_capacity(self.history.len());
        for (s, y, rho) in self.history.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = self.history.back() {
            let gamma = dot(s, y) / dot(y, y);
            q.iter_mut().for_each(|qi| *qi *= gamma);
        }
        for ((s, y, rho), a) in self.history.iter().zip(alphas.into_iter().rev()) {
            let b = rho * dot(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        q
    }

    /// Performs one quasi-Newton iteration.
    pub fn step<O: Objective>(&mut self, objective: &mut O) -> Result<StepInfo, StepFailure> {
        if !self.value.is_finite() || self.grad.iter().any(|g| !g.is_finite()) {
            return Err(StepFailure::NonFinite);
        }
        let grad_norm = norm(&self.grad);
        if grad_norm <= f64::EPSILON * (1.0 + self.value.abs()) {
            return Err(StepFailure::Stationary { grad_norm });
        }

        let mut restarted = false;
        let mut direction = self.direction();
        if self.history.is_empty() || dot(&direction, &self.grad) >= 0.0 {
            restarted = !self.history.is_empty();
            self.history.clear();
            direction = self.grad.iter().map(|g| -g).collect();
        }

        let mut outcome = self.line_search(objective, &direction, self.history.is_empty());
        if outcome.is_err() && !self.history.is_empty() {
            // retry once along steepest descent with a fresh memory
            self.history.clear();
            restarted = true;
            direction = self.grad.iter().map(|g| -g).collect();
            outcome = self.line_search(objective, &direction, true);
        }
        let (step, value, new_grad, evaluations) = outcome?;

        let s: Vec<f64> = direction.iter().map(|d| step * d).collect();
        let y: Vec<f64> = new_grad
            .iter()
            .zip(&self.grad)
            .map(|(a, b)| a - b)
            .collect();
        let sy = dot(&s, &y);
        self.x.iter_mut().zip(&s).for_each(|(xi, si)| *xi += si);
        if sy > f64::EPSILON * dot(&y, &y) {
            if self.history.len() == self.config.memory {
                self.history.pop_front();
            }
            self.history.push_back((s, y, 1.0 / sy));
        }
        self.value = value;
        self.grad = new_grad;
        self.iterations += 1;
        Ok(StepInfo {
            value,
            step,
            evaluations,
            restarted,
        })
    }

    #[allow(clippy::type_complexity)]
    fn line_search<O: Objective>(
        &self,
        objective: &mut O,
        direction: &[f64],
        steepest: bool,
    ) -> Result<(f64, f64, Vec<f64>, usize), StepFailure> {
        let c1 = self.config.c1;
        let c2 = self.config.c2;
        let budget = self.config.max_line_search;
        let phi0 = self.value;
        let dphi0 = dot(&self.grad, direction);
        let mut trial_x = vec![0.0; self.x.len()];
        let mut trial_g = vec![0.0; self.x.len()];
        let mut evaluations = 0;

        let mut eval = |step: f64, x: &mut Vec<f64>, g: &mut Vec<f64>| -> Trial {
            x.iter_mut()
                .zip(&self.x)
                .zip(direction)
                .for_each(|((t, xi), di)| *t = xi + step * di);
            let value = objective.evaluate(x, g);
            Trial {
                step,
                value,
                slope: dot(g, direction),
            }
        };

        let armijo = |t: &Trial| t.value.is_finite() && t.value <= phi0 + c1 * t.step * dphi0;
        let curvature = |t: &Trial| t.slope.abs() <= -c2 * dphi0;

        let mut step = if steepest {
            (1.0 / norm(direction)).min(1.0)
        } else {
            1.0
        };
        let mut prev = Trial {
            step: 0.0,
            value: phi0,
            slope: dphi0,
        };

        // bracketing phase
        let (mut lo, mut hi) = loop {
            if evaluations == budget {
                return Err(StepFailure::LineSearch {
                    trials: evaluations,
                    last_step: step,
                });
            }
            let t = eval(step, &mut trial_x, &mut trial_g);
            evaluations += 1;
            if !armijo(&t) || (evaluations > 1 && t.value >= prev.value) {
                break (prev, t);
            }
            if curvature(&t) {
                return Ok((t.step, t.value, trial_g, evaluations));
            }
            if t.slope >= 0.0 {
                break (t, prev);
            }
            step = 2.0 * t.step;
            prev = t;
        };

        // zoom phase; `lo` always satisfies sufficient decrease
        loop {
            if evaluations == budget {
                return Err(StepFailure::LineSearch {
                    trials: evaluations,
                    last_step: lo.step,
                });
            }
            let (a, b) = (lo.step.min(hi.step), lo.step.max(hi.step));
            let width = b - a;
            if width <= f64::EPSILON * b.max(1.0) {
                return Err(StepFailure::LineSearch {
                    trials: evaluations,
                    last_step: lo.step,
                });
            }
            let candidate = cubic_minimizer(&lo, &hi)
                .filter(|c| *c > a + 0.1 * width && *c < b - 0.1 * width)
                .unwrap_or(0.5 * (a + b));
            let t = eval(candidate, &mut trial_x, &mut trial_g);
            evaluations += 1;
            if !armijo(&t) || t.value >= lo.value {
                hi = t;
            } else {
                if curvature(&t) {
                    return Ok((t.step, t.value, trial_g, evaluations));
                }
                if t.slope * (hi.step - lo.step) >= 0.0 {
                    hi = lo;
                }
                lo = t;
            }
        }
    }
}

/// Minimizer of the cubic matching value and slope at both trial points.
fn cubic_minimizer(p: &Trial, q: &Trial) -> Option<f64> {
    let d1 = p.slope + q.slope - 3.0 * (p.value - q.value) / (p.step - q.step);
    let disc = d1 * d1 - p.slope * q.slope;
    if disc < 0.0 {
        return None;
    }
    let d2 = (q.step - p.step).signum() * disc.sqrt();
    let denom = q.slope - p.slope + 2.0 * d2;
    if denom == 0.0 {
        return None;
    }
    let c = q.step - (q.step - p.step) * (q.slope + d2 - d1) / denom;
    c.is_finite().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64], g: &mut [f64]) -> f64 {
        let (a, b) = (x[0], x[1]);
        g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
        g[1] = 200.0 * (b - a * a);
        (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
    }

    #[test]
    fn minimizes_rosenbrock() {
        let mut f = rosenbrock;
        let mut opt = Lbfgs::new(LbfgsConfig::default(), vec![-1.2, 1.0], &mut f);
        let mut last = opt.value();
        for _ in 0..200 {
            match opt.step(&mut f) {
                Ok(info) => {
                    assert!(info.value <= last, "monotone decrease");
                    last = info.value;
                }
                Err(StepFailure::Stationary { .. }) => break,
                Err(e) => {
                    // line search can stall at machine precision near the optimum
                    assert!(opt.value() < 1e-12, "{e}");
                    break;
                }
            }
            if opt.value() < 1e-20 {
                break;
            }
        }
        assert!((opt.x()[0] - 1.0).abs() < 1e-5, "{:?}", opt.x());
        assert!((opt.x()[1] - 1.0).abs() < 1e-5, "{:?}", opt.x());
    }

    #[test]
    fn quadratic_in_few_iterations() {
        // f = Σ i·x_i², exact minimizer at the origin
        let mut f = |x: &[f64], g: &mut [f64]| {
            let mut v = 0.0;
            for (i, (xi, gi)) in x.iter().zip(g.iter_mut()).enumerate() {
                let w = (i + 1) as f64;
                v += w * xi * xi;
                *gi = 2.0 * w * xi;
            }
            v
        };
        let mut opt = Lbfgs::new(LbfgsConfig::default(), vec![1.0; 5], &mut f);
        for _ in 0..30 {
            if opt.step(&mut f).is_err() || opt.value() < 1e-16 {
                break;
            }
        }
        assert!(opt.value() < 1e-12);
        assert!(opt.iterations() < 30);
    }

    #[test]
    fn stationary_start() {
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 2.0 * x[0];
            x[0] * x[0]
        };
        let mut opt = Lbfgs::new(LbfgsConfig::default(), vec![0.0], &mut f);
        assert!(matches!(
            opt.step(&mut f),
            Err(StepFailure::Stationary { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(LbfgsConfig::default().validate().is_ok());
        let bad = LbfgsConfig {
            c1: 0.9,
            c2: 0.1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = LbfgsConfig {
            memory: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn cubic_recovers_quadratic_minimum() {
        // φ(α) = (α − 0.3)², sampled at 0 and 1
        let p = Trial {
            step: 0.0,
            value: 0.09,
            slope: -0.6,
        };
        let q = Trial {
            step: 1.0,
            value: 0.49,
            slope: 1.4,
        };
        let c = cubic_minimizer(&p, &q).unwrap();
        assert!((c - 0.3).abs() < 1e-12, "{c}");
    }
}
