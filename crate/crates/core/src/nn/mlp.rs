use std::fmt;

use rand::Rng;

use crate::dynamics::Configuration;
use crate::error::{Error, Result};

/// How the strategy term `k` is presented to the network next to the `N`
/// state bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Encoding {
    /// `N` extra inputs, one-hot on `k`.
    #[default]
    OneHot,
    /// One extra input holding `k / N`.
    Scalar,
}

impl Encoding {
    pub fn as_str(&self) -> &'static str {
        match self {
            Encoding::OneHot => "one_hot",
            Encoding::Scalar => "scalar",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "one_hot" => Ok(Encoding::OneHot),
            "scalar" => Ok(Encoding::Scalar),
            other => Err(Error::InvalidArchitecture(format!(
                "unknown encoding `{other}`"
            ))),
        }
    }
}

/// Layer layout of a perceptron realizing `F_f`: sigmoid hidden layers and
/// a linear output layer of `N` neurons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlpArchitecture {
    pub n_cells: usize,
    pub encoding: Encoding,
    pub hidden: Vec<usize>,
}

impl MlpArchitecture {
    pub fn new(n_cells: usize, encoding: Encoding, hidden: Vec<usize>) -> Result<Self> {
        crate::dynamics::Configuration::zeros(n_cells)?;
        if hidden.is_empty() || hidden.len() > 2 {
            return Err(Error::InvalidArchitecture(format!(
                "expected one or two hidden layers, got {}",
                hidden.len()
            )));
        }
        if hidden.contains(&0) {
            return Err(Error::InvalidArchitecture(
                "hidden layers must be non-empty".into(),
            ));
        }
        Ok(Self {
            n_cells,
            encoding,
            hidden,
        })
    }

    pub fn input_width(&self) -> usize {
        match self.encoding {
            Encoding::OneHot => 2 * self.n_cells,
            Encoding::Scalar => self.n_cells + 1,
        }
    }

    pub fn n_outputs(&self) -> usize {
        self.n_cells
    }

    /// `[input, hidden…, output]` widths.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.hidden.len() + 2);
        w.push(self.input_width());
        w.extend_from_slice(&self.hidden);
        w.push(self.n_outputs());
        w
    }

    /// `(rows, cols)` of each weight matrix; rows index the layer's neurons.
    pub fn layer_shapes(&self) -> Vec<(usize, usize)> {
        self.widths().windows(2).map(|w| (w[1], w[0])).collect()
    }

    pub fn parameter_count(&self) -> usize {
        self.layer_shapes().iter().map(|(r, c)| r * c + r).sum()
    }

    /// Hidden sizes joined by commas, e.g. `8,4`.
    pub fn hidden_label(&self) -> String {
        self.hidden
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MlpArchitecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} enc={} hidden={}",
            self.n_cells,
            self.encoding.as_str(),
            self.hidden_label()
        )
    }
}

/// Weights and biases of every layer, flattened into one vector.
///
/// Layer `l` occupies a contiguous block: its `rows × cols` weight matrix in
/// row-major order followed by its `rows` biases. A neuron computes
/// `φ(Σ_i w_i x_i + b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MlpParameters {
    shapes: Vec<(usize, usize)>,
    values: Vec<f64>,
}

impl MlpParameters {
    pub fn zeros(arch: &MlpArchitecture) -> Self {
        Self {
            shapes: arch.layer_shapes(),
            values: vec![0.0; arch.parameter_count()],
        }
    }

    /// I.i.d. uniform draws on `[-scale, scale]`.
    pub fn random<R: Rng>(arch: &MlpArchitecture, scale: f64, rng: &mut R) -> Self {
        let mut p = Self::zeros(arch);
        for v in &mut p.values {
            *v = rng.gen_range(-scale..=scale);
        }
        p
    }

    pub fn from_values(arch: &MlpArchitecture, values: Vec<f64>) -> Result<Self> {
        if values.len() != arch.parameter_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} parameters, got {}",
                arch.parameter_count(),
                values.len()
            )));
        }
        Ok(Self {
            shapes: arch.layer_shapes(),
            values,
        })
    }

    pub fn shapes(&self) -> &[(usize, usize)] {
        &self.shapes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn layer_count(&self) -> usize {
        self.shapes.len()
    }

    fn offset(&self, layer: usize) -> usize {
        self.shapes[..layer].iter().map(|(r, c)| r * c + r).sum()
    }

    pub fn weights(&self, layer: usize) -> &[f64] {
        let (r, c) = self.shapes[layer];
        let o = self.offset(layer);
        &self.values[o..o + r * c]
    }

    pub fn biases(&self, layer: usize) -> &[f64] {
        let (r, c) = self.shapes[layer];
        let o = self.offset(layer) + r * c;
        &self.values[o..o + r]
    }

    pub fn weights_mut(&mut self, layer: usize) -> &mut [f64] {
        let (r, c) = self.shapes[layer];
        let o = self.offset(layer);
        &mut self.values[o..o + r * c]
    }

    pub fn biases_mut(&mut self, layer: usize) -> &mut [f64] {
        let (r, c) = self.shapes[layer];
        let o = self.offset(layer) + r * c;
        &mut self.values[o..o + r]
    }

    pub fn check(&self, arch: &MlpArchitecture) -> Result<()> {
        if self.shapes != arch.layer_shapes() {
            return Err(Error::ShapeMismatch(format!(
                "parameters have layers {:?}, architecture expects {:?}",
                self.shapes,
                arch.layer_shapes()
            )));
        }
        if let Some(i) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "parameter {i} is {}",
                self.values[i]
            )));
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Input vector for cell index `k` (1-based) and state `x`.
pub fn encode_input(k: usize, x: &Configuration, encoding: Encoding) -> Result<Vec<f64>> {
    x.check_cell(k)?;
    let n = x.n_cells();
    let mut v: Vec<f64> = x
        .bits()
        .into_iter()
        .map(|b| if b { 1.0 } else { 0.0 })
        .collect();
    match encoding {
        Encoding::OneHot => v.extend((1..=n).map(|i| if i == k { 1.0 } else { 0.0 })),
        Encoding::Scalar => v.push(k as f64 / n as f64),
    }
    Ok(v)
}

/// Evaluates every layer, returning activations `[input, hidden…, output]`.
fn activations(params: &MlpParameters, input: &[f64]) -> Vec<Vec<f64>> {
    let last = params.layer_count() - 1;
    let mut acts = Vec::with_capacity(params.layer_count() + 1);
    acts.push(input.to_vec());
    for layer in 0..params.layer_count() {
        let (rows, cols) = params.shapes[layer];
        let w = params.weights(layer);
        let b = params.biases(layer);
        let prev = &acts[layer];
        let out: Vec<f64> = (0..rows)
            .map(|r| {
                let z = w[r * cols..(r + 1) * cols]
                    .iter()
                    .zip(prev)
                    .fold(b[r], |acc, (wi, xi)| acc + wi * xi);
                if layer == last {
                    z
                } else {
                    sigmoid(z)
                }
            })
            .collect();
        acts.push(out);
    }
    acts
}

/// Network output for one input vector.
pub fn forward(arch: &MlpArchitecture, params: &MlpParameters, input: &[f64]) -> Result<Vec<f64>> {
    params.check(arch)?;
    if input.len() != arch.input_width() {
        return Err(Error::ShapeMismatch(format!(
            "input has {} entries, architecture expects {}",
            input.len(),
            arch.input_width()
        )));
    }
    Ok(forward_unchecked(params, input))
}

pub(crate) fn forward_unchecked(params: &MlpParameters, input: &[f64]) -> Vec<f64> {
    activations(params, input)
        .pop()
        .expect("at least one layer")
}

/// One supervised pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub input: Vec<f64>,
    pub target: Vec<f64>,
}

fn check_set(arch: &MlpArchitecture, params: &MlpParameters, set: &[Sample]) -> Result<()> {
    params.check(arch)?;
    if set.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    for s in set {
        if s.input.len() != arch.input_width() || s.target.len() != arch.n_outputs() {
            return Err(Error::ShapeMismatch(format!(
                "sample of widths ({}, {}) for architecture ({}, {})",
                s.input.len(),
                s.target.len(),
                arch.input_width(),
                arch.n_outputs()
            )));
        }
    }
    Ok(())
}

/// `MSE = 1/(2·|set|) · Σ_k ‖D_k − Y_k‖²`.
pub fn mse(arch: &MlpArchitecture, params: &MlpParameters, set: &[Sample]) -> Result<f64> {
    check_set(arch, params, set)?;
    Ok(mse_unchecked(params, set))
}

fn mse_unchecked(params: &MlpParameters, set: &[Sample]) -> f64 {
    let total: f64 = set
        .iter()
        .map(|s| {
            forward_unchecked(params, &s.input)
                .iter()
                .zip(&s.target)
                .map(|(y, d)| (d - y) * (d - y))
                .sum::<f64>()
        })
        .sum();
    total / (2.0 * set.len() as f64)
}

/// MSE and its gradient with respect to the flattened parameters, by
/// backpropagation.
pub fn mse_and_gradient(
    arch: &MlpArchitecture,
    params: &MlpParameters,
    set: &[Sample],
) -> Result<(f64, Vec<f64>)> {
    check_set(arch, params, set)?;
    let mut grad = vec![0.0; params.values.len()];
    let loss = accumulate_gradient(params, set, &mut grad);
    Ok((loss, grad))
}

/// Writes the gradient into `grad` and returns the MSE. Shapes must already
/// be validated.
pub(crate) fn accumulate_gradient(params: &MlpParameters, set: &[Sample], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let scale = 1.0 / set.len() as f64;
    let n_layers = params.layer_count();
    let offsets: Vec<usize> = (0..n_layers).map(|l| params.offset(l)).collect();
    let mut loss = 0.0;

    for sample in set {
        let acts = activations(params, &sample.input);
        let output = &acts[n_layers];
        // dMSE/dy for the linear output layer
        let mut delta: Vec<f64> = output
            .iter()
            .zip(&sample.target)
            .map(|(y, d)| {
                loss += (d - y) * (d - y);
                (y - d) * scale
            })
            .collect();

        for layer in (0..n_layers).rev() {
            let (rows, cols) = params.shapes[layer];
            let prev = &acts[layer];
            let o = offsets[layer];
            for r in 0..rows {
                let dr = delta[r];
                let row = &mut grad[o + r * cols..o + (r + 1) * cols];
                for (g, x) in row.iter_mut().zip(prev) {
                    *g += dr * x;
                }
                grad[o + rows * cols + r] += dr;
            }
            if layer > 0 {
                let w = params.weights(layer);
                delta = (0..cols)
                    .map(|c| {
                        let back: f64 = (0..rows).map(|r| w[r * cols + c] * delta[r]).sum();
                        let a = prev[c];
                        back * a * (1.0 - a)
                    })
                    .collect();
            }
        }
    }
    loss * scale / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            encode_input(2, &cfg("101"), Encoding::OneHot).unwrap(),
            [1.0, 0.0, 1.0, 0.0, 1.0, 0.0]
        );
        assert_eq!(
            encode_input(3, &cfg("000"), Encoding::Scalar).unwrap(),
            [0.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(
            encode_input(1, &cfg("01"), Encoding::OneHot).unwrap(),
            [0.0, 1.0, 1.0, 0.0]
        );
        assert!(encode_input(4, &cfg("010"), Encoding::OneHot).is_err());
        assert!(encode_input(0, &cfg("010"), Encoding::Scalar).is_err());
    }

    #[test]
    fn architecture_widths() {
        let a = MlpArchitecture::new(3, Encoding::OneHot, vec![8, 4]).unwrap();
        assert_eq!(a.widths(), [6, 8, 4, 3]);
        assert_eq!(a.layer_shapes(), [(8, 6), (4, 8), (3, 4)]);
        assert_eq!(a.parameter_count(), 8 * 6 + 8 + 4 * 8 + 4 + 3 * 4 + 3);
        let s = MlpArchitecture::new(3, Encoding::Scalar, vec![10]).unwrap();
        assert_eq!(s.input_width(), 4);
        assert!(MlpArchitecture::new(3, Encoding::OneHot, vec![]).is_err());
        assert!(MlpArchitecture::new(3, Encoding::OneHot, vec![1, 2, 3]).is_err());
        assert!(MlpArchitecture::new(3, Encoding::OneHot, vec![0]).is_err());
    }

    #[test]
    fn zero_network_outputs_zero() {
        let a = MlpArchitecture::new(3, Encoding::OneHot, vec![5]).unwrap();
        let p = MlpParameters::zeros(&a);
        let y = forward(&a, &p, &[1.0; 6]).unwrap();
        assert_eq!(y, [0.0; 3]);
    }

    #[test]
    fn single_hidden_neuron_closed_form() {
        let a = MlpArchitecture::new(1, Encoding::OneHot, vec![1]).unwrap();
        let mut p = MlpParameters::zeros(&a);
        let (b, w) = (0.7, -1.3);
        p.biases_mut(0)[0] = b;
        p.weights_mut(1)[0] = w;
        let y = forward(&a, &p, &[1.0, 1.0]).unwrap();
        assert!((y[0] - w * sigmoid(b)).abs() < 1e-15);
    }

    #[test]
    fn forward_rejects_bad_input() {
        let a = MlpArchitecture::new(2, Encoding::OneHot, vec![3]).unwrap();
        let mut p = MlpParameters::zeros(&a);
        assert!(forward(&a, &p, &[0.0; 3]).is_err());
        p.values_mut()[0] = f64::NAN;
        assert!(matches!(
            forward(&a, &p, &[0.0; 4]),
            Err(Error::NonFinite(_))
        ));
        let other = MlpArchitecture::new(2, Encoding::OneHot, vec![4]).unwrap();
        assert!(forward(&other, &MlpParameters::zeros(&a), &[0.0; 4]).is_err());
    }

    #[test]
    fn mse_examples() {
        // zero network predicts (0,0)
        let a = MlpArchitecture::new(2, Encoding::OneHot, vec![2]).unwrap();
        let p = MlpParameters::zeros(&a);
        let pair = |t: [f64; 2]| Sample {
            input: vec![0.0; 4],
            target: t.to_vec(),
        };
        assert_eq!(mse(&a, &p, &[pair([0.0, 0.0])]).unwrap(), 0.0);
        assert_eq!(mse(&a, &p, &[pair([1.0, 0.0])]).unwrap(), 0.5);
        assert_eq!(
            mse(&a, &p, &[pair([1.0, 0.0]), pair([0.0, -1.0])]).unwrap(),
            0.5
        );
        assert!(matches!(mse(&a, &p, &[]), Err(Error::EmptyTrainingSet)));
    }

    #[test]
    fn gradient_loss_matches_mse() {
        let a = MlpArchitecture::new(3, Encoding::OneHot, vec![4, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = MlpParameters::random(&a, 0.8, &mut rng);
        let set: Vec<Sample> = (0..5)
            .map(|_| Sample {
                input: (0..6).map(|_| rng.gen_range(0.0..1.0)).collect(),
                target: (0..3).map(|_| rng.gen_range(0.0..1.0)).collect(),
            })
            .collect();
        let (loss, _) = mse_and_gradient(&a, &p, &set).unwrap();
        assert!((loss - mse(&a, &p, &set).unwrap()).abs() < 1e-15);
    }
}
