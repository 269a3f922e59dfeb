//! Soft-margin SVM trained by SMO-style pairwise coordinate ascent on
//! the dual, selecting the maximal violating pair each step. The box
//! constraint 0 <= a_i <= C and the balance constraint sum(a_i y_i) = 0
//! are maintained by every update.

use crate::corpus::Polarity;
use crate::error::{Error, Result};
use crate::hybrid::FeatureVector;

use super::kernel::{kernel_eval, KernelCache, KernelSpec};
use super::{check_dataset, CLASSES};

#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    kernel: KernelSpec,
    c: f64,
    support_vectors: Vec<FeatureVector>,
    alphas: Vec<f64>,
    sv_labels: Vec<Polarity>,
    bias: f64,
    converged: bool,
    iterations: usize,
}

impl SvmModel {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        kernel: KernelSpec,
        c: f64,
        support_vectors: Vec<FeatureVector>,
        alphas: Vec<f64>,
        sv_labels: Vec<Polarity>,
        bias: f64,
        converged: bool,
        iterations: usize,
    ) -> Result<Self> {
        if support_vectors.len() != alphas.len() || alphas.len() != sv_labels.len() {
            return Err(Error::Validation(
                "support vectors, alphas and labels must have equal lengths".into(),
            ));
        }
        if alphas.iter().any(|&a| !(a > 0.0 && a <= c + 1e-9)) {
            return Err(Error::Validation(
                "support vector coefficients must lie in (0, C]".into(),
            ));
        }
        Ok(SvmModel {
            kernel,
            c,
            support_vectors,
            alphas,
            sv_labels,
            bias,
            converged,
            iterations,
        })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn support_vectors(&self) -> &[FeatureVector] {
        &self.support_vectors
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn sv_labels(&self) -> &[Polarity] {
        &self.sv_labels
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

struct Smo<'a> {
    x: &'a [FeatureVector],
    y: Vec<f64>,
    c: f64,
    tol: f64,
    alpha: Vec<f64>,
    u: Vec<f64>,
    cache: KernelCache<'a>,
}

impl<'a> Smo<'a> {
    fn new(x: &'a [FeatureVector], y: Vec<f64>, c: f64, tol: f64, spec: &KernelSpec) -> Self {
        let n = x.len();
        Smo {
            x,
            y,
            c,
            tol,
            alpha: vec![0.0; n],
            u: vec![0.0; n],
            cache: KernelCache::new(spec, x),
        }
    }

    fn g(&self, t: usize) -> f64 {
        self.y[t] - self.u[t]
    }

    fn in_up(&self, t: usize) -> bool {
        (self.y[t] > 0.0 && self.alpha[t] < self.c)
            || (self.y[t] < 0.0 && self.alpha[t] > 0.0)
    }

    fn in_low(&self, t: usize) -> bool {
        (self.y[t] > 0.0 && self.alpha[t] > 0.0)
            || (self.y[t] < 0.0 && self.alpha[t] < self.c)
    }

    /// (max G over I_up, its index, min G over I_low, its index).
    fn violation_bounds(&self) -> (f64, Option<usize>, f64, Option<usize>) {
        let mut up_val = f64::NEG_INFINITY;
        let mut up_idx = None;
        let mut low_val = f64::INFINITY;
        let mut low_idx = None;
        for t in 0..self.x.len() {
            let g = self.g(t);
            if self.in_up(t) && g > up_val {
                up_val = g;
                up_idx = Some(t);
            }
            if self.in_low(t) && g < low_val {
                low_val = g;
                low_idx = Some(t);
            }
        }
        (up_val, up_idx, low_val, low_idx)
    }

    fn select_pair(&self) -> Option<(usize, usize)> {
        let (up_val, up_idx, low_val, low_idx) = self.violation_bounds();
        match (up_idx, low_idx) {
            (Some(i), Some(j)) if up_val - low_val >= self.tol => Some((i, j)),
            _ => None,
        }
    }

    fn step(&mut self, i: usize, j: usize) {
        let row_i = self.cache.row(i);
        let row_j = self.cache.row(j);
        let eta = (row_i[i] + row_j[j] - 2.0 * row_i[j]).max(1e-12);
        let mut t = (self.g(i) - self.g(j)) / eta;
        let cap_i = if self.y[i] > 0.0 {
            self.c - self.alpha[i]
        } else {
            self.alpha[i]
        };
        let cap_j = if self.y[j] > 0.0 {
            self.alpha[j]
        } else {
            self.c - self.alpha[j]
        };
        t = t.min(cap_i).min(cap_j);
        if t <= 0.0 {
            return;
        }
        self.alpha[i] = (self.alpha[i] + self.y[i] * t).clamp(0.0, self.c);
        self.alpha[j] = (self.alpha[j] - self.y[j] * t).clamp(0.0, self.c);
        for (idx, u) in self.u.iter_mut().enumerate() {
            *u += t * (row_i[idx] - row_j[idx]);
        }
    }

    fn compute_bias(&self) -> f64 {
        let mut total = 0.0;
        let mut free = 0usize;
        for t in 0..self.x.len() {
            if self.alpha[t] > 0.0 && self.alpha[t] < self.c {
                total += self.g(t);
                free += 1;
            }
        }
        if free > 0 {
            return total / free as f64;
        }
        let (up_val, up_idx, low_val, low_idx) = self.violation_bounds();
        match (up_idx, low_idx) {
            (Some(_), Some(_)) => 0.5 * (up_val + low_val),
            (Some(_), None) => up_val,
            (None, Some(_)) => low_val,
            (None, None) => 0.0,
        }
    }
}

pub fn svm_train(
    features: &[FeatureVector],
    labels: &[Polarity],
    c: f64,
    kernel: KernelSpec,
    tol: f64,
    max_passes: usize,
) -> Result<SvmModel> {
    check_dataset(features, labels)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Validation(format!("C must be positive, got {c}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Validation(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if max_passes < 1 {
        return Err(Error::Validation("max_passes must be at least 1".into()));
    }

    let y: Vec<f64> = labels.iter().map(|l| l.target()).collect();
    let mut smo = Smo::new(features, y, c, tol, &kernel);
    let step_cap = max_passes.saturating_mul(features.len()).max(1);
    let mut steps = 0usize;
    let converged = loop {
        if steps >= step_cap {
            break false;
        }
        match smo.select_pair() {
            None => break true,
            Some((i, j)) => {
                smo.step(i, j);
                steps += 1;
            }
        }
    };
    let bias = smo.compute_bias();

    let mut support_vectors = Vec::new();
    let mut alphas = Vec::new();
    let mut sv_labels = Vec::new();
    for (t, &a) in smo.alpha.iter().enumerate() {
        if a > 0.0 {
            support_vectors.push(features[t].clone());
            alphas.push(a);
            sv_labels.push(labels[t]);
        }
    }

    Ok(SvmModel {
        kernel,
        c,
        support_vectors,
        alphas,
        sv_labels,
        bias,
        converged,
        iterations: steps,
    })
}

/// Decision value f(x) + b.
pub fn svm_decision(model: &SvmModel, x: &FeatureVector) -> f64 {
    let mut value = model.bias;
    for ((sv, &a), &label) in model
        .support_vectors
        .iter()
        .zip(&model.alphas)
        .zip(&model.sv_labels)
    {
        value += a * label.target() * kernel_eval(&model.kernel, sv, x);
    }
    value
}

pub fn svm_predict(model: &SvmModel, x: &FeatureVector) -> Polarity {
    if svm_decision(model, x) >= 0.0 {
        CLASSES[0]
    } else {
        CLASSES[1]
    }
}

/// Dual objective L(a) = sum a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij.
pub fn dual_objective(
    features: &[FeatureVector],
    labels: &[Polarity],
    alphas: &[f64],
    spec: &KernelSpec,
) -> f64 {
    let y: Vec<f64> = labels.iter().map(|l| l.target()).collect();
    let mut linear = 0.0;
    let mut quad = 0.0;
    for i in 0..alphas.len() {
        linear += alphas[i];
        for j in 0..alphas.len() {
            if alphas[i] != 0.0 && alphas[j] != 0.0 {
                quad += alphas[i] * alphas[j] * y[i] * y[j]
                    * kernel_eval(spec, &features[i], &features[j]);
            }
        }
    }
    linear - 0.5 * quad
}
