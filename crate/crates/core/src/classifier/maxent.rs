//! Maximum-entropy (softmax) classifier trained by batch gradient
//! ascent on the L2-regularized conditional log-likelihood, with
//! Armijo backtracking line search. Weights are kept per class; the
//! intercepts stay unregularized.

use crate::corpus::Polarity;
use crate::error::{Error, Result};
use crate::hybrid::FeatureVector;

use super::{check_dataset, class_index, CLASSES};

const ARMIJO_C1: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    GradientBelowTol,
    MaxIterations,
    NoLineSearchProgress,
}

impl StopReason {
    pub fn describe(self) -> &'static str {
        match self {
            StopReason::GradientBelowTol => "gradient below tolerance",
            StopReason::MaxIterations => "iteration limit reached",
            StopReason::NoLineSearchProgress => "line search stalled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntModel {
    weights: [Vec<f64>; 2],
    intercepts: [f64; 2],
    l2: f64,
    stop: StopReason,
    iterations: usize,
}

impl MaxEntModel {
    pub fn from_parts(
        weights: [Vec<f64>; 2],
        intercepts: [f64; 2],
        l2: f64,
        stop: StopReason,
        iterations: usize,
    ) -> Result<Self> {
        if weights[0].len() != weights[1].len() {
            return Err(Error::Validation(
                "class weight vectors must have equal dimension".into(),
            ));
        }
        Ok(MaxEntModel {
            weights,
            intercepts,
            l2,
            stop,
            iterations,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weights(&self, class: usize) -> &[f64] {
        &self.weights[class]
    }

    pub fn intercepts(&self) -> &[f64; 2] {
        &self.intercepts
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn converged(&self) -> bool {
        self.stop == StopReason::GradientBelowTol
    }

    fn scores(&self, x: &FeatureVector) -> [f64; 2] {
        [
            x.dot_slice(&self.weights[0]) + self.intercepts[0],
            x.dot_slice(&self.weights[1]) + self.intercepts[1],
        ]
    }
}

fn softmax2(scores: [f64; 2]) -> [f64; 2] {
    let max = scores[0].max(scores[1]);
    let e = [(scores[0] - max).exp(), (scores[1] - max).exp()];
    let total = e[0] + e[1];
    [e[0] / total, e[1] / total]
}

fn log_sum_exp2(scores: [f64; 2]) -> f64 {
    let max = scores[0].max(scores[1]);
    max + ((scores[0] - max).exp() + (scores[1] - max).exp()).ln()
}

fn regularizer(l2: f64, weights: &[Vec<f64>; 2]) -> f64 {
    let norm_sq: f64 = weights
        .iter()
        .flat_map(|w| w.iter())
        .map(|v| v * v)
        .sum();
    0.5 * l2 * norm_sq
}

#[cfg(test)]
fn log_likelihood(
    features: &[FeatureVector],
    labels: &[Polarity],
    l2: f64,
    weights: &[Vec<f64>; 2],
    intercepts: &[f64; 2],
) -> f64 {
    let mut ll = 0.0;
    for (x, &label) in features.iter().zip(labels) {
        let scores = [
            x.dot_slice(&weights[0]) + intercepts[0],
            x.dot_slice(&weights[1]) + intercepts[1],
        ];
        ll += scores[class_index(label)] - log_sum_exp2(scores);
    }
    ll - regularizer(l2, weights)
}

struct Gradient {
    weights: [Vec<f64>; 2],
    intercepts: [f64; 2],
}

fn objective_and_gradient(
    features: &[FeatureVector],
    labels: &[Polarity],
    l2: f64,
    weights: &[Vec<f64>; 2],
    intercepts: &[f64; 2],
    base_scores: &mut Vec<[f64; 2]>,
) -> (f64, Gradient) {
    let dim = weights[0].len();
    let mut ll = 0.0;
    let mut grad = Gradient {
        weights: [vec![0.0; dim], vec![0.0; dim]],
        intercepts: [0.0; 2],
    };
    base_scores.clear();
    for (x, &label) in features.iter().zip(labels) {
        let scores = [
            x.dot_slice(&weights[0]) + intercepts[0],
            x.dot_slice(&weights[1]) + intercepts[1],
        ];
        base_scores.push(scores);
        ll += scores[class_index(label)] - log_sum_exp2(scores);
        let probs = softmax2(scores);
        for c in 0..2 {
            let coeff = if class_index(label) == c { 1.0 } else { 0.0 } - probs[c];
            x.add_to(&mut grad.weights[c], coeff);
            grad.intercepts[c] += coeff;
        }
    }
    for c in 0..2 {
        for (g, w) in grad.weights[c].iter_mut().zip(&weights[c]) {
            *g -= l2 * w;
        }
    }
    (ll - regularizer(l2, weights), grad)
}

fn train_impl(
    features: &[FeatureVector],
    labels: &[Polarity],
    l2_strength: f64,
    max_iter: usize,
    tol: f64,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<MaxEntModel> {
    let dim = check_dataset(features, labels)?;
    if max_iter < 1 {
        return Err(Error::Validation("max_iter must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Validation(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(l2_strength >= 0.0 && l2_strength.is_finite()) {
        return Err(Error::Validation(format!(
            "l2 strength must be finite and nonnegative, got {l2_strength}"
        )));
    }

    let mut weights = [vec![0.0f64; dim], vec![0.0f64; dim]];
    let mut intercepts = [0.0f64; 2];
    let mut base_scores: Vec<[f64; 2]> = Vec::with_capacity(features.len());
    let mut direction_scores: Vec<[f64; 2]> = Vec::with_capacity(features.len());
    let mut step_init = 1.0f64;
    let mut iterations = 0usize;
    let mut stop = StopReason::MaxIterations;

    for _ in 0..max_iter {
        let (objective, grad) = objective_and_gradient(
            features,
            labels,
            l2_strength,
            &weights,
            &intercepts,
            &mut base_scores,
        );
        if !objective.is_finite() {
            return Err(Error::NonFinite(
                "maxent objective overflowed during training".into(),
            ));
        }
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(objective);
        }

        let grad_inf = grad
            .weights
            .iter()
            .flat_map(|w| w.iter())
            .chain(grad.intercepts.iter())
            .fold(0.0f64, |acc, g| acc.max(g.abs()));
        if grad_inf < tol {
            stop = StopReason::GradientBelowTol;
            break;
        }

        direction_scores.clear();
        for x in features {
            direction_scores.push([
                x.dot_slice(&grad.weights[0]) + grad.intercepts[0],
                x.dot_slice(&grad.weights[1]) + grad.intercepts[1],
            ]);
        }
        let w_norm_sq: f64 = weights.iter().flat_map(|w| w.iter()).map(|v| v * v).sum();
        let wg: f64 = weights
            .iter()
            .zip(&grad.weights)
            .flat_map(|(w, g)| w.iter().zip(g.iter()))
            .map(|(w, g)| w * g)
            .sum();
        let gw_norm_sq: f64 = grad
            .weights
            .iter()
            .flat_map(|g| g.iter())
            .map(|v| v * v)
            .sum();
        let grad_norm_sq =
            gw_norm_sq + grad.intercepts[0] * grad.intercepts[0] + grad.intercepts[1] * grad.intercepts[1];

        let objective_at = |step: f64| -> f64 {
            let mut ll = 0.0;
            for ((scores, dir), &label) in base_scores.iter().zip(&direction_scores).zip(labels) {
                let moved = [scores[0] + step * dir[0], scores[1] + step * dir[1]];
                ll += moved[class_index(label)] - log_sum_exp2(moved);
            }
            ll - 0.5 * l2_strength * (w_norm_sq + 2.0 * step * wg + step * step * gw_norm_sq)
        };

        let mut step = step_init;
        let mut accepted = false;
        for _ in 0..MAX_BACKTRACKS {
            let trial = objective_at(step);
            if trial.is_finite() && trial >= objective + ARMIJO_C1 * step * grad_norm_sq {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            stop = StopReason::NoLineSearchProgress;
            break;
        }
        for c in 0..2 {
            for (w, g) in weights[c].iter_mut().zip(&grad.weights[c]) {
                *w += step * g;
            }
            intercepts[c] += step * grad.intercepts[c];
        }
        iterations += 1;
        step_init = (step * 2.0).min(1e6);
    }

    Ok(MaxEntModel {
        weights,
        intercepts,
        l2: l2_strength,
        stop,
        iterations,
    })
}

pub fn maxent_train(
    features: &[FeatureVector],
    labels: &[Polarity],
    l2_strength: f64,
    max_iter: usize,
    tol: f64,
) -> Result<MaxEntModel> {
    train_impl(features, labels, l2_strength, max_iter, tol, None)
}

/// The penalized log-likelihood and its gradient at an arbitrary
/// parameter point: the quantity the trainer ascends. Exposed so
/// external checks can difference the objective against the gradient.
pub fn maxent_objective_and_gradient(
    features: &[FeatureVector],
    labels: &[Polarity],
    l2_strength: f64,
    weights: &[Vec<f64>; 2],
    intercepts: &[f64; 2],
) -> (f64, [Vec<f64>; 2], [f64; 2]) {
    let mut scratch = Vec::with_capacity(features.len());
    let (objective, grad) = objective_and_gradient(
        features,
        labels,
        l2_strength,
        weights,
        intercepts,
        &mut scratch,
    );
    (objective, grad.weights, grad.intercepts)
}

/// Class probabilities in CLASSES order; always sums to 1.
pub fn maxent_predict_proba(model: &MaxEntModel, x: &FeatureVector) -> [f64; 2] {
    softmax2(model.scores(x))
}

pub fn maxent_predict(model: &MaxEntModel, x: &FeatureVector) -> Polarity {
    let probs = maxent_predict_proba(model, x);
    if probs[0] >= probs[1] {
        CLASSES[0]
    } else {
        CLASSES[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(values: &[f64]) -> FeatureVector {
        FeatureVector::from_dense(values.to_vec())
    }

    fn separable_toy() -> (Vec<FeatureVector>, Vec<Polarity>) {
        (
            vec![
                dense(&[2.0, 1.0]),
                dense(&[1.5, -0.5]),
                dense(&[-2.0, 0.5]),
                dense(&[-1.0, -1.0]),
            ],
            vec![
                Polarity::Positive,
                Polarity::Positive,
                Polarity::Negative,
                Polarity::Negative,
            ],
        )
    }

    #[test]
    fn zero_weights_give_uniform_probabilities() {
        let model = MaxEntModel::from_parts(
            [vec![0.0, 0.0], vec![0.0, 0.0]],
            [0.0, 0.0],
            1.0,
            StopReason::GradientBelowTol,
            0,
        )
        .unwrap();
        let probs = maxent_predict_proba(&model, &dense(&[3.0, -1.0]));
        assert_eq!(probs, [0.5, 0.5]);
        assert_eq!(maxent_predict(&model, &dense(&[3.0, -1.0])), Polarity::Positive);
    }

    #[test]
    fn weight_gap_recovers_the_sigmoid_closed_form() {
        let delta = 0.7;
        let model = MaxEntModel::from_parts(
            [vec![delta], vec![0.0]],
            [0.0, 0.0],
            0.0,
            StopReason::GradientBelowTol,
            0,
        )
        .unwrap();
        let probs = maxent_predict_proba(&model, &dense(&[1.0]));
        let expected = 1.0 / (1.0 + (-delta as f64).exp());
        assert!((probs[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn separable_toy_reaches_full_training_accuracy() {
        let (features, labels) = separable_toy();
        let model = maxent_train(&features, &labels, 1e-4, 5000, 1e-8).unwrap();
        for (x, &label) in features.iter().zip(&labels) {
            assert_eq!(maxent_predict(&model, x), label);
        }
    }

    #[test]
    fn identical_features_with_balanced_labels_stop_at_uniform() {
        let features = vec![dense(&[1.0]); 4];
        let labels = vec![
            Polarity::Positive,
            Polarity::Negative,
            Polarity::Positive,
            Polarity::Negative,
        ];
        let model = maxent_train(&features, &labels, 1.0, 100, 1e-6).unwrap();
        assert_eq!(model.iterations(), 0);
        assert_eq!(model.stop_reason(), StopReason::GradientBelowTol);
        let probs = maxent_predict_proba(&model, &dense(&[1.0]));
        assert_eq!(probs, [0.5, 0.5]);
    }

    #[test]
    fn analytic_gradient_matches_central_finite_differences() {
        let features = vec![
            dense(&[0.8, -0.3]),
            dense(&[-1.2, 0.4]),
            dense(&[0.1, 2.0]),
        ];
        let labels = vec![Polarity::Positive, Polarity::Negative, Polarity::Negative];
        let l2 = 0.3;
        let weights = [vec![0.25, -0.6], vec![-0.15, 0.45]];
        let intercepts = [0.2, -0.1];
        let mut scratch = Vec::new();
        let (_, grad) =
            objective_and_gradient(&features, &labels, l2, &weights, &intercepts, &mut scratch);

        let eps = 1e-5;
        for c in 0..2 {
            for k in 0..2 {
                let mut plus = weights.clone();
                plus[c][k] += eps;
                let mut minus = weights.clone();
                minus[c][k] -= eps;
                let fd = (log_likelihood(&features, &labels, l2, &plus, &intercepts)
                    - log_likelihood(&features, &labels, l2, &minus, &intercepts))
                    / (2.0 * eps);
                let analytic = grad.weights[c][k];
                let scale = fd.abs().max(analytic.abs()).max(1e-8);
                assert!((fd - analytic).abs() / scale < 1e-5);
            }
            let mut plus = intercepts;
            plus[c] += eps;
            let mut minus = intercepts;
            minus[c] -= eps;
            let fd = (log_likelihood(&features, &labels, l2, &weights, &plus)
                - log_likelihood(&features, &labels, l2, &weights, &minus))
                / (2.0 * eps);
            let analytic = grad.intercepts[c];
            let scale = fd.abs().max(analytic.abs()).max(1e-8);
            assert!((fd - analytic).abs() / scale < 1e-5);
        }
    }

    #[test]
    fn objective_is_non_decreasing_across_accepted_steps() {
        let (features, labels) = separable_toy();
        let mut trace = Vec::new();
        train_impl(&features, &labels, 0.05, 200, 1e-9, Some(&mut trace)).unwrap();
        assert!(trace.len() > 2);
        for pair in trace.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12);
        }
    }

    #[test]
    fn gradient_norm_is_below_tol_after_convergence() {
        let (features, labels) = separable_toy();
        let tol = 1e-6;
        let model = maxent_train(&features, &labels, 0.5, 5000, tol).unwrap();
        assert_eq!(model.stop_reason(), StopReason::GradientBelowTol);
        let weights = [model.weights(0).to_vec(), model.weights(1).to_vec()];
        let mut scratch = Vec::new();
        let (_, grad) = objective_and_gradient(
            &features,
            &labels,
            model.l2(),
            &weights,
            model.intercepts(),
            &mut scratch,
        );
        let grad_inf = grad
            .weights
            .iter()
            .flat_map(|w| w.iter())
            .chain(grad.intercepts.iter())
            .fold(0.0f64, |acc, g| acc.max(g.abs()));
        assert!(grad_inf < tol);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let (features, labels) = separable_toy();
        let model = maxent_train(&features, &labels, 1e-4, 1, 1e-12).unwrap();
        assert_eq!(model.stop_reason(), StopReason::MaxIterations);
        assert!(!model.converged());
        assert_eq!(model.iterations(), 1);
    }

    #[test]
    fn probabilities_sum_to_one_inside_the_open_unit_interval() {
        let (features, labels) = separable_toy();
        let model = maxent_train(&features, &labels, 0.2, 500, 1e-7).unwrap();
        for x in [
            dense(&[5.0, 5.0]),
            dense(&[-5.0, 2.0]),
            dense(&[0.0, 0.0]),
            dense(&[8.0, -4.0]),
        ] {
            let probs = maxent_predict_proba(&model, &x);
            assert!((probs[0] + probs[1] - 1.0).abs() < 1e-9);
            assert!(probs[0] > 0.0 && probs[0] < 1.0);
            assert!(probs[1] > 0.0 && probs[1] < 1.0);
        }
        let saturated = maxent_predict_proba(&model, &dense(&[1e6, -1e6]));
        assert!((0.0..=1.0).contains(&saturated[0]));
        assert!((saturated[0] + saturated[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn from_parts_rejects_mismatched_dimensions() {
        let err = MaxEntModel::from_parts(
            [vec![0.0], vec![0.0, 1.0]],
            [0.0, 0.0],
            1.0,
            StopReason::GradientBelowTol,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn invalid_hyperparameters_are_rejected() {
        let (features, labels) = separable_toy();
        assert!(maxent_train(&features, &labels, 1.0, 0, 1e-4).is_err());
        assert!(maxent_train(&features, &labels, 1.0, 10, 0.0).is_err());
        assert!(maxent_train(&features, &labels, -1.0, 10, 1e-4).is_err());
    }
}
