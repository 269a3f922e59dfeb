//! Multinomial naive Bayes over nonnegative count-like features, with
//! add-one smoothing, kept in log space. Real-valued inputs are read
//! as fractional counts.

use crate::corpus::Polarity;
use crate::error::{Error, Result};
use crate::hybrid::FeatureVector;

use super::{check_dataset, class_index, CLASSES};

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    log_prior: [f64; 2],
    log_cond: [Vec<f64>; 2],
}

impl NaiveBayesModel {
    pub fn from_parts(log_prior: [f64; 2], log_cond: [Vec<f64>; 2]) -> Result<Self> {
        if log_cond[0].len() != log_cond[1].len() {
            return Err(Error::Validation(
                "class conditionals must have equal dimension".into(),
            ));
        }
        Ok(NaiveBayesModel {
            log_prior,
            log_cond,
        })
    }

    pub fn dim(&self) -> usize {
        self.log_cond[0].len()
    }

    pub fn log_prior(&self) -> &[f64; 2] {
        &self.log_prior
    }

    pub fn log_cond(&self, class: usize) -> &[f64] {
        &self.log_cond[class]
    }

    /// Unnormalized log posterior per class, in CLASSES order.
    pub fn log_posterior(&self, x: &FeatureVector) -> [f64; 2] {
        [
            self.log_prior[0] + x.dot_slice(&self.log_cond[0]),
            self.log_prior[1] + x.dot_slice(&self.log_cond[1]),
        ]
    }
}

pub fn nb_train(features: &[FeatureVector], labels: &[Polarity]) -> Result<NaiveBayesModel> {
    let dim = check_dataset(features, labels)?;
    if dim == 0 {
        return Err(Error::Validation(
            "naive Bayes needs at least one feature dimension".into(),
        ));
    }
    let mut mass = [vec![0.0f64; dim], vec![0.0f64; dim]];
    let mut doc_counts = [0usize; 2];
    for (x, &label) in features.iter().zip(labels) {
        let mut negative = None;
        x.for_each_entry(|index, value| {
            if value < 0.0 && negative.is_none() {
                negative = Some((index, value));
            }
        });
        if let Some((index, value)) = negative {
            return Err(Error::NegativeFeature { index, value });
        }
        let c = class_index(label);
        doc_counts[c] += 1;
        x.add_to(&mut mass[c], 1.0);
    }
    let n = features.len() as f64;
    let b = dim as f64;
    let mut log_prior = [0.0f64; 2];
    let mut log_cond = [Vec::new(), Vec::new()];
    for c in 0..2 {
        log_prior[c] = (doc_counts[c] as f64 / n).ln();
        let class_mass: f64 = mass[c].iter().sum();
        log_cond[c] = mass[c]
            .iter()
            .map(|&m| ((m + 1.0) / (class_mass + b)).ln())
            .collect();
    }
    Ok(NaiveBayesModel {
        log_prior,
        log_cond,
    })
}

pub fn nb_predict(model: &NaiveBayesModel, x: &FeatureVector) -> Polarity {
    let scores = model.log_posterior(x);
    if scores[0] >= scores[1] {
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

    fn two_doc_training() -> (Vec<FeatureVector>, Vec<Polarity>) {
        (
            vec![dense(&[1.0, 0.0]), dense(&[0.0, 1.0])],
            vec![Polarity::Positive, Polarity::Negative],
        )
    }

    #[test]
    fn smoothed_conditional_matches_hand_computation() {
        let (features, labels) = two_doc_training();
        let model = nb_train(&features, &labels).unwrap();
        let p_a_given_pos = model.log_cond(0)[0].exp();
        assert!((p_a_given_pos - 2.0 / 3.0).abs() < 1e-12);
        let p_b_given_pos = model.log_cond(0)[1].exp();
        assert!((p_b_given_pos - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn conditionals_sum_to_one_per_class() {
        let features = vec![
            dense(&[0.5, 2.25, 0.0, 1.0]),
            dense(&[0.0, 0.1, 3.0, 0.4]),
            dense(&[1.5, 0.0, 0.25, 0.0]),
        ];
        let labels = vec![Polarity::Positive, Polarity::Negative, Polarity::Positive];
        let model = nb_train(&features, &labels).unwrap();
        for c in 0..2 {
            let total: f64 = model.log_cond(c).iter().map(|l| l.exp()).sum();
            assert!((total - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn unseen_term_keeps_positive_probability() {
        let (features, labels) = two_doc_training();
        let model = nb_train(&features, &labels).unwrap();
        let p_b_given_pos = model.log_cond(0)[1].exp();
        assert!(p_b_given_pos > 0.0);
        assert!((p_b_given_pos - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn balanced_classes_have_equal_priors() {
        let (features, labels) = two_doc_training();
        let model = nb_train(&features, &labels).unwrap();
        assert_eq!(model.log_prior()[0], model.log_prior()[1]);
    }

    #[test]
    fn predicts_the_matching_class_on_the_toy_set() {
        let (features, labels) = two_doc_training();
        let model = nb_train(&features, &labels).unwrap();
        assert_eq!(nb_predict(&model, &dense(&[1.0, 0.0])), Polarity::Positive);
        assert_eq!(nb_predict(&model, &dense(&[0.0, 1.0])), Polarity::Negative);
    }

    #[test]
    fn empty_vector_falls_back_to_the_prior() {
        let features = vec![
            dense(&[1.0, 0.0]),
            dense(&[0.0, 1.0]),
            dense(&[0.5, 0.5]),
        ];
        let labels = vec![Polarity::Negative, Polarity::Negative, Polarity::Positive];
        let model = nb_train(&features, &labels).unwrap();
        assert_eq!(nb_predict(&model, &dense(&[0.0, 0.0])), Polarity::Negative);
    }

    #[test]
    fn prior_tie_with_empty_vector_breaks_toward_positive() {
        let (features, labels) = two_doc_training();
        let model = nb_train(&features, &labels).unwrap();
        assert_eq!(nb_predict(&model, &dense(&[0.0, 0.0])), Polarity::Positive);
    }

    #[test]
    fn replicating_the_training_set_preserves_predictions() {
        let (features, labels) = two_doc_training();
        let model_once = nb_train(&features, &labels).unwrap();
        let mut features_ten = Vec::new();
        let mut labels_ten = Vec::new();
        for _ in 0..10 {
            features_ten.extend(features.iter().cloned());
            labels_ten.extend(labels.iter().copied());
        }
        let model_ten = nb_train(&features_ten, &labels_ten).unwrap();
        for probe in [
            dense(&[1.0, 0.0]),
            dense(&[0.0, 1.0]),
            dense(&[1.0, 1.0]),
            dense(&[0.25, 0.75]),
        ] {
            assert_eq!(nb_predict(&model_once, &probe), nb_predict(&model_ten, &probe));
        }
    }

    #[test]
    fn log_space_posterior_matches_brute_force_products() {
        let features = vec![
            dense(&[0.5, 1.25, 0.0, 2.0, 0.1]),
            dense(&[1.0, 0.0, 0.75, 0.0, 0.3]),
            dense(&[0.2, 0.4, 0.6, 0.8, 1.0]),
            dense(&[2.0, 0.0, 0.0, 1.5, 0.0]),
        ];
        let labels = vec![
            Polarity::Positive,
            Polarity::Negative,
            Polarity::Positive,
            Polarity::Negative,
        ];
        let model = nb_train(&features, &labels).unwrap();
        let probe = dense(&[0.3, 0.7, 1.1, 0.0, 0.9]);

        let mut brute = [0.0f64; 2];
        for c in 0..2 {
            let prior = model.log_prior()[c].exp();
            let mut product = prior;
            for (k, cond) in model.log_cond(c).iter().enumerate() {
                product *= cond.exp().powf(probe.get(k));
            }
            brute[c] = product;
        }
        let brute_total = brute[0] + brute[1];

        let logs = model.log_posterior(&probe);
        let max = logs[0].max(logs[1]);
        let exp = [(logs[0] - max).exp(), (logs[1] - max).exp()];
        let exp_total = exp[0] + exp[1];
        for c in 0..2 {
            assert!((brute[c] / brute_total - exp[c] / exp_total).abs() < 1e-9);
        }
    }

    #[test]
    fn negative_feature_is_rejected_with_its_location() {
        let features = vec![dense(&[1.0, -0.5]), dense(&[0.0, 1.0])];
        let labels = vec![Polarity::Positive, Polarity::Negative];
        let err = nb_train(&features, &labels).unwrap_err();
        match err {
            Error::NegativeFeature { index, value } => {
                assert_eq!(index, 1);
                assert_eq!(value, -0.5);
            }
            other => panic!("expected NegativeFeature, got {other:?}"),
        }
    }
}
