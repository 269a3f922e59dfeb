//! The four classifiers and a uniform train/predict dispatch over them.

pub mod kernel;
pub mod maxent;
pub mod naive_bayes;
pub mod svm;

pub use kernel::{kernel_eval, GammaChoice, KernelCache, KernelKind, KernelSpec};
pub use maxent::{
    maxent_objective_and_gradient, maxent_predict, maxent_predict_proba, maxent_train,
    MaxEntModel, StopReason,
};
pub use naive_bayes::{nb_predict, nb_train, NaiveBayesModel};
pub use svm::{dual_objective, svm_decision, svm_predict, svm_train, SvmModel};

use rayon::prelude::*;

use crate::corpus::Polarity;
use crate::error::{Error, Result};
use crate::hybrid::FeatureVector;

/// Fixed class order used for score arrays throughout.
pub const CLASSES: [Polarity; 2] = [Polarity::Positive, Polarity::Negative];

pub fn class_index(label: Polarity) -> usize {
    match label {
        Polarity::Positive => 0,
        Polarity::Negative => 1,
    }
}

pub(crate) fn check_dataset(features: &[FeatureVector], labels: &[Polarity]) -> Result<usize> {
    if features.is_empty() {
        return Err(Error::Validation("training set is empty".into()));
    }
    if features.len() != labels.len() {
        return Err(Error::Validation(format!(
            "{} feature vectors but {} labels",
            features.len(),
            labels.len()
        )));
    }
    let dim = features[0].dim();
    let offset = features[0].dense_offset();
    for f in features {
        if f.dim() != dim || f.dense_offset() != offset {
            return Err(Error::Validation(
                "feature vectors have inconsistent layouts".into(),
            ));
        }
    }
    Ok(dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    NaiveBayes,
    MaxEnt,
    SvmLinear,
    SvmRbf,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] = [
        ClassifierKind::NaiveBayes,
        ClassifierKind::MaxEnt,
        ClassifierKind::SvmLinear,
        ClassifierKind::SvmRbf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::NaiveBayes => "nb",
            ClassifierKind::MaxEnt => "maxent",
            ClassifierKind::SvmLinear => "svm-linear",
            ClassifierKind::SvmRbf => "svm-rbf",
        }
    }

    /// Naive Bayes reads features as counts and needs them nonnegative.
    pub fn needs_nonnegative_features(self) -> bool {
        self == ClassifierKind::NaiveBayes
    }
}

impl std::str::FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nb" => Ok(ClassifierKind::NaiveBayes),
            "maxent" => Ok(ClassifierKind::MaxEnt),
            "svm-linear" => Ok(ClassifierKind::SvmLinear),
            "svm-rbf" => Ok(ClassifierKind::SvmRbf),
            other => Err(Error::Validation(format!(
                "unknown classifier '{other}' (expected nb, maxent, svm-linear or svm-rbf)"
            ))),
        }
    }
}

const MAXENT_DEFAULT_MAX_ITER: usize = 300;
const SVM_DEFAULT_MAX_PASSES: usize = 100;

/// Hyperparameters shared across the dispatch; each classifier uses
/// the fields that apply to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierSettings {
    pub c: f64,
    pub gamma: GammaChoice,
    pub l2: f64,
    pub tol: f64,
    /// MaxEnt iterations or SVM passes; None picks the per-classifier default.
    pub max_iter: Option<usize>,
    pub cache_mb: usize,
}

impl Default for ClassifierSettings {
    fn default() -> Self {
        ClassifierSettings {
            c: 1.0,
            gamma: GammaChoice::Scale,
            l2: 1.0,
            tol: 1e-3,
            max_iter: None,
            cache_mb: 512,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    NaiveBayes(NaiveBayesModel),
    MaxEnt(MaxEntModel),
    Svm(SvmModel),
}

impl TrainedModel {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            TrainedModel::NaiveBayes(_) => ClassifierKind::NaiveBayes,
            TrainedModel::MaxEnt(_) => ClassifierKind::MaxEnt,
            TrainedModel::Svm(m) => match m.kernel().kind {
                KernelKind::Linear => ClassifierKind::SvmLinear,
                KernelKind::Rbf { .. } => ClassifierKind::SvmRbf,
            },
        }
    }

    pub fn predict(&self, x: &FeatureVector) -> Polarity {
        match self {
            TrainedModel::NaiveBayes(m) => nb_predict(m, x),
            TrainedModel::MaxEnt(m) => maxent_predict(m, x),
            TrainedModel::Svm(m) => svm_predict(m, x),
        }
    }

    /// A scalar leaning toward Positive when larger: NB log-posterior
    /// margin, MaxEnt positive-class probability, SVM decision value.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        match self {
            TrainedModel::NaiveBayes(m) => {
                let scores = m.log_posterior(x);
                scores[0] - scores[1]
            }
            TrainedModel::MaxEnt(m) => maxent_predict_proba(m, x)[0],
            TrainedModel::Svm(m) => svm_decision(m, x),
        }
    }

    pub fn convergence_warning(&self) -> bool {
        match self {
            TrainedModel::NaiveBayes(_) => false,
            TrainedModel::MaxEnt(m) => !m.converged(),
            TrainedModel::Svm(m) => !m.converged(),
        }
    }

    pub fn predict_batch(&self, features: &[FeatureVector]) -> Vec<Polarity> {
        features.par_iter().map(|x| self.predict(x)).collect()
    }
}

pub fn train_classifier(
    kind: ClassifierKind,
    features: &[FeatureVector],
    labels: &[Polarity],
    settings: &ClassifierSettings,
) -> Result<TrainedModel> {
    match kind {
        ClassifierKind::NaiveBayes => {
            nb_train(features, labels).map(TrainedModel::NaiveBayes)
        }
        ClassifierKind::MaxEnt => maxent_train(
            features,
            labels,
            settings.l2,
            settings.max_iter.unwrap_or(MAXENT_DEFAULT_MAX_ITER),
            settings.tol,
        )
        .map(TrainedModel::MaxEnt),
        ClassifierKind::SvmLinear => svm_train(
            features,
            labels,
            settings.c,
            KernelSpec::linear(settings.cache_mb),
            settings.tol,
            settings.max_iter.unwrap_or(SVM_DEFAULT_MAX_PASSES),
        )
        .map(TrainedModel::Svm),
        ClassifierKind::SvmRbf => {
            let gamma = settings.gamma.resolve(features)?;
            svm_train(
                features,
                labels,
                settings.c,
                KernelSpec::rbf(gamma, settings.cache_mb)?,
                settings.tol,
                settings.max_iter.unwrap_or(SVM_DEFAULT_MAX_PASSES),
            )
            .map(TrainedModel::Svm)
        }
    }
}
