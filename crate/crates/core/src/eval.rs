//! Stratified k-fold cross-validation and the representation x
//! classifier accuracy grid. Every fold refits all representation
//! artifacts on its nine training folds; test documents never touch
//! fitting.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::bow::{build_vocabulary, Vocabulary};
use crate::classifier::{train_classifier, ClassifierKind, ClassifierSettings};
use crate::corpus::Polarity;
use crate::embedding::{train_cbow, CbowConfig, DictionaryMatrix, DocFrequency};
use crate::error::{Error, Result};
use crate::hybrid::{assemble_all, Components, NonNegShift, RepresentationChoice, Scaling};
use crate::sentiment::{build_sentiment_matrix, collect_forms, SentimentMatrix};
use crate::sentiwordnet::LexiconEntry;
use crate::textprep::PreparedDocument;

/// Cache key marking artifacts fitted on the whole corpus rather than
/// one fold's training split.
const SHARED_FOLD_KEY: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    seed: u64,
    k: usize,
    assignments: Vec<usize>,
}

impl FoldPlan {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    /// Document indices of (training split, held-out split) for a fold.
    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (doc, &f) in self.assignments.iter().enumerate() {
            if f == fold {
                test.push(doc);
            } else {
                train.push(doc);
            }
        }
        (train, test)
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &f in &self.assignments {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Class-stratified fold assignment: per class (Positive first), the
/// document positions are shuffled with the seeded generator, then
/// dealt round-robin. A running offset staggers where each class's
/// deal starts so the leftover documents of different classes land in
/// different folds, keeping total fold sizes within one of each other.
pub fn make_folds(labels: &[Polarity], k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::Validation(format!("fold count must be >= 2, got {k}")));
    }
    if labels.is_empty() {
        return Err(Error::Validation("cannot fold an empty corpus".into()));
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut assignments = vec![0usize; labels.len()];
    let mut offset = 0usize;
    for class in [Polarity::Positive, Polarity::Negative] {
        let mut members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == class)
            .map(|(i, _)| i)
            .collect();
        members.shuffle(&mut rng);
        for (position, &doc) in members.iter().enumerate() {
            assignments[doc] = (position + offset) % k;
        }
        offset += members.len() % k;
    }
    Ok(FoldPlan {
        seed,
        k,
        assignments,
    })
}

/// Fraction of exact matches.
pub fn accuracy(predictions: &[Polarity], labels: &[Polarity]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::Validation("accuracy over an empty set".into()));
    }
    if predictions.len() != labels.len() {
        return Err(Error::Validation(format!(
            "{} predictions but {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    let correct = predictions
        .iter()
        .zip(labels)
        .filter(|(p, l)| p == l)
        .count();
    Ok(correct as f64 / predictions.len() as f64)
}

/// One grid cell: a representation (with its embedding dim when it
/// uses one) paired with a classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellSpec {
    pub representation: RepresentationChoice,
    pub classifier: ClassifierKind,
    pub dim: Option<usize>,
}

impl CellSpec {
    pub fn dim_label(&self) -> String {
        match self.dim {
            Some(d) => d.to_string(),
            None => "-".to_string(),
        }
    }
}

/// The full Table-1 grid: every representation crossed with every
/// classifier, embedding-bearing representations once per dim.
pub fn grid_cells(dims: &[usize]) -> Vec<CellSpec> {
    let mut cells = Vec::new();
    for representation in RepresentationChoice::ALL {
        let dim_choices: Vec<Option<usize>> = if representation.uses_embeddings() {
            dims.iter().map(|&d| Some(d)).collect()
        } else {
            vec![None]
        };
        for dim in dim_choices {
            for classifier in ClassifierKind::ALL {
                cells.push(CellSpec {
                    representation,
                    classifier,
                    dim,
                });
            }
        }
    }
    cells
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub cbow: CbowConfig,
    pub min_df: usize,
    pub max_df_ratio: f64,
    pub settings: ClassifierSettings,
    pub scaling: Scaling,
    pub normalize_pool: bool,
    pub shared_embeddings: bool,
    pub include_timing: bool,
    pub lexicon: Vec<LexiconEntry>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            cbow: CbowConfig::default(),
            min_df: 2,
            max_df_ratio: 0.5,
            settings: ClassifierSettings::default(),
            scaling: Scaling::None,
            normalize_pool: false,
            shared_embeddings: false,
            include_timing: true,
            lexicon: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub spec: CellSpec,
    pub fold_accuracies: Vec<f64>,
    pub fold_seconds: Vec<f64>,
    pub mean_accuracy: f64,
    pub feature_dim: usize,
    pub convergence_warning: bool,
}

type Split = (Vec<PreparedDocument>, Vec<PreparedDocument>);

/// Shares fitted artifacts between cells: splits, vocabularies,
/// document frequencies and sentiment matrices are per fold;
/// embeddings are per (fold, dim). Cells run sequentially while folds
/// run in parallel, so concurrent lookups never target the same key.
#[derive(Default)]
pub struct ArtifactCache {
    splits: Mutex<HashMap<usize, Arc<Split>>>,
    vocabs: Mutex<HashMap<usize, Arc<Vocabulary>>>,
    doc_freqs: Mutex<HashMap<usize, Arc<DocFrequency>>>,
    sentiments: Mutex<HashMap<usize, Arc<SentimentMatrix>>>,
    embeddings: Mutex<HashMap<(usize, usize), Arc<DictionaryMatrix>>>,
}

impl ArtifactCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn split(&self, docs: &[PreparedDocument], plan: &FoldPlan, fold: usize) -> Arc<Split> {
        let mut map = self.splits.lock().unwrap();
        if let Some(found) = map.get(&fold) {
            return Arc::clone(found);
        }
        let (train_idx, test_idx) = plan.split(fold);
        let split = Arc::new((
            train_idx.iter().map(|&i| docs[i].clone()).collect(),
            test_idx.iter().map(|&i| docs[i].clone()).collect(),
        ));
        map.insert(fold, Arc::clone(&split));
        split
    }

    fn get_or_build<K, V>(
        map: &Mutex<HashMap<K, Arc<V>>>,
        key: K,
        build: impl FnOnce() -> Result<V>,
    ) -> Result<Arc<V>>
    where
        K: std::hash::Hash + Eq + Copy,
    {
        if let Some(found) = map.lock().unwrap().get(&key) {
            return Ok(Arc::clone(found));
        }
        let built = Arc::new(build()?);
        let mut locked = map.lock().unwrap();
        let entry = locked.entry(key).or_insert_with(|| Arc::clone(&built));
        Ok(Arc::clone(entry))
    }
}

struct FoldOutcome {
    accuracy: f64,
    seconds: f64,
    feature_dim: usize,
    warning: bool,
}

fn run_fold(
    docs: &[PreparedDocument],
    spec: &CellSpec,
    plan: &FoldPlan,
    config: &EvalConfig,
    cache: &ArtifactCache,
    fold: usize,
) -> Result<FoldOutcome> {
    let timer = Instant::now();
    let split = cache.split(docs, plan, fold);
    let (train, test) = (&split.0, &split.1);

    let mut components = Components {
        normalize_pool: config.normalize_pool,
        ..Components::default()
    };
    let representation = spec.representation;
    if matches!(
        representation,
        RepresentationChoice::BowOnly | RepresentationChoice::Hybrid
    ) {
        let vocab = ArtifactCache::get_or_build(&cache.vocabs, fold, || {
            build_vocabulary(train, config.min_df, config.max_df_ratio)
        })?;
        components.vocab = Some(vocab.as_ref().clone());
    }
    if representation.uses_embeddings() {
        let dim = spec.dim.ok_or_else(|| {
            Error::Validation(format!(
                "representation '{}' needs an embedding dim",
                representation.name()
            ))
        })?;
        let fold_key = if config.shared_embeddings {
            SHARED_FOLD_KEY
        } else {
            fold
        };
        let matrix = ArtifactCache::get_or_build(&cache.embeddings, (fold_key, dim), || {
            let mut cbow = config.cbow.clone();
            cbow.dim = dim;
            if config.shared_embeddings {
                train_cbow(docs, &cbow)
            } else {
                train_cbow(train, &cbow)
            }
        })?;
        components.matrix = Some(matrix.as_ref().clone());
        let doc_freq =
            ArtifactCache::get_or_build(&cache.doc_freqs, fold, || Ok(DocFrequency::fit(train)))?;
        components.doc_freq = Some(doc_freq.as_ref().clone());
    }
    if matches!(
        representation,
        RepresentationChoice::SentimentOnly | RepresentationChoice::Hybrid
    ) {
        let sentiment = ArtifactCache::get_or_build(&cache.sentiments, fold, || {
            Ok(build_sentiment_matrix(
                &config.lexicon,
                &collect_forms(train),
            ))
        })?;
        components.sentiment = Some(sentiment.as_ref().clone());
    }

    let train_labels: Vec<Polarity> = train.iter().map(|d| d.label).collect();
    let test_labels: Vec<Polarity> = test.iter().map(|d| d.label).collect();
    let mut train_x = assemble_all(train, representation, &components, config.scaling)?;
    let mut test_x = assemble_all(test, representation, &components, config.scaling)?;
    if spec.classifier.needs_nonnegative_features() {
        let shift = NonNegShift::fit(&train_x);
        shift.apply_all(&mut train_x);
        shift.apply_all(&mut test_x);
    }

    let model = train_classifier(spec.classifier, &train_x, &train_labels, &config.settings)?;
    let predictions = model.predict_batch(&test_x);
    let fold_accuracy = accuracy(&predictions, &test_labels)?;
    Ok(FoldOutcome {
        accuracy: fold_accuracy,
        seconds: timer.elapsed().as_secs_f64(),
        feature_dim: train_x.first().map(|v| v.dim()).unwrap_or(0),
        warning: model.convergence_warning(),
    })
}

pub fn run_cell(
    docs: &[PreparedDocument],
    spec: &CellSpec,
    plan: &FoldPlan,
    config: &EvalConfig,
    cache: &ArtifactCache,
) -> Result<CellResult> {
    if plan.len() != docs.len() {
        return Err(Error::Validation(format!(
            "fold plan covers {} documents but the corpus has {}",
            plan.len(),
            docs.len()
        )));
    }
    let outcomes: Vec<Result<FoldOutcome>> = (0..plan.k())
        .into_par_iter()
        .map(|fold| run_fold(docs, spec, plan, config, cache, fold))
        .collect();

    let mut fold_accuracies = Vec::with_capacity(plan.k());
    let mut fold_seconds = Vec::with_capacity(plan.k());
    let mut feature_dim = 0;
    let mut convergence_warning = false;
    for (fold, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(o) => {
                fold_accuracies.push(o.accuracy);
                fold_seconds.push(o.seconds);
                feature_dim = feature_dim.max(o.feature_dim);
                convergence_warning |= o.warning;
            }
            Err(source) => {
                return Err(Error::FoldFailed {
                    fold,
                    source: Box::new(source),
                })
            }
        }
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64;
    Ok(CellResult {
        spec: *spec,
        fold_accuracies,
        fold_seconds,
        mean_accuracy,
        feature_dim,
        convergence_warning,
    })
}

#[derive(Debug, Clone)]
pub struct GridRow {
    pub spec: CellSpec,
    pub outcome: std::result::Result<CellResult, String>,
}

#[derive(Debug, Clone)]
pub struct GridReport {
    pub rows: Vec<GridRow>,
    pub include_timing: bool,
}

impl GridReport {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| r.outcome.is_err())
    }

    pub fn any_warning(&self) -> bool {
        self.rows
            .iter()
            .any(|r| matches!(&r.outcome, Ok(c) if c.convergence_warning))
    }
}

/// Runs every cell against the shared fold plan, continuing past
/// failures so the report marks them instead of aborting the grid.
pub fn run_grid(
    docs: &[PreparedDocument],
    cells: &[CellSpec],
    plan: &FoldPlan,
    config: &EvalConfig,
) -> GridReport {
    let cache = ArtifactCache::new();
    let rows = cells
        .iter()
        .map(|spec| GridRow {
            spec: *spec,
            outcome: run_cell(docs, spec, plan, config, &cache).map_err(|e| e.to_string()),
        })
        .collect();
    GridReport {
        rows,
        include_timing: config.include_timing,
    }
}

fn cell_display(row: &GridRow, include_timing: bool) -> String {
    match &row.outcome {
        Ok(cell) => {
            if include_timing {
                let mean_seconds =
                    cell.fold_seconds.iter().sum::<f64>() / cell.fold_seconds.len() as f64;
                format!("{:.4} ({:.1}s)", cell.mean_accuracy, mean_seconds)
            } else {
                format!("{:.4}", cell.mean_accuracy)
            }
        }
        Err(_) => "FAILED".to_string(),
    }
}

/// Aligned text table: one row per (representation, dim), one column
/// per classifier.
pub fn render_table(report: &GridReport) -> String {
    let mut row_keys: Vec<(RepresentationChoice, Option<usize>)> = Vec::new();
    for row in &report.rows {
        let key = (row.spec.representation, row.spec.dim);
        if !row_keys.contains(&key) {
            row_keys.push(key);
        }
    }
    let classifiers: Vec<ClassifierKind> = {
        let mut seen = Vec::new();
        for row in &report.rows {
            if !seen.contains(&row.spec.classifier) {
                seen.push(row.spec.classifier);
            }
        }
        seen
    };

    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["representation".to_string(), "dim".to_string()];
    header.extend(classifiers.iter().map(|c| c.name().to_string()));
    grid.push(header);
    for &(representation, dim) in &row_keys {
        let mut line = vec![
            representation.name().to_string(),
            dim.map_or("-".to_string(), |d| d.to_string()),
        ];
        for &classifier in &classifiers {
            let found = report.rows.iter().find(|r| {
                r.spec.representation == representation
                    && r.spec.dim == dim
                    && r.spec.classifier == classifier
            });
            line.push(match found {
                Some(row) => cell_display(row, report.include_timing),
                None => String::new(),
            });
        }
        grid.push(line);
    }

    let columns = grid[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        let mut line = String::new();
        for (c, value) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(value);
            if c + 1 < columns {
                for _ in value.len()..widths[c] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Machine-readable per-fold rows. With timing suppressed the seconds
/// column holds "-" so reruns compare byte-identically.
pub fn render_tsv(report: &GridReport) -> String {
    let mut out = String::from("representation\tclassifier\tdim\tfold\taccuracy\tseconds\n");
    for row in &report.rows {
        match &row.outcome {
            Ok(cell) => {
                for (fold, (&acc, &secs)) in cell
                    .fold_accuracies
                    .iter()
                    .zip(&cell.fold_seconds)
                    .enumerate()
                {
                    let seconds = if report.include_timing {
                        format!("{secs:.3}")
                    } else {
                        "-".to_string()
                    };
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{:.6}\t{}\n",
                        row.spec.representation.name(),
                        row.spec.classifier.name(),
                        row.spec.dim_label(),
                        fold,
                        acc,
                        seconds
                    ));
                }
            }
            Err(message) => {
                out.push_str(&format!(
                    "{}\t{}\t{}\t-\tFAILED\t{}\n",
                    row.spec.representation.name(),
                    row.spec.classifier.name(),
                    row.spec.dim_label(),
                    message.replace(['\t', '\n'], " ")
                ));
            }
        }
    }
    out
}
