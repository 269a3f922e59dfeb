//! CBOW word embeddings with negative sampling, trained from scratch,
//! plus TF-IDF-weighted document pooling. Single-worker training is
//! bit-reproducible for a fixed seed; multi-worker training updates the
//! shared matrices without synchronization and is faster but
//! nondeterministic.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering::Relaxed};

use crate::error::{Error, Result};
use crate::textprep::PreparedDocument;

/// CBOW training hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CbowConfig {
    pub dim: usize,
    pub window: usize,
    pub negative_samples: usize,
    pub epochs: usize,
    pub initial_lr: f64,
    pub min_count: usize,
    pub seed: u64,
    pub workers: usize,
    pub subsample: f64,
}

impl Default for CbowConfig {
    fn default() -> Self {
        CbowConfig {
            dim: 100,
            window: 5,
            negative_samples: 5,
            epochs: 15,
            initial_lr: 0.025,
            min_count: 1,
            seed: 1,
            workers: 1,
            subsample: 0.0,
        }
    }
}

impl CbowConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Validation("embedding dim must be positive".into()));
        }
        if self.window == 0 {
            return Err(Error::Validation("window must be at least 1".into()));
        }
        if self.negative_samples == 0 {
            return Err(Error::Validation("negative_samples must be at least 1".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Validation("epochs must be at least 1".into()));
        }
        if !(self.initial_lr > 0.0) {
            return Err(Error::Validation("initial_lr must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::Validation("workers must be at least 1".into()));
        }
        if self.subsample < 0.0 {
            return Err(Error::Validation("subsample must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Token -> dense vector map; rows ordered by descending corpus
/// frequency (ties broken lexicographically).
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryMatrix {
    dim: usize,
    tokens: Vec<String>,
    index_of: HashMap<String, u32>,
    vectors: Vec<f32>,
}

impl DictionaryMatrix {
    pub fn from_parts(dim: usize, tokens: Vec<String>, vectors: Vec<f32>) -> Result<Self> {
        if vectors.len() != tokens.len() * dim {
            return Err(Error::Validation(format!(
                "dictionary matrix storage {} does not match {} tokens x dim {}",
                vectors.len(),
                tokens.len(),
                dim
            )));
        }
        if let Some(bad) = vectors.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("embedding value {bad}")));
        }
        let index_of: HashMap<String, u32> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        if index_of.len() != tokens.len() {
            return Err(Error::Validation("duplicate token in dictionary matrix".into()));
        }
        Ok(DictionaryMatrix {
            dim,
            tokens,
            index_of,
            vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn vector(&self, token: &str) -> Option<&[f32]> {
        self.index_of.get(token).map(|&i| self.vector_at(i))
    }

    pub fn vector_at(&self, index: u32) -> &[f32] {
        let start = index as usize * self.dim;
        &self.vectors[start..start + self.dim]
    }

    pub fn raw(&self) -> &[f32] {
        &self.vectors
    }

    /// Standard text format: `count dim` header, then one
    /// `token v1 .. vN` line per row. Values round-trip exactly.
    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.tokens.len(), self.dim)?;
        for (i, token) in self.tokens.iter().enumerate() {
            write!(out, "{token}")?;
            for v in self.vector_at(i as u32) {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn save_text(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_text(&mut buf).map_err(|e| Error::io(path, e))?;
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }
}

/// Parse the standard text format written by `write_text` (and by the
/// common word-vector tools).
pub fn load_word_vectors(path: &Path) -> Result<DictionaryMatrix> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = raw.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty word-vector file"))?;
    let mut parts = header.split_whitespace();
    let count: usize = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Error::parse(path, 1, "header must be `count dim`"))?;
    let dim: usize = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Error::parse(path, 1, "header must be `count dim`"))?;
    let mut tokens = Vec::with_capacity(count);
    let mut vectors = Vec::with_capacity(count * dim);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let token = fields
            .next()
            .ok_or_else(|| Error::parse(path, idx + 1, "missing token"))?;
        tokens.push(token.to_string());
        let before = vectors.len();
        for field in fields {
            let v: f32 = field.parse().map_err(|_| {
                Error::parse(path, idx + 1, format!("bad vector value '{field}'"))
            })?;
            vectors.push(v);
        }
        if vectors.len() - before != dim {
            return Err(Error::parse(
                path,
                idx + 1,
                format!("expected {dim} values, found {}", vectors.len() - before),
            ));
        }
    }
    if tokens.len() != count {
        return Err(Error::parse(
            path,
            1,
            format!("header promises {count} rows, file has {}", tokens.len()),
        ));
    }
    DictionaryMatrix::from_parts(dim, tokens, vectors)
}

/// Per-token document frequencies used for pooling weights; fitted on
/// training documents only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocFrequency {
    df: HashMap<String, u32>,
    total_docs: usize,
}

impl DocFrequency {
    pub fn fit(docs: &[PreparedDocument]) -> Self {
        let mut df: HashMap<String, u32> = HashMap::new();
        for doc in docs {
            let mut seen: Vec<String> = doc.forms().map(|f| f.into_owned()).collect();
            seen.sort_unstable();
            seen.dedup();
            for form in seen {
                *df.entry(form).or_insert(0) += 1;
            }
        }
        DocFrequency {
            df,
            total_docs: docs.len(),
        }
    }

    pub fn from_parts(df: HashMap<String, u32>, total_docs: usize) -> Self {
        DocFrequency { df, total_docs }
    }

    pub fn total_docs(&self) -> usize {
        self.total_docs
    }

    pub fn doc_freq(&self, form: &str) -> Option<u32> {
        self.df.get(form).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u32)> {
        self.df.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn idf(&self, form: &str) -> Option<f64> {
        self.doc_freq(form)
            .map(|d| (self.total_docs as f64 / d as f64).ln())
    }
}

/// f_ij * ln(D / D_i).
pub fn tfidf_weight(frequency: f64, total_docs: usize, doc_freq: u32) -> f64 {
    if frequency == 0.0 {
        return 0.0;
    }
    frequency * (total_docs as f64 / doc_freq as f64).ln()
}

/// Pool a document: s = sum over distinct tokens of w * v, where
/// w = count * idf. Tokens missing from the matrix or the frequency
/// stats contribute nothing. With `normalize`, the sum is divided by
/// the total weight (weighted average variant).
pub fn weighted_doc_vector(
    doc: &PreparedDocument,
    matrix: &DictionaryMatrix,
    stats: &DocFrequency,
    normalize: bool,
) -> Vec<f64> {
    let mut counts: BTreeMap<String, f64> = BTreeMap::new();
    for form in doc.forms() {
        *counts.entry(form.into_owned()).or_insert(0.0) += 1.0;
    }
    let mut pooled = vec![0.0f64; matrix.dim()];
    let mut weight_sum = 0.0f64;
    for (form, count) in &counts {
        let Some(vector) = matrix.vector(form) else {
            continue;
        };
        let Some(df) = stats.doc_freq(form) else {
            continue;
        };
        let w = tfidf_weight(*count, stats.total_docs(), df);
        if w == 0.0 {
            continue;
        }
        weight_sum += w;
        for (acc, &v) in pooled.iter_mut().zip(vector) {
            *acc += w * v as f64;
        }
    }
    if normalize && weight_sum > 0.0 {
        for v in &mut pooled {
            *v /= weight_sum;
        }
    }
    pooled
}

/// The classic word2vec linear congruential generator.
#[derive(Debug, Clone)]
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(25214903917).wrapping_add(11);
        self.0
    }

    fn unit_f32(&mut self) -> f32 {
        ((self.next_u64() & 0xFFFF) as f32) / 65536.0
    }

    fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Draws negative samples from the unigram distribution raised to 3/4,
/// via binary search over the cumulative mass.
struct UnigramSampler {
    cumulative: Vec<f64>,
}

impl UnigramSampler {
    fn new(counts: &[u64]) -> Self {
        let mut cumulative = Vec::with_capacity(counts.len());
        let mut acc = 0.0f64;
        for &c in counts {
            acc += (c as f64).powf(0.75);
            cumulative.push(acc);
        }
        let total = acc.max(f64::MIN_POSITIVE);
        for v in &mut cumulative {
            *v /= total;
        }
        UnigramSampler { cumulative }
    }

    fn draw(&self, rng: &mut Lcg) -> usize {
        let r = rng.unit_f64();
        self.cumulative
            .partition_point(|&c| c < r)
            .min(self.cumulative.len() - 1)
    }
}

/// Shared weight matrix with relaxed atomic f32 cells so hogwild
/// workers can update it concurrently. Plain loads/stores; overlapping
/// updates may be lost, which the algorithm tolerates.
struct AtomicMatrix {
    dim: usize,
    data: Vec<AtomicU32>,
}

impl AtomicMatrix {
    fn zeros(rows: usize, dim: usize) -> Self {
        let data = (0..rows * dim).map(|_| AtomicU32::new(0)).collect();
        AtomicMatrix { dim, data }
    }

    fn init_uniform(rows: usize, dim: usize, rng: &mut Lcg) -> Self {
        let data = (0..rows * dim)
            .map(|_| {
                let v = (rng.unit_f32() - 0.5) / dim as f32;
                AtomicU32::new(v.to_bits())
            })
            .collect();
        AtomicMatrix { dim, data }
    }

    fn load_row(&self, row: usize, buf: &mut [f32]) {
        let start = row * self.dim;
        for (d, slot) in buf.iter_mut().zip(&self.data[start..start + self.dim]) {
            *d = f32::from_bits(slot.load(Relaxed));
        }
    }

    fn add_scaled(&self, row: usize, delta: &[f32], scale: f32) {
        let start = row * self.dim;
        for (d, slot) in delta.iter().zip(&self.data[start..start + self.dim]) {
            let old = f32::from_bits(slot.load(Relaxed));
            slot.store((old + scale * d).to_bits(), Relaxed);
        }
    }

    fn into_vec(self) -> Vec<f32> {
        self.data
            .into_iter()
            .map(|a| f32::from_bits(a.into_inner()))
            .collect()
    }
}

fn sigmoid(x: f32) -> f32 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

struct TrainShared<'a> {
    sentences: &'a [Vec<u32>],
    counts: &'a [u64],
    total_count: u64,
    syn0: &'a AtomicMatrix,
    syn1: &'a AtomicMatrix,
    sampler: &'a UnigramSampler,
    processed: &'a AtomicU64,
    total_work: u64,
}

fn run_worker(
    shared: &TrainShared<'_>,
    range: std::ops::Range<usize>,
    config: &CbowConfig,
    rng: &mut Lcg,
) -> (f64, u64) {
    let dim = config.dim;
    let k = config.negative_samples;
    let floor = config.initial_lr * 1e-4;
    let mut neu1 = vec![0f32; dim];
    let mut neu1e = vec![0f32; dim];
    let mut row_buf = vec![0f32; dim];
    let mut sub_buf: Vec<u32> = Vec::new();
    let mut loss_sum = 0.0f64;
    let mut loss_events = 0u64;

    for sentence in &shared.sentences[range] {
        let done = shared.processed.fetch_add(sentence.len() as u64, Relaxed);
        let alpha = (config.initial_lr
            * (1.0 - done as f64 / (shared.total_work + 1) as f64))
            .max(floor) as f32;

        let tokens: &[u32] = if config.subsample > 0.0 {
            sub_buf.clear();
            let threshold = config.subsample * shared.total_count as f64;
            for &t in sentence {
                let cnt = shared.counts[t as usize] as f64;
                let keep = (threshold / cnt).sqrt() + threshold / cnt;
                if keep >= 1.0 || rng.unit_f64() < keep {
                    sub_buf.push(t);
                }
            }
            &sub_buf
        } else {
            sentence
        };

        for pos in 0..tokens.len() {
            let center = tokens[pos] as usize;
            let shrink = rng.below(config.window as u64) as usize;
            let span = config.window - shrink;
            let lo = pos.saturating_sub(span);
            let hi = (pos + span).min(tokens.len() - 1);
            neu1.fill(0.0);
            neu1e.fill(0.0);
            let mut context_words = 0u32;
            for j in lo..=hi {
                if j == pos {
                    continue;
                }
                shared.syn0.load_row(tokens[j] as usize, &mut row_buf);
                for (acc, &v) in neu1.iter_mut().zip(&row_buf) {
                    *acc += v;
                }
                context_words += 1;
            }
            if context_words == 0 {
                continue;
            }
            for v in &mut neu1 {
                *v /= context_words as f32;
            }
            for sample in 0..=k {
                let (target, label) = if sample == 0 {
                    (center, 1.0f32)
                } else {
                    let t = shared.sampler.draw(rng);
                    if t == center {
                        continue;
                    }
                    (t, 0.0f32)
                };
                shared.syn1.load_row(target, &mut row_buf);
                let x: f32 = neu1.iter().zip(&row_buf).map(|(a, b)| a * b).sum();
                let f = sigmoid(x);
                loss_sum += softplus(if label == 1.0 { -x } else { x } as f64);
                loss_events += 1;
                let g = (label - f) * alpha;
                for (acc, &v) in neu1e.iter_mut().zip(&row_buf) {
                    *acc += g * v;
                }
                shared.syn1.add_scaled(target, &neu1, g);
            }
            for j in lo..=hi {
                if j == pos {
                    continue;
                }
                shared.syn0.add_scaled(tokens[j] as usize, &neu1e, 1.0);
            }
        }
    }
    (loss_sum, loss_events)
}

/// Train CBOW embeddings and report the average negative-sampling loss
/// per epoch.
pub fn train_cbow_with_stats(
    docs: &[PreparedDocument],
    config: &CbowConfig,
) -> Result<(DictionaryMatrix, Vec<f64>)> {
    config.validate()?;
    let mut raw_counts: BTreeMap<String, u64> = BTreeMap::new();
    for doc in docs {
        for form in doc.forms() {
            *raw_counts.entry(form.into_owned()).or_insert(0) += 1;
        }
    }
    let mut vocab: Vec<(String, u64)> = raw_counts
        .into_iter()
        .filter(|&(_, c)| c as usize >= config.min_count)
        .collect();
    if vocab.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    vocab.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let index_of: HashMap<&str, u32> = vocab
        .iter()
        .enumerate()
        .map(|(i, (t, _))| (t.as_str(), i as u32))
        .collect();
    let counts: Vec<u64> = vocab.iter().map(|&(_, c)| c).collect();
    let total_count: u64 = counts.iter().sum();

    let sentences: Vec<Vec<u32>> = docs
        .iter()
        .flat_map(|doc| doc.sentences.iter())
        .filter_map(|sentence| {
            let ids: Vec<u32> = sentence
                .iter()
                .filter_map(|t| index_of.get(t.form().as_ref()).copied())
                .collect();
            (!ids.is_empty()).then_some(ids)
        })
        .collect();
    let positions: u64 = sentences.iter().map(|s| s.len() as u64).sum();
    let total_work = positions * config.epochs as u64;

    let sampler = UnigramSampler::new(&counts);
    let mut init_rng = Lcg(config.seed);
    let syn0 = AtomicMatrix::init_uniform(vocab.len(), config.dim, &mut init_rng);
    let syn1 = AtomicMatrix::zeros(vocab.len(), config.dim);
    let processed = AtomicU64::new(0);

    let workers = config.workers.min(sentences.len().max(1));
    let mut rngs: Vec<Lcg> = (0..workers)
        .map(|w| Lcg(config.seed.wrapping_add(w as u64)))
        .collect();
    let ranges: Vec<std::ops::Range<usize>> = (0..workers)
        .map(|w| {
            let lo = w * sentences.len() / workers;
            let hi = (w + 1) * sentences.len() / workers;
            lo..hi
        })
        .collect();

    let shared = TrainShared {
        sentences: &sentences,
        counts: &counts,
        total_count,
        syn0: &syn0,
        syn1: &syn1,
        sampler: &sampler,
        processed: &processed,
        total_work,
    };

    let mut epoch_losses = Vec::with_capacity(config.epochs);
    for _ in 0..config.epochs {
        let (loss, events) = if workers == 1 {
            run_worker(&shared, ranges[0].clone(), config, &mut rngs[0])
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .iter()
                    .zip(rngs.iter_mut())
                    .map(|(range, rng)| {
                        let shared = &shared;
                        let range = range.clone();
                        scope.spawn(move || run_worker(shared, range, config, rng))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("training worker panicked"))
                    .fold((0.0, 0), |(ls, le), (l, e)| (ls + l, le + e))
            })
        };
        epoch_losses.push(if events == 0 { 0.0 } else { loss / events as f64 });
    }

    let tokens: Vec<String> = vocab.into_iter().map(|(t, _)| t).collect();
    let matrix = DictionaryMatrix::from_parts(config.dim, tokens, syn0.into_vec())?;
    Ok((matrix, epoch_losses))
}

/// Train CBOW embeddings over the prepared documents.
pub fn train_cbow(docs: &[PreparedDocument], config: &CbowConfig) -> Result<DictionaryMatrix> {
    train_cbow_with_stats(docs, config).map(|(matrix, _)| matrix)
}
