//! Run configuration: flag/config-file merging and the resolved dump
//! written beside every run's outputs.
//!
//! Precedence: built-in defaults, then the `--config` key=value file,
//! then explicit flags. Boolean switches only move off their default,
//! so "flag given" always wins over the file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hww2v_core::{
    CbowConfig, ClassifierKind, ClassifierSettings, DecodeOptions, EvalConfig, GammaChoice,
    LexiconEntry, PrepConfig, RepresentationChoice, Scaling, TextEncoding,
};

/// One optional value per knob; `None`/`false` means "not given here".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub pos: Option<PathBuf>,
    pub neg: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub encoding: Option<TextEncoding>,
    pub strict_decode: bool,
    pub no_negation: bool,
    pub no_negation_toggle: bool,
    pub drop_punctuation: bool,
    pub keep_stopwords: bool,
    pub min_df: Option<usize>,
    pub max_df_ratio: Option<f64>,
    pub repr: Option<RepresentationChoice>,
    pub scale: Option<Scaling>,
    pub normalize_pool: bool,
    pub dim: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub window: Option<usize>,
    pub negative: Option<usize>,
    pub epochs: Option<usize>,
    pub min_count: Option<usize>,
    pub embedding_lr: Option<f64>,
    pub subsample: Option<f64>,
    pub embedding_workers: Option<usize>,
    pub embedding_seed: Option<u64>,
    pub shared_embeddings: bool,
    pub clf: Option<ClassifierKind>,
    pub c: Option<f64>,
    pub gamma: Option<GammaChoice>,
    pub l2: Option<f64>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub cache_mb: Option<usize>,
    pub folds: Option<usize>,
    pub seed: Option<u64>,
    pub no_timing: bool,
    pub jobs: Option<usize>,
    pub strict: bool,
    pub model: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub text_out: Option<PathBuf>,
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(format!("key '{key}': expected true or false, got '{other}'")),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("key '{key}': cannot parse '{value}'"))
}

pub fn parse_dims(value: &str) -> Result<Vec<usize>, String> {
    let dims: Result<Vec<usize>, String> = value
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad dimension '{}' in '{value}'", p.trim()))
        })
        .collect();
    let dims = dims?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(format!("dimension list '{value}' must be positive integers"));
    }
    Ok(dims)
}

impl Overrides {
    /// Apply one config-file entry. Key names are exactly the long flag
    /// names. `command` is accepted and ignored so resolved dumps reload.
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "command" => {}
            "pos" => self.pos = Some(value.into()),
            "neg" => self.neg = Some(value.into()),
            "lexicon" => self.lexicon = Some(value.into()),
            "embeddings" => self.embeddings = Some(value.into()),
            "encoding" => self.encoding = Some(value.parse::<TextEncoding>()?),
            "strict-decode" => self.strict_decode = parse_bool(key, value)?,
            "no-negation" => self.no_negation = parse_bool(key, value)?,
            "no-negation-toggle" => self.no_negation_toggle = parse_bool(key, value)?,
            "drop-punctuation" => self.drop_punctuation = parse_bool(key, value)?,
            "keep-stopwords" => self.keep_stopwords = parse_bool(key, value)?,
            "min-df" => self.min_df = Some(parse_num(key, value)?),
            "max-df-ratio" => self.max_df_ratio = Some(parse_num(key, value)?),
            "repr" => self.repr = Some(value.parse().map_err(|e| format!("{e}"))?),
            "scale" => self.scale = Some(value.parse().map_err(|e| format!("{e}"))?),
            "normalize-pool" => self.normalize_pool = parse_bool(key, value)?,
            "dim" => self.dim = Some(parse_num(key, value)?),
            "dims" => self.dims = Some(parse_dims(value)?),
            "window" => self.window = Some(parse_num(key, value)?),
            "negative" => self.negative = Some(parse_num(key, value)?),
            "epochs" => self.epochs = Some(parse_num(key, value)?),
            "min-count" => self.min_count = Some(parse_num(key, value)?),
            "embedding-lr" => self.embedding_lr = Some(parse_num(key, value)?),
            "subsample" => self.subsample = Some(parse_num(key, value)?),
            "embedding-workers" => self.embedding_workers = Some(parse_num(key, value)?),
            "embedding-seed" => self.embedding_seed = Some(parse_num(key, value)?),
            "shared-embeddings" => self.shared_embeddings = parse_bool(key, value)?,
            "clf" => self.clf = Some(value.parse().map_err(|e| format!("{e}"))?),
            "c" => self.c = Some(parse_num(key, value)?),
            "gamma" => self.gamma = Some(value.parse().map_err(|e| format!("{e}"))?),
            "l2" => self.l2 = Some(parse_num(key, value)?),
            "tol" => self.tol = Some(parse_num(key, value)?),
            "max-iter" => self.max_iter = Some(parse_num(key, value)?),
            "cache-mb" => self.cache_mb = Some(parse_num(key, value)?),
            "folds" => self.folds = Some(parse_num(key, value)?),
            "seed" => self.seed = Some(parse_num(key, value)?),
            "no-timing" => self.no_timing = parse_bool(key, value)?,
            "jobs" => self.jobs = Some(parse_num(key, value)?),
            "strict" => self.strict = parse_bool(key, value)?,
            "model" => self.model = Some(value.into()),
            "input" => self.input = Some(value.into()),
            "out" => self.out = Some(value.into()),
            "out-dir" => self.out_dir = Some(value.into()),
            "text-out" => self.text_out = Some(value.into()),
            other => return Err(format!("unknown config key '{other}'")),
        }
        Ok(())
    }

    /// Upper layer wins: every Some and every raised switch replaces the
    /// base value.
    pub fn layered_under(mut self, upper: &Overrides) -> Overrides {
        macro_rules! take_opt {
            ($($f:ident),* $(,)?) => {
                $( if upper.$f.is_some() { self.$f = upper.$f.clone(); } )*
            };
        }
        macro_rules! take_flag {
            ($($f:ident),* $(,)?) => {
                $( if upper.$f { self.$f = true; } )*
            };
        }
        take_opt!(
            pos, neg, lexicon, embeddings, encoding, min_df, max_df_ratio, repr, scale, dim,
            dims, window, negative, epochs, min_count, embedding_lr, subsample,
            embedding_workers, embedding_seed, clf, c, gamma, l2, tol, max_iter, cache_mb,
            folds, seed, jobs, model, input, out, out_dir, text_out,
        );
        take_flag!(
            strict_decode,
            no_negation,
            no_negation_toggle,
            drop_punctuation,
            keep_stopwords,
            normalize_pool,
            shared_embeddings,
            no_timing,
            strict,
        );
        self
    }
}

/// Parse a key=value config file into (key, value) pairs. Blank lines
/// and `#` comments are skipped.
pub fn parse_config_text(content: &str) -> Result<Vec<(String, String)>, String> {
    let mut pairs = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key=value, got '{line}'", idx + 1));
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

/// Every knob with its final value for one run.
#[derive(Debug, Clone)]
pub struct Effective {
    pub command: String,
    pub pos: Option<PathBuf>,
    pub neg: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub encoding: TextEncoding,
    pub strict_decode: bool,
    pub negation: bool,
    pub negation_toggle: bool,
    pub keep_punctuation: bool,
    pub remove_stopwords: bool,
    pub min_df: usize,
    pub max_df_ratio: f64,
    pub repr: RepresentationChoice,
    pub scaling: Scaling,
    pub normalize_pool: bool,
    pub dim: usize,
    pub dims: Vec<usize>,
    pub window: usize,
    pub negative: usize,
    pub epochs: usize,
    pub min_count: usize,
    pub embedding_lr: f64,
    pub subsample: f64,
    pub embedding_workers: usize,
    pub embedding_seed: u64,
    pub shared_embeddings: bool,
    pub clf: ClassifierKind,
    pub c: f64,
    pub gamma: GammaChoice,
    pub l2: f64,
    pub tol: f64,
    pub max_iter: Option<usize>,
    pub cache_mb: usize,
    pub folds: usize,
    pub seed: u64,
    pub include_timing: bool,
    pub jobs: Option<usize>,
    pub strict: bool,
    pub model: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub text_out: Option<PathBuf>,
}

impl Effective {
    pub fn new(command: &str, o: &Overrides) -> Self {
        let cbow = CbowConfig::default();
        let settings = ClassifierSettings::default();
        let eval = EvalConfig::default();
        let decode = DecodeOptions::default();
        Effective {
            command: command.to_string(),
            pos: o.pos.clone(),
            neg: o.neg.clone(),
            lexicon: o.lexicon.clone(),
            embeddings: o.embeddings.clone(),
            encoding: o.encoding.unwrap_or(decode.encoding),
            strict_decode: o.strict_decode,
            negation: !o.no_negation,
            negation_toggle: !o.no_negation_toggle,
            keep_punctuation: !o.drop_punctuation,
            remove_stopwords: !o.keep_stopwords,
            min_df: o.min_df.unwrap_or(eval.min_df),
            max_df_ratio: o.max_df_ratio.unwrap_or(eval.max_df_ratio),
            repr: o.repr.unwrap_or(RepresentationChoice::Hybrid),
            scaling: o.scale.unwrap_or(eval.scaling),
            normalize_pool: o.normalize_pool,
            dim: o.dim.unwrap_or(cbow.dim),
            dims: o.dims.clone().unwrap_or_else(|| vec![100, 300]),
            window: o.window.unwrap_or(cbow.window),
            negative: o.negative.unwrap_or(cbow.negative_samples),
            epochs: o.epochs.unwrap_or(cbow.epochs),
            min_count: o.min_count.unwrap_or(cbow.min_count),
            embedding_lr: o.embedding_lr.unwrap_or(cbow.initial_lr),
            subsample: o.subsample.unwrap_or(cbow.subsample),
            embedding_workers: o.embedding_workers.unwrap_or(cbow.workers),
            embedding_seed: o.embedding_seed.unwrap_or(cbow.seed),
            shared_embeddings: o.shared_embeddings,
            clf: o.clf.unwrap_or(ClassifierKind::SvmLinear),
            c: o.c.unwrap_or(settings.c),
            gamma: o.gamma.unwrap_or(settings.gamma),
            l2: o.l2.unwrap_or(settings.l2),
            tol: o.tol.unwrap_or(settings.tol),
            max_iter: o.max_iter.or(settings.max_iter),
            cache_mb: o.cache_mb.unwrap_or(settings.cache_mb),
            folds: o.folds.unwrap_or(10),
            seed: o.seed.unwrap_or(0),
            include_timing: !o.no_timing,
            jobs: o.jobs,
            strict: o.strict,
            model: o.model.clone(),
            input: o.input.clone(),
            out: o.out.clone(),
            out_dir: o.out_dir.clone(),
            text_out: o.text_out.clone(),
        }
    }

    pub fn prep_config(&self) -> PrepConfig {
        let mut prep = PrepConfig::default();
        if !self.negation {
            prep.negation_cues.clear();
        }
        prep.negation_toggle = self.negation_toggle;
        prep.keep_punctuation = self.keep_punctuation;
        if !self.remove_stopwords {
            prep.stopwords.clear();
        }
        prep
    }

    pub fn decode_options(&self) -> DecodeOptions {
        DecodeOptions {
            encoding: self.encoding,
            strict: self.strict_decode,
        }
    }

    pub fn cbow_config(&self, dim: usize) -> CbowConfig {
        CbowConfig {
            dim,
            window: self.window,
            negative_samples: self.negative,
            epochs: self.epochs,
            initial_lr: self.embedding_lr,
            min_count: self.min_count,
            seed: self.embedding_seed,
            workers: self.embedding_workers,
            subsample: self.subsample,
        }
    }

    pub fn classifier_settings(&self) -> ClassifierSettings {
        ClassifierSettings {
            c: self.c,
            gamma: self.gamma,
            l2: self.l2,
            tol: self.tol,
            max_iter: self.max_iter,
            cache_mb: self.cache_mb,
        }
    }

    pub fn eval_config(&self, lexicon: Vec<LexiconEntry>) -> EvalConfig {
        EvalConfig {
            cbow: self.cbow_config(self.dim),
            min_df: self.min_df,
            max_df_ratio: self.max_df_ratio,
            settings: self.classifier_settings(),
            scaling: self.scaling,
            normalize_pool: self.normalize_pool,
            shared_embeddings: self.shared_embeddings,
            include_timing: self.include_timing,
            lexicon,
        }
    }

    /// The key=value dump written beside outputs; feeding it back via
    /// `--config` reproduces this run.
    pub fn resolved_text(&self) -> String {
        let mut out = String::from("# hww2v resolved configuration\n");
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("command", self.command.clone());
        if let Some(p) = &self.pos {
            kv("pos", p.display().to_string());
        }
        if let Some(p) = &self.neg {
            kv("neg", p.display().to_string());
        }
        if let Some(p) = &self.lexicon {
            kv("lexicon", p.display().to_string());
        }
        if let Some(p) = &self.embeddings {
            kv("embeddings", p.display().to_string());
        }
        kv("encoding", self.encoding.name().to_string());
        kv("strict-decode", self.strict_decode.to_string());
        kv("no-negation", (!self.negation).to_string());
        kv("no-negation-toggle", (!self.negation_toggle).to_string());
        kv("drop-punctuation", (!self.keep_punctuation).to_string());
        kv("keep-stopwords", (!self.remove_stopwords).to_string());
        kv("min-df", self.min_df.to_string());
        kv("max-df-ratio", self.max_df_ratio.to_string());
        kv("repr", self.repr.name().to_string());
        kv("scale", self.scaling.name().to_string());
        kv("normalize-pool", self.normalize_pool.to_string());
        kv("dim", self.dim.to_string());
        kv(
            "dims",
            self.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        kv("window", self.window.to_string());
        kv("negative", self.negative.to_string());
        kv("epochs", self.epochs.to_string());
        kv("min-count", self.min_count.to_string());
        kv("embedding-lr", self.embedding_lr.to_string());
        kv("subsample", self.subsample.to_string());
        kv("embedding-workers", self.embedding_workers.to_string());
        kv("embedding-seed", self.embedding_seed.to_string());
        kv("shared-embeddings", self.shared_embeddings.to_string());
        kv("clf", self.clf.name().to_string());
        kv("c", self.c.to_string());
        kv("gamma", self.gamma.to_string());
        kv("l2", self.l2.to_string());
        kv("tol", self.tol.to_string());
        if let Some(m) = self.max_iter {
            kv("max-iter", m.to_string());
        }
        kv("cache-mb", self.cache_mb.to_string());
        kv("folds", self.folds.to_string());
        kv("seed", self.seed.to_string());
        kv("no-timing", (!self.include_timing).to_string());
        if let Some(j) = self.jobs {
            kv("jobs", j.to_string());
        }
        kv("strict", self.strict.to_string());
        for (key, path) in [
            ("model", &self.model),
            ("input", &self.input),
            ("out", &self.out),
            ("out-dir", &self.out_dir),
            ("text-out", &self.text_out),
        ] {
            if let Some(p) = path {
                kv(key, p.display().to_string());
            }
        }
        out
    }
}

/// `<file>.config` for artifact outputs.
pub fn config_path_beside(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".config");
    PathBuf::from(name)
}
