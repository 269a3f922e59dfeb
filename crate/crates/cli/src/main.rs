//! hww2v: hybrid word2vec sentiment classification over snippet corpora.
//!
//! Exit codes: 0 success, 1 usage, 2 data or parse failure,
//! 3 convergence warning under --strict.

mod config;

use std::fmt;
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use config::{config_path_beside, parse_config_text, parse_dims, Effective, Overrides};
use hww2v_core::eval::ArtifactCache;
use hww2v_core::persist::{self, Artifact, ModelBundle};
use hww2v_core::{
    assemble_all, build_sentiment_matrix, build_vocabulary, collect_forms, grid_cells,
    load_polarity_corpus, load_sentiwordnet, load_word_vectors, make_folds, prepare, prepare_text,
    render_table, render_tsv, run_cell, train_cbow, train_classifier, CellSpec, Components,
    DictionaryMatrix, DocFrequency, Error as CoreError, GridReport, GridRow,
    LexiconEntry, Polarity, PreparedDocument, RawCorpus, RepresentationChoice, TrainedModel,
};

/// Usage problems exit with code 1 instead of 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn log(msg: impl AsRef<str>) {
    eprintln!("[hww2v] {}", msg.as_ref());
}

#[derive(Parser)]
#[command(
    name = "hww2v",
    version,
    about = "Hybrid word2vec document representations and sentiment classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize, expand contractions, mark negations and prune stopwords
    Prepare(CmdArgs),
    /// Train CBOW word vectors on the prepared corpus
    TrainEmbeddings(CmdArgs),
    /// Write the document-representation matrix as sparse text
    Represent(CmdArgs),
    /// Fit one classifier on the full corpus and save the model bundle
    Train(CmdArgs),
    /// Cross-validate one representation x classifier cell
    Evaluate(CmdArgs),
    /// Cross-validate every representation x classifier cell
    Grid(CmdArgs),
    /// Score text lines with a saved model bundle
    Predict(CmdArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Prepare(_) => "prepare",
            Command::TrainEmbeddings(_) => "train-embeddings",
            Command::Represent(_) => "represent",
            Command::Train(_) => "train",
            Command::Evaluate(_) => "evaluate",
            Command::Grid(_) => "grid",
            Command::Predict(_) => "predict",
        }
    }

    fn args(&self) -> &CmdArgs {
        match self {
            Command::Prepare(a)
            | Command::TrainEmbeddings(a)
            | Command::Represent(a)
            | Command::Train(a)
            | Command::Evaluate(a)
            | Command::Grid(a)
            | Command::Predict(a) => a,
        }
    }
}

#[derive(Args)]
struct CmdArgs {
    /// key=value file read before flags; flags override its entries
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// positive snippet file, one document per line
    #[arg(long, value_name = "FILE")]
    pos: Option<PathBuf>,
    /// negative snippet file, one document per line
    #[arg(long, value_name = "FILE")]
    neg: Option<PathBuf>,
    /// SentiWordNet 3.0 lexicon file
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// word vectors to reuse (binary artifact or word2vec text)
    #[arg(long, value_name = "FILE")]
    embeddings: Option<PathBuf>,
    /// snippet encoding: windows-1252 (default), latin-1 or utf-8
    #[arg(long, value_name = "NAME")]
    encoding: Option<String>,
    /// fail on undecodable bytes instead of substituting U+FFFD
    #[arg(long)]
    strict_decode: bool,

    /// disable negation marking
    #[arg(long)]
    no_negation: bool,
    /// a second cue keeps the scope open instead of closing it
    #[arg(long)]
    no_negation_toggle: bool,
    /// drop punctuation tokens kept by default
    #[arg(long)]
    drop_punctuation: bool,
    /// skip stopword removal
    #[arg(long)]
    keep_stopwords: bool,

    /// drop vocabulary terms seen in fewer than this many documents
    #[arg(long, value_name = "N")]
    min_df: Option<usize>,
    /// drop vocabulary terms seen in more than this fraction of documents
    #[arg(long, value_name = "RATIO")]
    max_df_ratio: Option<f64>,

    /// representation: bow, w2v, sent or hybrid
    #[arg(long, value_name = "NAME")]
    repr: Option<String>,
    /// whole-vector scaling: none or unit
    #[arg(long, value_name = "NAME")]
    scale: Option<String>,
    /// divide the pooled embedding by the total token weight
    #[arg(long)]
    normalize_pool: bool,

    /// embedding dimensionality for single-cell commands
    #[arg(long, value_name = "N")]
    dim: Option<usize>,
    /// comma-separated grid dimensionalities, e.g. 100,300
    #[arg(long, value_name = "LIST")]
    dims: Option<String>,
    /// CBOW context window
    #[arg(long, value_name = "N")]
    window: Option<usize>,
    /// negative samples per center word
    #[arg(long, value_name = "N")]
    negative: Option<usize>,
    /// CBOW training epochs
    #[arg(long, value_name = "N")]
    epochs: Option<usize>,
    /// drop embedding-vocabulary words below this corpus count
    #[arg(long, value_name = "N")]
    min_count: Option<usize>,
    /// initial CBOW learning rate
    #[arg(long, value_name = "LR")]
    embedding_lr: Option<f64>,
    /// subsampling threshold for frequent words (0 disables)
    #[arg(long, value_name = "T")]
    subsample: Option<f64>,
    /// CBOW worker threads (1 = deterministic)
    #[arg(long, value_name = "N")]
    embedding_workers: Option<usize>,
    /// CBOW RNG seed
    #[arg(long, value_name = "SEED")]
    embedding_seed: Option<u64>,
    /// train fold embeddings once on all text instead of per fold
    #[arg(long)]
    shared_embeddings: bool,

    /// classifier: nb, maxent, svm-linear or svm-rbf
    #[arg(long, value_name = "NAME")]
    clf: Option<String>,
    /// SVM box constraint
    #[arg(long, value_name = "C")]
    c: Option<f64>,
    /// RBF gamma: "scale" or a number
    #[arg(long, value_name = "G")]
    gamma: Option<String>,
    /// MaxEnt L2 regularization strength
    #[arg(long, value_name = "L2")]
    l2: Option<f64>,
    /// optimizer stopping tolerance
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,
    /// MaxEnt iteration cap / SVM pass cap
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,
    /// kernel row cache size in MiB
    #[arg(long, value_name = "MB")]
    cache_mb: Option<usize>,

    /// cross-validation folds
    #[arg(long, value_name = "K")]
    folds: Option<usize>,
    /// fold-assignment seed
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// omit per-fold seconds for byte-identical reruns
    #[arg(long)]
    no_timing: bool,

    /// worker threads for fold and document parallelism
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// exit 3 when an optimizer stops without converging
    #[arg(long)]
    strict: bool,

    /// saved model bundle (predict)
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// text lines to score; stdin when omitted (predict)
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// output file (prepare, train-embeddings, represent, train)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// directory for reports and the resolved config (evaluate, grid)
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// also dump trained embeddings as word2vec text (train-embeddings)
    #[arg(long, value_name = "FILE")]
    text_out: Option<PathBuf>,
}

impl CmdArgs {
    fn to_overrides(&self) -> anyhow::Result<Overrides> {
        let mut o = Overrides {
            pos: self.pos.clone(),
            neg: self.neg.clone(),
            lexicon: self.lexicon.clone(),
            embeddings: self.embeddings.clone(),
            strict_decode: self.strict_decode,
            no_negation: self.no_negation,
            no_negation_toggle: self.no_negation_toggle,
            drop_punctuation: self.drop_punctuation,
            keep_stopwords: self.keep_stopwords,
            min_df: self.min_df,
            max_df_ratio: self.max_df_ratio,
            normalize_pool: self.normalize_pool,
            dim: self.dim,
            window: self.window,
            negative: self.negative,
            epochs: self.epochs,
            min_count: self.min_count,
            embedding_lr: self.embedding_lr,
            subsample: self.subsample,
            embedding_workers: self.embedding_workers,
            embedding_seed: self.embedding_seed,
            shared_embeddings: self.shared_embeddings,
            c: self.c,
            l2: self.l2,
            tol: self.tol,
            max_iter: self.max_iter,
            cache_mb: self.cache_mb,
            folds: self.folds,
            seed: self.seed,
            no_timing: self.no_timing,
            jobs: self.jobs,
            strict: self.strict,
            model: self.model.clone(),
            input: self.input.clone(),
            out: self.out.clone(),
            out_dir: self.out_dir.clone(),
            text_out: self.text_out.clone(),
            ..Overrides::default()
        };
        if let Some(s) = &self.encoding {
            o.encoding = Some(s.parse().map_err(usage)?);
        }
        if let Some(s) = &self.repr {
            o.repr = Some(s.parse().map_err(|e| usage(format!("{e}")))?);
        }
        if let Some(s) = &self.scale {
            o.scale = Some(s.parse().map_err(|e| usage(format!("{e}")))?);
        }
        if let Some(s) = &self.clf {
            o.clf = Some(s.parse().map_err(|e| usage(format!("{e}")))?);
        }
        if let Some(s) = &self.gamma {
            o.gamma = Some(s.parse().map_err(|e| usage(format!("{e}")))?);
        }
        if let Some(s) = &self.dims {
            o.dims = Some(parse_dims(s).map_err(usage)?);
        }
        Ok(o)
    }
}

fn effective_config(command: &Command) -> anyhow::Result<Effective> {
    let args = command.args();
    let mut base = Overrides::default();
    if let Some(path) = &args.config {
        let content = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let pairs = parse_config_text(&content)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for (key, value) in pairs {
            base.apply_key(&key, &value)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        }
    }
    let merged = base.layered_under(&args.to_overrides()?);
    Ok(Effective::new(command.name(), &merged))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match dispatch(&cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("hww2v: {err:#}");
            if err.downcast_ref::<Usage>().is_some() {
                1
            } else {
                2
            }
        }
    };
    std::process::exit(code);
}

fn dispatch(command: &Command) -> anyhow::Result<i32> {
    let eff = effective_config(command)?;
    if let Some(jobs) = eff.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match command {
        Command::Prepare(_) => cmd_prepare(&eff),
        Command::TrainEmbeddings(_) => cmd_train_embeddings(&eff),
        Command::Represent(_) => cmd_represent(&eff),
        Command::Train(_) => cmd_train(&eff),
        Command::Evaluate(_) => cmd_evaluate(&eff),
        Command::Grid(_) => cmd_grid(&eff),
        Command::Predict(_) => cmd_predict(&eff),
    }
}

fn require(path: &Option<PathBuf>, flag: &str, missing: &mut Vec<String>) -> Option<PathBuf> {
    match path {
        Some(p) => Some(p.clone()),
        None => {
            missing.push(format!("--{flag}"));
            None
        }
    }
}

fn corpus_paths(eff: &Effective) -> anyhow::Result<(PathBuf, PathBuf)> {
    let mut missing = Vec::new();
    let pos = require(&eff.pos, "pos", &mut missing);
    let neg = require(&eff.neg, "neg", &mut missing);
    match (pos, neg) {
        (Some(pos), Some(neg)) => Ok((pos, neg)),
        _ => Err(usage(format!("missing required paths: {}", missing.join(", ")))),
    }
}

fn load_corpus(eff: &Effective) -> anyhow::Result<RawCorpus> {
    let (pos, neg) = corpus_paths(eff)?;
    let corpus = load_polarity_corpus(&pos, &neg, &eff.decode_options())?;
    log(format!(
        "loaded {} documents ({} positive, {} negative)",
        corpus.len(),
        corpus.count(Polarity::Positive),
        corpus.count(Polarity::Negative)
    ));
    Ok(corpus)
}

fn prepare_docs(eff: &Effective) -> anyhow::Result<Vec<PreparedDocument>> {
    let corpus = load_corpus(eff)?;
    Ok(prepare(&corpus, &eff.prep_config()))
}

fn load_lexicon_entries(eff: &Effective) -> anyhow::Result<Vec<LexiconEntry>> {
    let Some(path) = &eff.lexicon else {
        return Err(usage(format!(
            "representation '{}' needs --lexicon",
            eff.repr.name()
        )));
    };
    let load = load_sentiwordnet(path)?;
    log(format!(
        "loaded {} lexicon synsets ({} multiword lemmas skipped)",
        load.entries.len(),
        load.multiword_lemmas
    ));
    Ok(load.entries)
}

fn obtain_embeddings(
    eff: &Effective,
    docs: &[PreparedDocument],
) -> anyhow::Result<DictionaryMatrix> {
    match &eff.embeddings {
        Some(path) => load_embedding_file(path),
        None => {
            log(format!(
                "training {}-dim CBOW embeddings ({} epochs)",
                eff.dim, eff.epochs
            ));
            Ok(train_cbow(docs, &eff.cbow_config(eff.dim))?)
        }
    }
}

fn load_embedding_file(path: &Path) -> anyhow::Result<DictionaryMatrix> {
    match persist::load_model(path) {
        Ok(Artifact::Dictionary(matrix)) => {
            log(format!(
                "loaded {} word vectors of dim {} from {}",
                matrix.len(),
                matrix.dim(),
                path.display()
            ));
            Ok(matrix)
        }
        Ok(other) => Err(CoreError::WrongArtifact {
            path: path.to_path_buf(),
            found: other.kind_name(),
            expected: "dictionary matrix",
        }
        .into()),
        Err(CoreError::BadMagic { .. }) => {
            let matrix = load_word_vectors(path)?;
            log(format!(
                "loaded {} text word vectors of dim {} from {}",
                matrix.len(),
                matrix.dim(),
                path.display()
            ));
            Ok(matrix)
        }
        Err(err) => Err(err.into()),
    }
}

fn fit_components(eff: &Effective, docs: &[PreparedDocument]) -> anyhow::Result<Components> {
    let repr = eff.repr;
    let mut components = Components {
        normalize_pool: eff.normalize_pool,
        ..Components::default()
    };
    if matches!(
        repr,
        RepresentationChoice::BowOnly | RepresentationChoice::Hybrid
    ) {
        let vocab = build_vocabulary(docs, eff.min_df, eff.max_df_ratio)?;
        log(format!("vocabulary: {} terms", vocab.len()));
        components.vocab = Some(vocab);
    }
    if repr.uses_embeddings() {
        components.doc_freq = Some(DocFrequency::fit(docs));
        components.matrix = Some(obtain_embeddings(eff, docs)?);
    }
    if matches!(
        repr,
        RepresentationChoice::SentimentOnly | RepresentationChoice::Hybrid
    ) {
        let entries = load_lexicon_entries(eff)?;
        components.sentiment = Some(build_sentiment_matrix(&entries, &collect_forms(docs)));
    }
    Ok(components)
}

fn require_out(eff: &Effective) -> anyhow::Result<PathBuf> {
    eff.out
        .clone()
        .ok_or_else(|| usage("missing required path: --out"))
}

fn write_resolved_beside(eff: &Effective, out: &Path) -> anyhow::Result<()> {
    let path = config_path_beside(out);
    fs::write(&path, eff.resolved_text())
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn create_out_file(path: &Path) -> anyhow::Result<BufWriter<fs::File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
    }
    let file =
        fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn cmd_prepare(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let out = require_out(eff)?;
    let mut writer = create_out_file(&out)?;
    for doc in &docs {
        write!(writer, "{}", doc.label.name())?;
        for sentence in &doc.sentences {
            let line: Vec<String> = sentence.iter().map(|t| t.form().into_owned()).collect();
            write!(writer, "\t{}", line.join(" "))?;
        }
        writeln!(writer)?;
    }
    writer.flush()?;
    write_resolved_beside(eff, &out)?;
    log(format!("wrote {} prepared documents to {}", docs.len(), out.display()));
    Ok(0)
}

fn cmd_train_embeddings(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let out = require_out(eff)?;
    let matrix = train_cbow(&docs, &eff.cbow_config(eff.dim))?;
    log(format!(
        "trained {} word vectors of dim {}",
        matrix.len(),
        matrix.dim()
    ));
    persist::save_model(&Artifact::Dictionary(matrix.clone()), &out)?;
    if let Some(text_out) = &eff.text_out {
        matrix.save_text(text_out)?;
        log(format!("wrote text vectors to {}", text_out.display()));
    }
    write_resolved_beside(eff, &out)?;
    log(format!("saved embeddings to {}", out.display()));
    Ok(0)
}

fn cmd_represent(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let out = require_out(eff)?;
    let components = fit_components(eff, &docs)?;
    let vectors = assemble_all(&docs, eff.repr, &components, eff.scaling)?;
    let mut writer = create_out_file(&out)?;
    hww2v_core::write_matrix(&vectors, &mut writer)?;
    writer.flush()?;
    write_resolved_beside(eff, &out)?;
    let dim = vectors.first().map(|v| v.dim()).unwrap_or(0);
    log(format!(
        "wrote {} x {} representation matrix to {}",
        vectors.len(),
        dim,
        out.display()
    ));
    Ok(0)
}

fn cmd_train(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let out = require_out(eff)?;
    let components = fit_components(eff, &docs)?;
    let mut vectors = assemble_all(&docs, eff.repr, &components, eff.scaling)?;
    let labels: Vec<Polarity> = docs.iter().map(|d| d.label).collect();
    let shift = if eff.clf.needs_nonnegative_features() {
        let shift = hww2v_core::NonNegShift::fit(&vectors);
        shift.apply_all(&mut vectors);
        Some(shift)
    } else {
        None
    };
    log(format!(
        "training {} on {} vectors of dim {}",
        eff.clf.name(),
        vectors.len(),
        vectors.first().map(|v| v.dim()).unwrap_or(0)
    ));
    let model = train_classifier(eff.clf, &vectors, &labels, &eff.classifier_settings())?;
    let warned = model.convergence_warning();
    let bundle = ModelBundle {
        prep: eff.prep_config(),
        representation: eff.repr,
        scaling: eff.scaling,
        components,
        shift,
        model,
    };
    persist::save_model(&Artifact::Bundle(bundle), &out)?;
    write_resolved_beside(eff, &out)?;
    log(format!("saved model bundle to {}", out.display()));
    if warned {
        log("warning: optimizer stopped before reaching its tolerance");
        if eff.strict {
            return Ok(3);
        }
    }
    Ok(0)
}

fn single_cell(eff: &Effective) -> CellSpec {
    CellSpec {
        representation: eff.repr,
        classifier: eff.clf,
        dim: eff.repr.uses_embeddings().then_some(eff.dim),
    }
}

fn eval_lexicon(eff: &Effective, needed: bool) -> anyhow::Result<Vec<LexiconEntry>> {
    if needed {
        load_lexicon_entries(eff)
    } else {
        Ok(Vec::new())
    }
}

fn write_report_files(eff: &Effective, report: &GridReport) -> anyhow::Result<()> {
    let Some(dir) = &eff.out_dir else {
        return Ok(());
    };
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let tsv = dir.join("results.tsv");
    fs::write(&tsv, render_tsv(report)).with_context(|| format!("cannot write {}", tsv.display()))?;
    let cfg = dir.join("resolved.config");
    fs::write(&cfg, eff.resolved_text())
        .with_context(|| format!("cannot write {}", cfg.display()))?;
    log(format!("wrote {} and {}", tsv.display(), cfg.display()));
    Ok(())
}

fn cmd_evaluate(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let labels: Vec<Polarity> = docs.iter().map(|d| d.label).collect();
    let plan = make_folds(&labels, eff.folds, eff.seed)?;
    let spec = single_cell(eff);
    let uses_sentiment = matches!(
        eff.repr,
        RepresentationChoice::SentimentOnly | RepresentationChoice::Hybrid
    );
    let config = eff.eval_config(eval_lexicon(eff, uses_sentiment)?);
    let cache = ArtifactCache::new();
    log(format!(
        "evaluating {} / {} over {} folds (seed {})",
        spec.representation.name(),
        spec.classifier.name(),
        plan.k(),
        plan.seed()
    ));
    let result = run_cell(&docs, &spec, &plan, &config, &cache)?;
    let report = GridReport {
        rows: vec![GridRow {
            spec,
            outcome: Ok(result.clone()),
        }],
        include_timing: eff.include_timing,
    };
    println!("{}", render_table(&report));
    println!("fold\taccuracy");
    for (fold, accuracy) in result.fold_accuracies.iter().enumerate() {
        println!("{fold}\t{accuracy:.4}");
    }
    println!("mean\t{:.4}", result.mean_accuracy);
    write_report_files(eff, &report)?;
    if result.convergence_warning {
        log("warning: at least one fold's optimizer stopped before tolerance");
        if eff.strict {
            return Ok(3);
        }
    }
    Ok(0)
}

fn cmd_grid(eff: &Effective) -> anyhow::Result<i32> {
    let docs = prepare_docs(eff)?;
    let labels: Vec<Polarity> = docs.iter().map(|d| d.label).collect();
    let plan = make_folds(&labels, eff.folds, eff.seed)?;
    let cells = grid_cells(&eff.dims);
    let config = eff.eval_config(eval_lexicon(eff, true)?);
    log(format!(
        "running {} grid cells over {} folds (seed {})",
        cells.len(),
        plan.k(),
        plan.seed()
    ));
    let report = hww2v_core::run_grid(&docs, &cells, &plan, &config);
    println!("{}", render_table(&report));
    write_report_files(eff, &report)?;
    if report.any_failed() {
        log("error: at least one grid cell failed");
        return Ok(2);
    }
    if report.any_warning() {
        log("warning: at least one cell's optimizer stopped before tolerance");
        if eff.strict {
            return Ok(3);
        }
    }
    Ok(0)
}

fn model_dim(model: &TrainedModel) -> Option<usize> {
    match model {
        TrainedModel::NaiveBayes(m) => Some(m.dim()),
        TrainedModel::MaxEnt(m) => Some(m.dim()),
        TrainedModel::Svm(m) => m.support_vectors().first().map(|v| v.dim()),
    }
}

fn cmd_predict(eff: &Effective) -> anyhow::Result<i32> {
    let Some(model_path) = &eff.model else {
        return Err(usage("missing required path: --model"));
    };
    let bundle = persist::load_model(model_path)?.expect_bundle(model_path)?;
    let text = match &eff.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| anyhow::Error::new(CoreError::io(path.clone(), e)))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for line in text.lines() {
        let doc = PreparedDocument {
            sentences: prepare_text(line, &bundle.prep),
            label: Polarity::Positive,
        };
        let vector = bundle.vectorize(&doc)?;
        if let Some(dim) = model_dim(&bundle.model) {
            if dim != vector.dim() {
                return Err(CoreError::Validation(format!(
                    "representation '{}' produced {}-dim vectors but the {} model expects {}",
                    bundle.representation.name(),
                    vector.dim(),
                    bundle.model.kind().name(),
                    dim
                ))
                .into());
            }
        }
        let label = bundle.model.predict(&vector);
        let score = bundle.model.decision(&vector);
        writeln!(out, "{}\t{:.6}", label.name(), score)?;
    }
    out.flush()?;
    Ok(0)
}
