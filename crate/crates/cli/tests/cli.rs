//! End-to-end checks of the hww2v binary: subcommand behavior, the
//! config layering rules and the documented exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_hww2v");

const POS_WORDS: [&str; 6] = ["superb", "charming", "delight", "moving", "fresh", "funny"];
const NEG_WORDS: [&str; 6] = ["awful", "tedious", "boring", "dull", "lifeless", "stale"];
const FILL: [&str; 8] = [
    "movie", "film", "story", "plot", "acting", "scene", "script", "ending",
];

fn corpus_file(path: &Path, words: &[&str], salt: usize) {
    let mut lines = String::new();
    for i in 0..20 {
        let w1 = words[i % words.len()];
        let w2 = words[(i + 1 + salt) % words.len()];
        let f1 = FILL[i % FILL.len()];
        let f2 = FILL[(i + 3) % FILL.len()];
        lines.push_str(&format!("the {f1} is {w1} and the {f2} is {w2} .\n"));
    }
    fs::write(path, lines).unwrap();
}

fn lexicon_file(path: &Path) {
    let mut text = String::from("# SentiWordNet v3.0\n");
    let mut id = 1;
    for w in POS_WORDS {
        text.push_str(&format!("a\t{id:08}\t0.75\t0\t{w}#1\tgood gloss\n"));
        id += 1;
    }
    for w in NEG_WORDS {
        text.push_str(&format!("a\t{id:08}\t0\t0.75\t{w}#1\tbad gloss\n"));
        id += 1;
    }
    fs::write(path, text).unwrap();
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        let dir = TempDir::new().unwrap();
        corpus_file(&dir.path().join("pos.txt"), &POS_WORDS, 0);
        corpus_file(&dir.path().join("neg.txt"), &NEG_WORDS, 2);
        lexicon_file(&dir.path().join("swn.txt"));
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(BIN)
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn prepare_writes_labeled_documents_and_a_resolved_config() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "prepare",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--out", &fx.arg("prepared.tsv"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let text = fs::read_to_string(fx.path("prepared.tsv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 40);
    assert_eq!(lines.iter().filter(|l| l.starts_with("positive\t")).count(), 20);
    assert_eq!(lines.iter().filter(|l| l.starts_with("negative\t")).count(), 20);
    assert!(lines[0].contains("superb"));

    let config = fs::read_to_string(fx.path("prepared.tsv.config")).unwrap();
    assert!(config.contains("command=prepare"));
    assert!(config.contains("encoding=windows-1252"));
}

#[test]
fn train_then_predict_scores_every_line_deterministically() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--lexicon", &fx.arg("swn.txt"),
        "--repr", "hybrid",
        "--clf", "nb",
        "--dim", "8",
        "--epochs", "2",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(fx.path("model.bin").exists());
    assert!(fx.path("model.bin.config").exists());

    fs::write(
        fx.path("input.txt"),
        "a superb and charming movie .\nan awful tedious mess .\n\nthe film is fresh .\n",
    )
    .unwrap();
    let predict = |fx: &Fixture| {
        fx.run(&[
            "predict",
            "--model", &fx.arg("model.bin"),
            "--input", &fx.arg("input.txt"),
        ])
    };
    let first = predict(&fx);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "one output line per input line: {text}");
    assert!(lines[0].starts_with("positive\t"));
    assert!(lines[1].starts_with("negative\t"));
    for line in &lines {
        let (label, score) = line.split_once('\t').unwrap();
        assert!(label == "positive" || label == "negative");
        score.parse::<f64>().unwrap();
    }

    let second = predict(&fx);
    assert_eq!(first.stdout, second.stdout, "prediction must be reproducible");
}

#[test]
fn missing_required_paths_exit_1_and_name_the_flags() {
    let fx = Fixture::new();
    let out = fx.run(&["evaluate", "--neg", &fx.arg("neg.txt")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--pos"), "stderr: {}", stderr(&out));
}

#[test]
fn truncated_model_files_exit_2() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bow",
        "--clf", "nb",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let bytes = fs::read(fx.path("model.bin")).unwrap();
    fs::write(fx.path("broken.bin"), &bytes[..bytes.len() / 2]).unwrap();
    fs::write(fx.path("empty.txt"), "").unwrap();
    let out = fx.run(&[
        "predict",
        "--model", &fx.arg("broken.bin"),
        "--input", &fx.arg("empty.txt"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("corrupt"), "stderr: {}", stderr(&out));
}

#[test]
fn predict_rejects_non_bundle_artifacts_naming_both_kinds() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train-embeddings",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--dim", "4",
        "--epochs", "1",
        "--out", &fx.arg("emb.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    fs::write(fx.path("empty.txt"), "").unwrap();
    let out = fx.run(&[
        "predict",
        "--model", &fx.arg("emb.bin"),
        "--input", &fx.arg("empty.txt"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("dictionary matrix"), "stderr: {err}");
    assert!(err.contains("model bundle"), "stderr: {err}");
}

#[test]
fn strict_mode_exits_3_on_convergence_warnings() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bow",
        "--clf", "maxent",
        "--max-iter", "1",
        "--strict",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(fx.path("model.bin").exists(), "the model is still written");
}

#[test]
fn config_file_values_apply_and_explicit_flags_win() {
    let fx = Fixture::new();
    fs::write(fx.path("run.cfg"), "repr=sent\nclf=nb\ndim=64\n").unwrap();
    let out = fx.run(&[
        "train",
        "--config", &fx.arg("run.cfg"),
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--lexicon", &fx.arg("swn.txt"),
        "--clf", "maxent",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let resolved = fs::read_to_string(fx.path("model.bin.config")).unwrap();
    assert!(resolved.contains("repr=sent"), "config file value applies");
    assert!(resolved.contains("clf=maxent"), "explicit flag beats the file");
    assert!(resolved.contains("dim=64"));
}

#[test]
fn unknown_config_keys_exit_1() {
    let fx = Fixture::new();
    fs::write(fx.path("run.cfg"), "reprr=sent\n").unwrap();
    let out = fx.run(&[
        "train",
        "--config", &fx.arg("run.cfg"),
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown config key"), "stderr: {}", stderr(&out));
}

#[test]
fn resolved_config_reloads_into_an_identical_run() {
    let fx = Fixture::new();
    let args = [
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bow",
        "--clf", "nb",
        "--min-df", "2",
        "--out", &fx.arg("first.bin"),
    ];
    assert_eq!(fx.run(&args).status.code(), Some(0));

    let out = fx.run(&[
        "train",
        "--config", &fx.arg("first.bin.config"),
        "--out", &fx.arg("second.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let first = fs::read(fx.path("first.bin")).unwrap();
    let second = fs::read(fx.path("second.bin")).unwrap();
    assert_eq!(first, second, "the resolved dump reproduces the run");
}

#[test]
fn evaluate_reports_per_fold_and_mean_accuracy() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "evaluate",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bow",
        "--clf", "nb",
        "--folds", "4",
        "--no-timing",
        "--out-dir", &fx.arg("report"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("fold\taccuracy"), "stdout: {text}");
    for fold in 0..4 {
        assert!(text.contains(&format!("{fold}\t")), "stdout: {text}");
    }
    assert!(text.contains("mean\t"), "stdout: {text}");

    let tsv = fs::read_to_string(fx.path("report/results.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 1 + 4, "header plus one row per fold");
    assert!(fx.path("report/resolved.config").exists());
}

#[test]
fn grid_covers_every_representation_and_classifier() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "grid",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--lexicon", &fx.arg("swn.txt"),
        "--dims", "4",
        "--folds", "2",
        "--epochs", "2",
        "--max-iter", "200",
        "--no-timing",
        "--out-dir", &fx.arg("grid"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let table = stdout(&out);
    for name in ["sent", "w2v", "bow", "hybrid"] {
        assert!(table.contains(name), "table misses {name}: {table}");
    }
    for name in ["nb", "maxent", "svm-linear", "svm-rbf"] {
        assert!(table.contains(name), "table misses {name}: {table}");
    }

    let tsv = fs::read_to_string(fx.path("grid/results.tsv")).unwrap();
    assert_eq!(
        tsv.lines().count(),
        1 + 4 * 4 * 2,
        "header plus 16 cells x 2 folds"
    );
}

#[test]
fn help_prints_to_stdout_and_exits_0() {
    let fx = Fixture::new();
    let out = fx.run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("predict"));

    let out = fx.run(&["train", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("--pos"));
}

#[test]
fn bad_flag_values_exit_1() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bag-of-tricks",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
}

#[test]
fn empty_prediction_input_exits_0_with_no_output() {
    let fx = Fixture::new();
    let out = fx.run(&[
        "train",
        "--pos", &fx.arg("pos.txt"),
        "--neg", &fx.arg("neg.txt"),
        "--repr", "bow",
        "--clf", "nb",
        "--out", &fx.arg("model.bin"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    fs::write(fx.path("empty.txt"), "").unwrap();
    let out = fx.run(&[
        "predict",
        "--model", &fx.arg("model.bin"),
        "--input", &fx.arg("empty.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
