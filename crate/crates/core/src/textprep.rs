//! Text preparation pipeline: tokenize into sentences, expand
//! contractions, rewrite negation scopes, drop stopwords. All stages are
//! pure and deterministic; documents can be prepared in parallel.

mod tables;

use std::borrow::Cow;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::corpus::{Polarity, RawCorpus};

pub use tables::{CONTRACTIONS, DEFAULT_NEGATION_CUES, DEFAULT_STOPWORDS};

/// Prefix rendered in the canonical string form of a negated token.
pub const NEGATION_MARKER: &str = "NOT_";

/// A lowercase token plus its negation flag. The canonical string form
/// of a negated token is the marker prefix followed by the surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub negated: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>, negated: bool) -> Self {
        Token {
            surface: surface.into(),
            negated,
        }
    }

    pub fn plain(surface: impl Into<String>) -> Self {
        Token::new(surface, false)
    }

    /// Canonical string form used for vocabulary keys.
    pub fn form(&self) -> Cow<'_, str> {
        if self.negated {
            Cow::Owned(format!("{NEGATION_MARKER}{}", self.surface))
        } else {
            Cow::Borrowed(&self.surface)
        }
    }
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.form())
    }
}

/// A document after the full pipeline: retained tokens partitioned into
/// sentences, plus the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedDocument {
    pub sentences: Vec<Vec<Token>>,
    pub label: Polarity,
}

impl PreparedDocument {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Canonical forms of all tokens in order.
    pub fn forms(&self) -> impl Iterator<Item = Cow<'_, str>> {
        self.tokens().map(Token::form)
    }
}

/// Pipeline knobs. Defaults match the shipped tables: eight negation
/// cues, 150 stopwords, toggling double negation, punctuation retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrepConfig {
    pub negation_cues: BTreeSet<String>,
    pub negation_toggle: bool,
    pub keep_punctuation: bool,
    pub stopwords: BTreeSet<String>,
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfig {
            negation_cues: DEFAULT_NEGATION_CUES.iter().map(|s| s.to_string()).collect(),
            negation_toggle: true,
            keep_punctuation: true,
            stopwords: DEFAULT_STOPWORDS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// True when the token carries no letters or digits at all.
pub fn is_punctuation(token: &str) -> bool {
    !token.chars().any(char::is_alphanumeric)
}

/// Split lowercased text into sentences of raw token strings. Word
/// tokens are maximal runs of letters, digits and apostrophes; any other
/// non-space character becomes a single-character token. A run of
/// sentence terminators (`.`, `!`, `?`) closes the sentence once a
/// non-terminator token follows.
pub fn tokenize(text: &str) -> Vec<Vec<String>> {
    let mut sentences: Vec<Vec<String>> = Vec::new();
    let mut sentence: Vec<String> = Vec::new();
    let mut word = String::new();
    let mut after_terminator = false;

    macro_rules! flush_word {
        () => {
            if !word.is_empty() {
                sentence.push(std::mem::take(&mut word));
            }
        };
    }
    macro_rules! break_sentence {
        () => {
            if after_terminator {
                after_terminator = false;
                if !sentence.is_empty() {
                    sentences.push(std::mem::take(&mut sentence));
                }
            }
        };
    }

    for ch in text.chars().flat_map(char::to_lowercase) {
        if ch.is_alphanumeric() || ch == '\'' {
            break_sentence!();
            word.push(ch);
        } else if ch.is_whitespace() {
            flush_word!();
        } else if matches!(ch, '.' | '!' | '?') {
            flush_word!();
            sentence.push(ch.to_string());
            after_terminator = true;
        } else {
            flush_word!();
            break_sentence!();
            sentence.push(ch.to_string());
        }
    }
    flush_word!();
    if !sentence.is_empty() {
        sentences.push(sentence);
    }
    sentences
}

/// Replace table contractions by their expansion sequences and apply the
/// generic `n't` -> base + `not` rule to anything not in the table.
pub fn expand_contractions(tokens: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    for token in tokens {
        if let Some(expansion) = tables::lookup_contraction(token) {
            out.extend(expansion.iter().map(|w| w.to_string()));
        } else if token.len() > 3 && token.ends_with("n't") {
            out.push(token[..token.len() - 3].to_string());
            out.push("not".to_string());
        } else {
            out.push(token.clone());
        }
    }
    out
}

/// Mark the negation scope within one sentence. A cue starts marking all
/// following word tokens; a second cue toggles it off again (or keeps it
/// on when toggling is disabled). Cues and punctuation are never marked.
pub fn mark_negations(sentence: &[String], config: &PrepConfig) -> Vec<Token> {
    let mut marking = false;
    sentence
        .iter()
        .map(|raw| {
            if is_punctuation(raw) {
                Token::plain(raw.clone())
            } else if config.negation_cues.contains(raw) {
                marking = if config.negation_toggle { !marking } else { true };
                Token::plain(raw.clone())
            } else {
                Token::new(raw.clone(), marking)
            }
        })
        .collect()
}

/// Drop unmarked stopwords. Negated tokens always survive; punctuation
/// survives unless configured away.
pub fn remove_stopwords(tokens: Vec<Token>, config: &PrepConfig) -> Vec<Token> {
    tokens
        .into_iter()
        .filter(|t| {
            if t.negated {
                true
            } else if is_punctuation(&t.surface) {
                config.keep_punctuation
            } else {
                !config.stopwords.contains(&t.surface)
            }
        })
        .collect()
}

/// Full pipeline for one text. Sentences that end up with no retained
/// tokens are dropped.
pub fn prepare_text(text: &str, config: &PrepConfig) -> Vec<Vec<Token>> {
    tokenize(text)
        .into_iter()
        .filter_map(|sentence| {
            let expanded = expand_contractions(&sentence);
            let marked = mark_negations(&expanded, config);
            let kept = remove_stopwords(marked, config);
            (!kept.is_empty()).then_some(kept)
        })
        .collect()
}

/// Prepare a whole corpus, preserving record order. Documents whose text
/// retains nothing stay in the output with an empty sentence list.
pub fn prepare(corpus: &RawCorpus, config: &PrepConfig) -> Vec<PreparedDocument> {
    corpus
        .records
        .par_iter()
        .map(|record| PreparedDocument {
            sentences: prepare_text(&record.text, config),
            label: record.label,
        })
        .collect()
}
