//! Sentiment matrix built from SentiWordNet rows and 4-dim document
//! features: (positive, objective, negative, unknown), aggregated per
//! sentence by a normalized count-vector dot product, then averaged
//! over sentences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::sentiwordnet::LexiconEntry;
use crate::textprep::{PreparedDocument, Token, NEGATION_MARKER};

/// One 4-dim sentiment vector; components are percentages summing to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentFeatures {
    pub positive: f64,
    pub objective: f64,
    pub negative: f64,
    pub unknown: f64,
}

impl SentimentFeatures {
    /// Row of a token absent from the lexicon: all mass on unknown.
    pub const UNKNOWN: SentimentFeatures = SentimentFeatures {
        positive: 0.0,
        objective: 0.0,
        negative: 0.0,
        unknown: 1.0,
    };

    pub fn to_array(self) -> [f64; 4] {
        [self.positive, self.objective, self.negative, self.unknown]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        SentimentFeatures {
            positive: v[0],
            objective: v[1],
            negative: v[2],
            unknown: v[3],
        }
    }

    pub fn sum(&self) -> f64 {
        self.positive + self.objective + self.negative + self.unknown
    }

    /// Polarity reversal: positive and negative swap, the rest is fixed.
    pub fn reversed(self) -> Self {
        SentimentFeatures {
            positive: self.negative,
            objective: self.objective,
            negative: self.positive,
            unknown: self.unknown,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self
            .to_array()
            .iter()
            .all(|v| v.is_finite() && (-1e-9..=1.0 + 1e-9).contains(v));
        if !ok || (self.sum() - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!("bad sentiment row {self:?}")));
        }
        Ok(())
    }
}

/// Per-token sentiment rows for one fitted vocabulary. Tokens without a
/// stored row read as the all-unknown row.
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentMatrix {
    rows: HashMap<String, SentimentFeatures>,
}

impl SentimentMatrix {
    pub fn from_rows(rows: HashMap<String, SentimentFeatures>) -> Result<Self> {
        for (token, row) in &rows {
            row.validate()
                .map_err(|_| Error::Validation(format!("bad sentiment row for '{token}': {row:?}")))?;
        }
        Ok(SentimentMatrix { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, form: &str) -> SentimentFeatures {
        self.rows
            .get(form)
            .copied()
            .unwrap_or(SentimentFeatures::UNKNOWN)
    }

    pub fn has_row(&self, form: &str) -> bool {
        self.rows.contains_key(form)
    }

    /// Rows in token order, for persistence and dumps.
    pub fn sorted_rows(&self) -> Vec<(&str, SentimentFeatures)> {
        let mut rows: Vec<(&str, SentimentFeatures)> =
            self.rows.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        rows.sort_by_key(|&(k, _)| k);
        rows
    }
}

/// All distinct token forms of a document set, sorted.
pub fn collect_forms(docs: &[PreparedDocument]) -> BTreeSet<String> {
    docs.iter()
        .flat_map(|d| d.forms())
        .map(|f| f.into_owned())
        .collect()
}

/// Build rows for the given token forms. A token's scores are the
/// unweighted mean over all synsets (any part of speech) whose term
/// list contains its surface; `NOT_`-prefixed forms take the reversed
/// row of their base. Tokens matching nothing get no stored row and
/// read as all-unknown.
pub fn build_sentiment_matrix(
    lexicon: &[LexiconEntry],
    tokens: &BTreeSet<String>,
) -> SentimentMatrix {
    let mut by_lemma: HashMap<&str, Vec<(f64, f64, f64)>> = HashMap::new();
    for entry in lexicon {
        for (lemma, _rank) in &entry.terms {
            if lemma.contains('_') {
                continue;
            }
            by_lemma
                .entry(lemma.as_str())
                .or_default()
                .push((entry.pos_score, entry.obj_score(), entry.neg_score));
        }
    }
    let mut rows = HashMap::new();
    for form in tokens {
        let (base, negated) = match form.strip_prefix(NEGATION_MARKER) {
            Some(rest) => (rest, true),
            None => (form.as_str(), false),
        };
        let Some(scores) = by_lemma.get(base) else {
            continue;
        };
        let n = scores.len() as f64;
        let row = SentimentFeatures {
            positive: scores.iter().map(|s| s.0).sum::<f64>() / n,
            objective: scores.iter().map(|s| s.1).sum::<f64>() / n,
            negative: scores.iter().map(|s| s.2).sum::<f64>() / n,
            unknown: 0.0,
        };
        rows.insert(form.clone(), if negated { row.reversed() } else { row });
    }
    SentimentMatrix { rows }
}

/// Count-vector dot product with the matrix, normalized by the sentence
/// length. Empty sentences read as all-unknown.
pub fn sentence_sentiment(sentence: &[Token], matrix: &SentimentMatrix) -> SentimentFeatures {
    if sentence.is_empty() {
        return SentimentFeatures::UNKNOWN;
    }
    let mut counts: BTreeMap<String, f64> = BTreeMap::new();
    for token in sentence {
        *counts.entry(token.form().into_owned()).or_insert(0.0) += 1.0;
    }
    let total = sentence.len() as f64;
    let mut acc = [0.0f64; 4];
    for (form, count) in &counts {
        let row = matrix.row(form).to_array();
        for (a, r) in acc.iter_mut().zip(row) {
            *a += count * r;
        }
    }
    for a in &mut acc {
        *a /= total;
    }
    SentimentFeatures::from_array(acc)
}

/// Unweighted mean of the per-sentence features; a document with no
/// sentences reads as all-unknown.
pub fn document_sentiment(doc: &PreparedDocument, matrix: &SentimentMatrix) -> SentimentFeatures {
    if doc.sentences.is_empty() {
        return SentimentFeatures::UNKNOWN;
    }
    let mut acc = [0.0f64; 4];
    for sentence in &doc.sentences {
        let s = sentence_sentiment(sentence, matrix).to_array();
        for (a, v) in acc.iter_mut().zip(s) {
            *a += v;
        }
    }
    let n = doc.sentences.len() as f64;
    for a in &mut acc {
        *a /= n;
    }
    SentimentFeatures::from_array(acc)
}
