//! Vocabulary construction with document-frequency pruning and
//! binary-TF x IDF sparse document vectors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;

use crate::error::{Error, Result};
use crate::textprep::PreparedDocument;

/// Token <-> dense index map plus per-token document frequencies over
/// the corpus the vocabulary was built on. Indices follow lexicographic
/// token order.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    index_of: HashMap<String, u32>,
    tokens: Vec<String>,
    doc_freq: Vec<u32>,
    total_docs: usize,
}

impl Vocabulary {
    pub fn from_parts(tokens: Vec<String>, doc_freq: Vec<u32>, total_docs: usize) -> Result<Self> {
        if tokens.len() != doc_freq.len() {
            return Err(Error::Validation(format!(
                "vocabulary has {} tokens but {} document frequencies",
                tokens.len(),
                doc_freq.len()
            )));
        }
        let index_of: HashMap<String, u32> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        if index_of.len() != tokens.len() {
            return Err(Error::Validation("vocabulary contains duplicate tokens".into()));
        }
        Ok(Vocabulary {
            index_of,
            tokens,
            doc_freq,
            total_docs,
        })
    }

    /// Dictionary size B.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn total_docs(&self) -> usize {
        self.total_docs
    }

    pub fn index(&self, token: &str) -> Option<u32> {
        self.index_of.get(token).copied()
    }

    pub fn token(&self, index: u32) -> &str {
        &self.tokens[index as usize]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn doc_freq(&self, index: u32) -> u32 {
        self.doc_freq[index as usize]
    }

    pub fn doc_freqs(&self) -> &[u32] {
        &self.doc_freq
    }

    /// ln(D / D_i), the inverse document frequency of Eq.-style weighting.
    pub fn idf(&self, index: u32) -> f64 {
        (self.total_docs as f64 / self.doc_freq[index as usize] as f64).ln()
    }

    /// Text dump, one `token<TAB>index<TAB>df` line per entry.
    pub fn write_tsv(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (i, token) in self.tokens.iter().enumerate() {
            writeln!(out, "{token}\t{i}\t{}", self.doc_freq[i])?;
        }
        Ok(())
    }
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
    dim: usize,
}

impl SparseVector {
    pub fn new(entries: Vec<(u32, f64)>, dim: usize) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(i, v)| (i as usize) < dim && v != 0.0));
        SparseVector { entries, dim }
    }

    pub fn empty(dim: usize) -> Self {
        SparseVector {
            entries: Vec::new(),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    /// Value at an index, zero when absent.
    pub fn get(&self, index: u32) -> f64 {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0.0)
    }
}

/// Count in how many documents each token form occurs.
fn document_frequencies(docs: &[PreparedDocument]) -> BTreeMap<String, u32> {
    let mut df: BTreeMap<String, u32> = BTreeMap::new();
    for doc in docs {
        let distinct: BTreeSet<String> = doc.forms().map(|f| f.into_owned()).collect();
        for form in distinct {
            *df.entry(form).or_insert(0) += 1;
        }
    }
    df
}

/// Build the pruned vocabulary: keep tokens with
/// min_df <= D_i <= floor(max_df_ratio * D).
pub fn build_vocabulary(
    docs: &[PreparedDocument],
    min_df: usize,
    max_df_ratio: f64,
) -> Result<Vocabulary> {
    if min_df < 1 {
        return Err(Error::Validation("min_df must be at least 1".into()));
    }
    if !(max_df_ratio > 0.0 && max_df_ratio <= 1.0) {
        return Err(Error::Validation(format!(
            "max_df_ratio {max_df_ratio} outside (0, 1]"
        )));
    }
    let total_docs = docs.len();
    let max_df = (max_df_ratio * total_docs as f64).floor() as u32;
    let mut tokens = Vec::new();
    let mut doc_freq = Vec::new();
    for (token, df) in document_frequencies(docs) {
        if df as usize >= min_df && df <= max_df {
            tokens.push(token);
            doc_freq.push(df);
        }
    }
    if tokens.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    Vocabulary::from_parts(tokens, doc_freq, total_docs)
}

/// Binary-TF x IDF vector: ln(D / D_i) at index i when token i occurs in
/// the document at all. Zero-IDF terms and out-of-vocabulary tokens
/// contribute no stored entry.
pub fn bow_vector(doc: &PreparedDocument, vocab: &Vocabulary) -> SparseVector {
    let mut present: BTreeSet<u32> = BTreeSet::new();
    for form in doc.forms() {
        if let Some(index) = vocab.index(&form) {
            present.insert(index);
        }
    }
    let entries: Vec<(u32, f64)> = present
        .into_iter()
        .filter_map(|i| {
            let idf = vocab.idf(i);
            (idf != 0.0).then_some((i, idf))
        })
        .collect();
    SparseVector::new(entries, vocab.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Polarity;
    use crate::textprep::Token;

    fn doc(sentences: &[&[&str]]) -> PreparedDocument {
        PreparedDocument {
            sentences: sentences
                .iter()
                .map(|s| s.iter().map(|t| Token::plain(*t)).collect())
                .collect(),
            label: Polarity::Positive,
        }
    }

    #[test]
    fn builds_counts_by_hand() {
        let docs = vec![doc(&[&["a", "b"]]), doc(&[&["b", "c"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        assert_eq!(vocab.len(), 3);
        assert_eq!(vocab.doc_freq(vocab.index("b").unwrap()), 2);
        assert_eq!(vocab.total_docs(), 2);
    }

    #[test]
    fn min_df_filters() {
        let docs = vec![doc(&[&["a", "b"]]), doc(&[&["b", "c"]])];
        let vocab = build_vocabulary(&docs, 2, 1.0).unwrap();
        assert_eq!(vocab.tokens(), &["b".to_string()]);
    }

    #[test]
    fn vacuous_bounds_remove_nothing() {
        let docs = vec![doc(&[&["x", "y", "z"]]), doc(&[&["x"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        assert_eq!(vocab.len(), 3);
    }

    #[test]
    fn max_df_ratio_drops_ubiquitous_terms() {
        let docs = vec![
            doc(&[&["the", "a"]]),
            doc(&[&["the", "b"]]),
            doc(&[&["the", "c"]]),
            doc(&[&["b", "c"]]),
        ];
        let vocab = build_vocabulary(&docs, 1, 0.5).unwrap();
        assert!(vocab.index("the").is_none());
        assert!(vocab.index("b").is_some());
    }

    #[test]
    fn indices_follow_lexicographic_order() {
        let docs = vec![doc(&[&["zebra", "apple", "mango"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        assert_eq!(vocab.tokens(), &["apple", "mango", "zebra"]);
        assert_eq!(vocab.index("apple"), Some(0));
        assert_eq!(vocab.token(2), "zebra");
    }

    #[test]
    fn negated_tokens_are_distinct_entries() {
        let d = PreparedDocument {
            sentences: vec![vec![Token::plain("good"), Token::new("good", true)]],
            label: Polarity::Positive,
        };
        let vocab = build_vocabulary(&[d], 1, 1.0).unwrap();
        assert_eq!(vocab.len(), 2);
        assert!(vocab.index("good").is_some());
        assert!(vocab.index("NOT_good").is_some());
    }

    #[test]
    fn empty_vocabulary_is_an_error() {
        let docs = vec![doc(&[&["a"]])];
        let err = build_vocabulary(&docs, 5, 1.0).unwrap_err();
        assert!(matches!(err, Error::EmptyVocabulary));
    }

    #[test]
    fn bad_pruning_parameters_rejected() {
        let docs = vec![doc(&[&["a"]])];
        assert!(build_vocabulary(&docs, 0, 1.0).is_err());
        assert!(build_vocabulary(&docs, 1, 0.0).is_err());
        assert!(build_vocabulary(&docs, 1, 1.5).is_err());
    }

    #[test]
    fn rare_term_gets_ln2_weight() {
        let docs = vec![doc(&[&["b", "c"]]), doc(&[&["b"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let v = bow_vector(&docs[0], &vocab);
        let c = vocab.index("c").unwrap();
        assert!((v.get(c) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn ubiquitous_term_has_zero_weight_and_no_entry() {
        let docs = vec![doc(&[&["b", "b", "c"]]), doc(&[&["b"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let v = bow_vector(&docs[0], &vocab);
        let b = vocab.index("b").unwrap();
        assert_eq!(v.get(b), 0.0);
        assert_eq!(v.nnz(), 1);
    }

    #[test]
    fn empty_doc_gives_empty_vector_of_full_dimension() {
        let docs = vec![doc(&[&["a"]]), doc(&[&["b"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let v = bow_vector(&doc(&[]), &vocab);
        assert_eq!(v.nnz(), 0);
        assert_eq!(v.dim(), 2);
    }

    #[test]
    fn duplicating_a_token_changes_nothing() {
        let docs = vec![doc(&[&["a", "b"]]), doc(&[&["c"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let once = bow_vector(&doc(&[&["a", "b"]]), &vocab);
        let thrice = bow_vector(&doc(&[&["a", "a", "a", "b"]]), &vocab);
        assert_eq!(once, thrice);
    }

    #[test]
    fn oov_tokens_are_ignored() {
        let docs = vec![doc(&[&["a"]]), doc(&[&["b"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let v = bow_vector(&doc(&[&["a", "martian"]]), &vocab);
        assert_eq!(v.nnz(), 1);
    }

    #[test]
    fn adding_a_document_never_increases_idf() {
        let mut docs = vec![doc(&[&["t", "a"]]), doc(&[&["b"]])];
        let before = {
            let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
            vocab.idf(vocab.index("t").unwrap())
        };
        docs.push(doc(&[&["t"]]));
        let after = {
            let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
            vocab.idf(vocab.index("t").unwrap())
        };
        assert!(after <= before + 1e-12);
    }

    #[test]
    fn sparse_get_on_absent_index() {
        let v = SparseVector::new(vec![(1, 0.5), (4, 2.0)], 6);
        assert_eq!(v.get(0), 0.0);
        assert_eq!(v.get(1), 0.5);
        assert_eq!(v.get(4), 2.0);
        assert_eq!(v.get(5), 0.0);
    }

    #[test]
    fn vocabulary_tsv_dump() {
        let docs = vec![doc(&[&["b", "a"]]), doc(&[&["a"]])];
        let vocab = build_vocabulary(&docs, 1, 1.0).unwrap();
        let mut buf = Vec::new();
        vocab.write_tsv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a\t0\t2\nb\t1\t1\n");
    }
}
