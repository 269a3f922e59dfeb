//! Assembly of document feature vectors: BoW block, weighted-Word2Vec
//! block and sentiment block concatenated in that fixed order, with
//! optional whole-vector unit scaling. Vectors keep the BoW block
//! sparse and the remainder dense.

use std::io::Write;

use rayon::prelude::*;

use crate::bow::{bow_vector, Vocabulary};
use crate::embedding::{weighted_doc_vector, DictionaryMatrix, DocFrequency};
use crate::error::{Error, Result};
use crate::sentiment::{document_sentiment, SentimentMatrix};
use crate::textprep::PreparedDocument;

/// Which Table-1 column to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepresentationChoice {
    BowOnly,
    WeightedW2vOnly,
    SentimentOnly,
    Hybrid,
}

impl RepresentationChoice {
    pub const ALL: [RepresentationChoice; 4] = [
        RepresentationChoice::SentimentOnly,
        RepresentationChoice::WeightedW2vOnly,
        RepresentationChoice::BowOnly,
        RepresentationChoice::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepresentationChoice::BowOnly => "bow",
            RepresentationChoice::WeightedW2vOnly => "w2v",
            RepresentationChoice::SentimentOnly => "sent",
            RepresentationChoice::Hybrid => "hybrid",
        }
    }

    pub fn uses_embeddings(self) -> bool {
        matches!(
            self,
            RepresentationChoice::WeightedW2vOnly | RepresentationChoice::Hybrid
        )
    }
}

impl std::str::FromStr for RepresentationChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bow" => Ok(RepresentationChoice::BowOnly),
            "w2v" => Ok(RepresentationChoice::WeightedW2vOnly),
            "sent" => Ok(RepresentationChoice::SentimentOnly),
            "hybrid" => Ok(RepresentationChoice::Hybrid),
            other => Err(Error::Validation(format!(
                "unknown representation '{other}' (expected bow, w2v, sent or hybrid)"
            ))),
        }
    }
}

/// Whole-vector scaling applied after concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scaling {
    None,
    UnitL2,
}

impl Scaling {
    pub fn name(self) -> &'static str {
        match self {
            Scaling::None => "none",
            Scaling::UnitL2 => "unit",
        }
    }
}

impl std::str::FromStr for Scaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Scaling::None),
            "unit" => Ok(Scaling::UnitL2),
            other => Err(Error::Validation(format!(
                "unknown scaling '{other}' (expected none or unit)"
            ))),
        }
    }
}

/// Start offsets of the three blocks plus the total dimension:
/// BoW occupies [offsets[0], offsets[1]), embeddings
/// [offsets[1], offsets[2]), sentiment [offsets[2], offsets[3]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockBoundaries {
    pub offsets: [usize; 4],
}

impl BlockBoundaries {
    pub fn new(bow_dim: usize, embedding_dim: usize, sentiment_dim: usize) -> Self {
        BlockBoundaries {
            offsets: [
                0,
                bow_dim,
                bow_dim + embedding_dim,
                bow_dim + embedding_dim + sentiment_dim,
            ],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[3]
    }

    pub fn block_range(&self, block: usize) -> std::ops::Range<usize> {
        self.offsets[block]..self.offsets[block + 1]
    }
}

/// A document vector: sparse entries below `dense_offset`, a dense tail
/// from there to `dim`. Sparse indices are strictly increasing and
/// never hold explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    dim: usize,
    sparse: Vec<(u32, f64)>,
    dense_offset: usize,
    dense: Vec<f64>,
    boundaries: BlockBoundaries,
}

impl FeatureVector {
    pub fn new(
        dim: usize,
        sparse: Vec<(u32, f64)>,
        dense_offset: usize,
        dense: Vec<f64>,
        boundaries: BlockBoundaries,
    ) -> Self {
        debug_assert_eq!(dense_offset + dense.len(), dim);
        debug_assert!(sparse.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(sparse.iter().all(|&(i, _)| (i as usize) < dense_offset));
        debug_assert_eq!(boundaries.total_dim(), dim);
        FeatureVector {
            dim,
            sparse,
            dense_offset,
            dense,
            boundaries,
        }
    }

    /// Fully dense vector with no sparse head.
    pub fn from_dense(dense: Vec<f64>) -> Self {
        let dim = dense.len();
        FeatureVector {
            dim,
            sparse: Vec::new(),
            dense_offset: 0,
            dense,
            boundaries: BlockBoundaries::new(0, 0, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boundaries(&self) -> BlockBoundaries {
        self.boundaries
    }

    pub fn sparse_entries(&self) -> &[(u32, f64)] {
        &self.sparse
    }

    pub fn dense_offset(&self) -> usize {
        self.dense_offset
    }

    pub fn dense_part(&self) -> &[f64] {
        &self.dense
    }

    pub fn dense_part_mut(&mut self) -> &mut [f64] {
        &mut self.dense
    }

    pub fn get(&self, index: usize) -> f64 {
        if index >= self.dense_offset {
            self.dense[index - self.dense_offset]
        } else {
            self.sparse
                .binary_search_by_key(&(index as u32), |&(i, _)| i)
                .map(|pos| self.sparse[pos].1)
                .unwrap_or(0.0)
        }
    }

    /// Visit every stored entry (sparse entries, then the whole dense
    /// tail including zeros) as (index, value).
    pub fn for_each_entry(&self, mut f: impl FnMut(usize, f64)) {
        for &(i, v) in &self.sparse {
            f(i as usize, v);
        }
        for (d, &v) in self.dense.iter().enumerate() {
            f(self.dense_offset + d, v);
        }
    }

    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self.sparse.iter().map(|&(_, v)| v * v).sum();
        let d: f64 = self.dense.iter().map(|&v| v * v).sum();
        s + d
    }

    pub fn scale(&mut self, factor: f64) {
        for (_, v) in &mut self.sparse {
            *v *= factor;
        }
        for v in &mut self.dense {
            *v *= factor;
        }
    }

    /// Dot product against a plain weight slice of the same dimension.
    pub fn dot_slice(&self, weights: &[f64]) -> f64 {
        debug_assert_eq!(weights.len(), self.dim);
        let mut sum = 0.0;
        for &(i, v) in &self.sparse {
            sum += v * weights[i as usize];
        }
        for (d, &v) in self.dense.iter().enumerate() {
            sum += v * weights[self.dense_offset + d];
        }
        sum
    }

    /// target += scale * self, into a plain slice.
    pub fn add_to(&self, target: &mut [f64], scale: f64) {
        debug_assert_eq!(target.len(), self.dim);
        for &(i, v) in &self.sparse {
            target[i as usize] += scale * v;
        }
        for (d, &v) in self.dense.iter().enumerate() {
            target[self.dense_offset + d] += scale * v;
        }
    }

    /// Materialize one block as a dense vector.
    pub fn extract_block(&self, block: usize) -> Vec<f64> {
        self.boundaries
            .block_range(block)
            .map(|i| self.get(i))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }
}

/// Dot product of two vectors with identical layout.
pub fn dot(a: &FeatureVector, b: &FeatureVector) -> f64 {
    debug_assert_eq!(a.dim, b.dim);
    debug_assert_eq!(a.dense_offset, b.dense_offset);
    let mut sum = 0.0;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.sparse.len() && j < b.sparse.len() {
        match a.sparse[i].0.cmp(&b.sparse[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += a.sparse[i].1 * b.sparse[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    sum + a
        .dense
        .iter()
        .zip(&b.dense)
        .map(|(x, y)| x * y)
        .sum::<f64>()
}

/// Squared Euclidean distance, clamped at zero against rounding.
pub fn squared_distance(a: &FeatureVector, b: &FeatureVector) -> f64 {
    (a.norm_sq() + b.norm_sq() - 2.0 * dot(a, b)).max(0.0)
}

/// Fitted artifacts needed to vectorize a document. Only the artifacts
/// a representation actually uses must be present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Components {
    pub vocab: Option<Vocabulary>,
    pub matrix: Option<DictionaryMatrix>,
    pub doc_freq: Option<DocFrequency>,
    pub sentiment: Option<SentimentMatrix>,
    pub normalize_pool: bool,
}

impl Components {
    fn vocab(&self) -> Result<&Vocabulary> {
        self.vocab.as_ref().ok_or(Error::MissingComponent("vocabulary"))
    }

    fn matrix(&self) -> Result<&DictionaryMatrix> {
        self.matrix
            .as_ref()
            .ok_or(Error::MissingComponent("dictionary matrix"))
    }

    fn doc_freq(&self) -> Result<&DocFrequency> {
        self.doc_freq
            .as_ref()
            .ok_or(Error::MissingComponent("document frequencies"))
    }

    fn sentiment(&self) -> Result<&SentimentMatrix> {
        self.sentiment
            .as_ref()
            .ok_or(Error::MissingComponent("sentiment matrix"))
    }
}

/// Build the chosen representation for one document.
pub fn assemble(
    doc: &PreparedDocument,
    choice: RepresentationChoice,
    components: &Components,
    scaling: Scaling,
) -> Result<FeatureVector> {
    let mut vector = match choice {
        RepresentationChoice::BowOnly => {
            let vocab = components.vocab()?;
            let bow = bow_vector(doc, vocab);
            let dim = bow.dim();
            FeatureVector::new(
                dim,
                bow.entries().to_vec(),
                dim,
                Vec::new(),
                BlockBoundaries::new(dim, 0, 0),
            )
        }
        RepresentationChoice::WeightedW2vOnly => {
            let pooled = weighted_doc_vector(
                doc,
                components.matrix()?,
                components.doc_freq()?,
                components.normalize_pool,
            );
            let dim = pooled.len();
            FeatureVector::new(
                dim,
                Vec::new(),
                0,
                pooled,
                BlockBoundaries::new(0, dim, 0),
            )
        }
        RepresentationChoice::SentimentOnly => {
            let features = document_sentiment(doc, components.sentiment()?);
            FeatureVector::new(
                4,
                Vec::new(),
                0,
                features.to_array().to_vec(),
                BlockBoundaries::new(0, 0, 4),
            )
        }
        RepresentationChoice::Hybrid => {
            let vocab = components.vocab()?;
            let bow = bow_vector(doc, vocab);
            let pooled = weighted_doc_vector(
                doc,
                components.matrix()?,
                components.doc_freq()?,
                components.normalize_pool,
            );
            let features = document_sentiment(doc, components.sentiment()?);
            let bow_dim = bow.dim();
            let emb_dim = pooled.len();
            let mut dense = pooled;
            dense.extend_from_slice(&features.to_array());
            FeatureVector::new(
                bow_dim + emb_dim + 4,
                bow.entries().to_vec(),
                bow_dim,
                dense,
                BlockBoundaries::new(bow_dim, emb_dim, 4),
            )
        }
    };
    if scaling == Scaling::UnitL2 {
        let norm = vector.norm_sq().sqrt();
        if norm > 0.0 {
            vector.scale(1.0 / norm);
        }
    }
    Ok(vector)
}

/// Vectorize a document batch in parallel, preserving order.
pub fn assemble_all(
    docs: &[PreparedDocument],
    choice: RepresentationChoice,
    components: &Components,
    scaling: Scaling,
) -> Result<Vec<FeatureVector>> {
    docs.par_iter()
        .map(|doc| assemble(doc, choice, components, scaling))
        .collect()
}

/// Per-dimension shift making dense features nonnegative: fitted as the
/// negated minimum (when negative) of each dense dimension over the
/// training vectors; application clamps at zero so unseen test values
/// below the training minimum stay valid.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegShift {
    dense_offset: usize,
    shift: Vec<f64>,
}

impl NonNegShift {
    pub fn fit(vectors: &[FeatureVector]) -> NonNegShift {
        let (dense_offset, dense_len) = vectors
            .first()
            .map(|v| (v.dense_offset, v.dense.len()))
            .unwrap_or((0, 0));
        let mut shift = vec![0.0f64; dense_len];
        for v in vectors {
            for (s, &x) in shift.iter_mut().zip(&v.dense) {
                if -x > *s {
                    *s = -x;
                }
            }
        }
        NonNegShift {
            dense_offset,
            shift,
        }
    }

    pub fn from_parts(dense_offset: usize, shift: Vec<f64>) -> Self {
        NonNegShift {
            dense_offset,
            shift,
        }
    }

    pub fn dense_offset(&self) -> usize {
        self.dense_offset
    }

    pub fn shift_values(&self) -> &[f64] {
        &self.shift
    }

    pub fn is_noop(&self) -> bool {
        self.shift.iter().all(|&s| s == 0.0)
    }

    pub fn apply(&self, vector: &mut FeatureVector) {
        debug_assert_eq!(vector.dense_offset, self.dense_offset);
        for (x, &s) in vector.dense.iter_mut().zip(&self.shift) {
            *x = (*x + s).max(0.0);
        }
    }

    pub fn apply_all(&self, vectors: &mut [FeatureVector]) {
        for v in vectors {
            self.apply(v);
        }
    }
}

/// Sparse text export: header `rows<TAB>cols<TAB>o0..o3`, then one
/// `row<TAB>col<TAB>value` line per stored nonzero.
pub fn write_matrix(vectors: &[FeatureVector], out: &mut impl Write) -> std::io::Result<()> {
    let boundaries = vectors
        .first()
        .map(|v| v.boundaries)
        .unwrap_or(BlockBoundaries::new(0, 0, 0));
    let cols = boundaries.total_dim();
    let [o0, o1, o2, o3] = boundaries.offsets;
    writeln!(out, "{}\t{cols}\t{o0}\t{o1}\t{o2}\t{o3}", vectors.len())?;
    for (row, vector) in vectors.iter().enumerate() {
        for &(col, value) in &vector.sparse {
            writeln!(out, "{row}\t{col}\t{value}")?;
        }
        for (d, &value) in vector.dense.iter().enumerate() {
            if value != 0.0 {
                writeln!(out, "{row}\t{}\t{value}", vector.dense_offset + d)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bow::build_vocabulary;
    use crate::corpus::Polarity;
    use crate::sentiwordnet::parse_sentiwordnet_str;
    use crate::textprep::Token;
    use std::collections::BTreeSet;
    use std::path::Path;

    fn doc(sentences: &[&[&str]]) -> PreparedDocument {
        PreparedDocument {
            sentences: sentences
                .iter()
                .map(|s| s.iter().map(|t| Token::plain(*t)).collect())
                .collect(),
            label: Polarity::Positive,
        }
    }

    fn fitted_components(train: &[PreparedDocument], emb_dim: usize) -> Components {
        let vocab = build_vocabulary(train, 1, 1.0).unwrap();
        let tokens: Vec<String> = vocab.tokens().to_vec();
        let vectors: Vec<f32> = (0..tokens.len() * emb_dim)
            .map(|i| (i as f32 * 0.37).sin())
            .collect();
        let matrix = DictionaryMatrix::from_parts(emb_dim, tokens, vectors).unwrap();
        let doc_freq = DocFrequency::fit(train);
        let lexicon = parse_sentiwordnet_str(
            Path::new("inline"),
            "a\t1\t0.6\t0.2\tgood#1\tg\na\t2\t0\t0.8\tbad#1\tg\n",
        )
        .unwrap()
        .entries;
        let forms: BTreeSet<String> = crate::sentiment::collect_forms(train);
        let sentiment = crate::sentiment::build_sentiment_matrix(&lexicon, &forms);
        Components {
            vocab: Some(vocab),
            matrix: Some(matrix),
            doc_freq: Some(doc_freq),
            sentiment: Some(sentiment),
            normalize_pool: false,
        }
    }

    #[test]
    fn sentiment_only_equals_document_sentiment() {
        let train = vec![doc(&[&["good", "film"]]), doc(&[&["bad", "film"]])];
        let components = fitted_components(&train, 3);
        let v = assemble(
            &train[0],
            RepresentationChoice::SentimentOnly,
            &components,
            Scaling::None,
        )
        .unwrap();
        let expected =
            document_sentiment(&train[0], components.sentiment.as_ref().unwrap()).to_array();
        assert_eq!(v.dim(), 4);
        assert_eq!(v.to_dense(), expected.to_vec());
    }

    #[test]
    fn hybrid_dimension_and_boundaries() {
        let train = vec![
            doc(&[&["good", "film"]]),
            doc(&[&["bad", "plot"]]),
            doc(&[&["good", "plot"]]),
        ];
        let components = fitted_components(&train, 100);
        let b = components.vocab.as_ref().unwrap().len();
        assert_eq!(b, 4);
        let v = assemble(
            &train[0],
            RepresentationChoice::Hybrid,
            &components,
            Scaling::None,
        )
        .unwrap();
        assert_eq!(v.dim(), b + 100 + 4);
        assert_eq!(v.boundaries().offsets, [0, b, b + 100, b + 104]);
    }

    #[test]
    fn spec_sized_hybrid_boundaries() {
        let boundaries = BlockBoundaries::new(3, 100, 4);
        assert_eq!(boundaries.offsets, [0, 3, 103, 107]);
        assert_eq!(boundaries.total_dim(), 107);
    }

    #[test]
    fn unit_scaling_normalizes_three_four_five() {
        let mut v = FeatureVector::from_dense(vec![3.0, 4.0, 0.0]);
        let norm = v.norm_sq().sqrt();
        assert_eq!(norm, 5.0);
        v.scale(1.0 / norm);
        for (got, want) in v.to_dense().into_iter().zip([0.6, 0.8, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((v.norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn assemble_applies_unit_scaling() {
        let train = vec![doc(&[&["good", "film"]]), doc(&[&["bad", "plot"]])];
        let components = fitted_components(&train, 5);
        let v = assemble(
            &train[0],
            RepresentationChoice::Hybrid,
            &components,
            Scaling::UnitL2,
        )
        .unwrap();
        assert!((v.norm_sq().sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_vector_survives_unit_scaling() {
        let train = vec![doc(&[&["good"]]), doc(&[&["bad"]])];
        let components = fitted_components(&train, 2);
        let empty = doc(&[]);
        let v = assemble(
            &empty,
            RepresentationChoice::WeightedW2vOnly,
            &components,
            Scaling::UnitL2,
        )
        .unwrap();
        assert_eq!(v.to_dense(), vec![0.0, 0.0]);
    }

    #[test]
    fn block_round_trip_recovers_each_block() {
        let train = vec![
            doc(&[&["good", "film"]]),
            doc(&[&["bad", "plot"]]),
            doc(&[&["film", "plot"]]),
        ];
        let components = fitted_components(&train, 6);
        let target = &train[1];
        let hybrid = assemble(target, RepresentationChoice::Hybrid, &components, Scaling::None)
            .unwrap();
        let bow_alone =
            assemble(target, RepresentationChoice::BowOnly, &components, Scaling::None).unwrap();
        let w2v_alone = assemble(
            target,
            RepresentationChoice::WeightedW2vOnly,
            &components,
            Scaling::None,
        )
        .unwrap();
        let sent_alone = assemble(
            target,
            RepresentationChoice::SentimentOnly,
            &components,
            Scaling::None,
        )
        .unwrap();
        assert_eq!(hybrid.extract_block(0), bow_alone.to_dense());
        assert_eq!(hybrid.extract_block(1), w2v_alone.to_dense());
        assert_eq!(hybrid.extract_block(2), sent_alone.to_dense());
    }

    #[test]
    fn missing_component_is_a_configuration_error() {
        let train = vec![doc(&[&["good"]]), doc(&[&["bad"]])];
        let mut components = fitted_components(&train, 2);
        components.matrix = None;
        let err = assemble(
            &train[0],
            RepresentationChoice::Hybrid,
            &components,
            Scaling::None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingComponent("dictionary matrix")));
    }

    #[test]
    fn dot_matches_dense_brute_force() {
        let a = FeatureVector::new(
            6,
            vec![(0, 2.0), (3, -1.0)],
            4,
            vec![0.5, 3.0],
            BlockBoundaries::new(4, 2, 0),
        );
        let b = FeatureVector::new(
            6,
            vec![(1, 5.0), (3, 4.0)],
            4,
            vec![2.0, -1.0],
            BlockBoundaries::new(4, 2, 0),
        );
        let brute: f64 = a
            .to_dense()
            .iter()
            .zip(b.to_dense())
            .map(|(x, y)| x * y)
            .sum();
        assert!((dot(&a, &b) - brute).abs() < 1e-12);
        assert!((dot(&a, &a) - a.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn squared_distance_matches_brute_force() {
        let a = FeatureVector::from_dense(vec![1.0, 2.0, 3.0]);
        let b = FeatureVector::from_dense(vec![0.0, -1.0, 5.0]);
        let brute: f64 = a
            .to_dense()
            .iter()
            .zip(b.to_dense())
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        assert!((squared_distance(&a, &b) - brute).abs() < 1e-12);
    }

    #[test]
    fn dot_slice_and_add_to_cover_sparse_and_dense_parts() {
        let v = FeatureVector::new(
            5,
            vec![(1, 2.0)],
            3,
            vec![4.0, -1.0],
            BlockBoundaries::new(3, 2, 0),
        );
        let w = vec![1.0, 10.0, 1.0, 2.0, 3.0];
        assert_eq!(v.dot_slice(&w), 2.0 * 10.0 + 4.0 * 2.0 - 1.0 * 3.0);
        let mut acc = vec![0.0; 5];
        v.add_to(&mut acc, 2.0);
        assert_eq!(acc, vec![0.0, 4.0, 0.0, 8.0, -2.0]);
    }

    #[test]
    fn nonneg_shift_clears_negative_dense_values() {
        let train = vec![
            FeatureVector::new(
                3,
                vec![(0, 1.5)],
                1,
                vec![-2.0, 0.5],
                BlockBoundaries::new(1, 2, 0),
            ),
            FeatureVector::new(
                3,
                vec![],
                1,
                vec![1.0, -0.25],
                BlockBoundaries::new(1, 2, 0),
            ),
        ];
        let shift = NonNegShift::fit(&train);
        assert_eq!(shift.shift_values(), &[2.0, 0.25]);
        let mut shifted = train.clone();
        for v in &mut shifted {
            shift.apply(v);
        }
        assert_eq!(shifted[0].to_dense(), vec![1.5, 0.0, 0.75]);
        assert_eq!(shifted[1].to_dense(), vec![0.0, 3.0, 0.0]);
    }

    #[test]
    fn nonneg_shift_clamps_unseen_test_values() {
        let train = vec![FeatureVector::from_dense(vec![-1.0])];
        let shift = NonNegShift::fit(&train);
        let mut test = FeatureVector::from_dense(vec![-5.0]);
        shift.apply(&mut test);
        assert_eq!(test.to_dense(), vec![0.0]);
    }

    #[test]
    fn nonneg_shift_is_noop_on_nonnegative_data() {
        let train = vec![FeatureVector::from_dense(vec![0.0, 3.0])];
        let shift = NonNegShift::fit(&train);
        assert!(shift.is_noop());
    }

    #[test]
    fn matrix_export_format() {
        let vectors = vec![
            FeatureVector::new(
                4,
                vec![(1, 2.5)],
                2,
                vec![0.0, 1.5],
                BlockBoundaries::new(2, 2, 0),
            ),
            FeatureVector::new(
                4,
                vec![],
                2,
                vec![3.0, 0.0],
                BlockBoundaries::new(2, 2, 0),
            ),
        ];
        let mut buf = Vec::new();
        write_matrix(&vectors, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "2\t4\t0\t2\t4\t4\n0\t1\t2.5\n0\t3\t1.5\n1\t2\t3\n");
    }

    #[test]
    fn representation_and_scaling_parse_round_trip() {
        for choice in RepresentationChoice::ALL {
            let parsed: RepresentationChoice = choice.name().parse().unwrap();
            assert_eq!(parsed, choice);
        }
        for scaling in [Scaling::None, Scaling::UnitL2] {
            let parsed: Scaling = scaling.name().parse().unwrap();
            assert_eq!(parsed, scaling);
        }
        assert!("giant".parse::<RepresentationChoice>().is_err());
    }
}
