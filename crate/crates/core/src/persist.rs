//! Single-file binary persistence for fitted artifacts and full model
//! bundles.
//!
//! Layout: magic `HWW2V`, u32 LE format version, u8 artifact tag,
//! u32 LE section count, then sections of
//! `u16 LE name length | name | u64 LE payload length | payload`.
//! All integers little-endian; floats stored as raw IEEE bits, so a
//! round trip reproduces every field bit-identically.

use std::collections::HashMap;
use std::path::Path;

use crate::bow::Vocabulary;
use crate::classifier::{
    KernelKind, KernelSpec, MaxEntModel, NaiveBayesModel, StopReason, SvmModel, TrainedModel,
};
use crate::corpus::Polarity;
use crate::embedding::{DictionaryMatrix, DocFrequency};
use crate::error::{Error, Result};
use crate::hybrid::{
    assemble, BlockBoundaries, Components, FeatureVector, NonNegShift, RepresentationChoice,
    Scaling,
};
use crate::sentiment::{SentimentFeatures, SentimentMatrix};
use crate::textprep::{PrepConfig, PreparedDocument};

pub const MAGIC: &[u8; 5] = b"HWW2V";
pub const FORMAT_VERSION: u32 = 1;

const TAG_VOCABULARY: u8 = 1;
const TAG_DICTIONARY: u8 = 2;
const TAG_SENTIMENT: u8 = 3;
const TAG_CLASSIFIER: u8 = 4;
const TAG_BUNDLE: u8 = 5;

/// Everything needed to score raw text exactly as during training.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelBundle {
    pub prep: PrepConfig,
    pub representation: RepresentationChoice,
    pub scaling: Scaling,
    pub components: Components,
    pub shift: Option<NonNegShift>,
    pub model: TrainedModel,
}

impl ModelBundle {
    pub fn vectorize(&self, doc: &PreparedDocument) -> Result<FeatureVector> {
        let mut vector = assemble(doc, self.representation, &self.components, self.scaling)?;
        if let Some(shift) = &self.shift {
            shift.apply(&mut vector);
        }
        Ok(vector)
    }

    pub fn predict(&self, doc: &PreparedDocument) -> Result<(Polarity, f64)> {
        let vector = self.vectorize(doc)?;
        Ok((self.model.predict(&vector), self.model.decision(&vector)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Vocabulary(Vocabulary),
    Dictionary(DictionaryMatrix),
    Sentiment(SentimentMatrix),
    Classifier(TrainedModel),
    Bundle(ModelBundle),
}

impl Artifact {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Artifact::Vocabulary(_) => "vocabulary",
            Artifact::Dictionary(_) => "dictionary matrix",
            Artifact::Sentiment(_) => "sentiment matrix",
            Artifact::Classifier(_) => "classifier",
            Artifact::Bundle(_) => "model bundle",
        }
    }

    pub fn expect_bundle(self, path: &Path) -> Result<ModelBundle> {
        match self {
            Artifact::Bundle(bundle) => Ok(bundle),
            other => Err(Error::WrongArtifact {
                path: path.to_path_buf(),
                found: other.kind_name(),
                expected: "model bundle",
            }),
        }
    }
}

#[derive(Default)]
struct ByteWriter {
    buf: Vec<u8>,
}

impl ByteWriter {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn bool(&mut self, v: bool) {
        self.u8(v as u8);
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn f32(&mut self, v: f32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn f64(&mut self, v: f64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn str(&mut self, s: &str) {
        self.u32(s.len() as u32);
        self.buf.extend_from_slice(s.as_bytes());
    }

    fn f64_slice(&mut self, values: &[f64]) {
        self.u64(values.len() as u64);
        for &v in values {
            self.f64(v);
        }
    }

    fn f32_slice(&mut self, values: &[f32]) {
        self.u64(values.len() as u64);
        for &v in values {
            self.f32(v);
        }
    }

    fn u32_slice(&mut self, values: &[u32]) {
        self.u64(values.len() as u64);
        for &v in values {
            self.u32(v);
        }
    }

    fn str_slice(&mut self, values: &[String]) {
        self.u64(values.len() as u64);
        for v in values {
            self.str(v);
        }
    }
}

struct ByteReader<'a> {
    data: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> ByteReader<'a> {
    fn new(data: &'a [u8], path: &'a Path) -> Self {
        ByteReader { data, pos: 0, path }
    }

    fn corrupt(&self, what: &str) -> Error {
        Error::Validation(format!(
            "{}: corrupt model file ({what} at byte {})",
            self.path.display(),
            self.pos
        ))
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.data.len())
            .ok_or_else(|| self.corrupt("truncated"))?;
        let slice = &self.data[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn bool(&mut self) -> Result<bool> {
        match self.u8()? {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(self.corrupt("bad boolean")),
        }
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| self.corrupt("length overflow"))
    }

    fn f32(&mut self) -> Result<f32> {
        Ok(f32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn str(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| self.corrupt("invalid utf-8"))
    }

    fn f64_vec(&mut self) -> Result<Vec<f64>> {
        let len = self.usize()?;
        (0..len).map(|_| self.f64()).collect()
    }

    fn f32_vec(&mut self) -> Result<Vec<f32>> {
        let len = self.usize()?;
        (0..len).map(|_| self.f32()).collect()
    }

    fn u32_vec(&mut self) -> Result<Vec<u32>> {
        let len = self.usize()?;
        (0..len).map(|_| self.u32()).collect()
    }

    fn str_vec(&mut self) -> Result<Vec<String>> {
        let len = self.usize()?;
        (0..len).map(|_| self.str()).collect()
    }
}

fn emit(tag: u8, sections: &[(&str, Vec<u8>)]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(tag);
    out.extend_from_slice(&(sections.len() as u32).to_le_bytes());
    for (name, payload) in sections {
        out.extend_from_slice(&(name.len() as u16).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        out.extend_from_slice(payload);
    }
    out
}

struct Sections<'a> {
    map: HashMap<String, &'a [u8]>,
    path: &'a Path,
}

impl<'a> Sections<'a> {
    fn reader(&self, name: &str) -> Result<ByteReader<'a>> {
        self.map
            .get(name)
            .map(|data| ByteReader::new(data, self.path))
            .ok_or_else(|| {
                Error::Validation(format!(
                    "{}: model file is missing section '{name}'",
                    self.path.display()
                ))
            })
    }

    fn optional(&self, name: &str) -> Option<ByteReader<'a>> {
        self.map
            .get(name)
            .map(|data| ByteReader::new(data, self.path))
    }
}

fn parse_container<'a>(path: &'a Path, data: &'a [u8]) -> Result<(u8, Sections<'a>)> {
    if data.len() < MAGIC.len() || &data[..MAGIC.len()] != MAGIC {
        return Err(Error::BadMagic {
            path: path.to_path_buf(),
        });
    }
    let mut reader = ByteReader::new(&data[MAGIC.len()..], path);
    let version = reader.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            path: path.to_path_buf(),
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let tag = reader.u8()?;
    let count = reader.u32()?;
    let mut map = HashMap::new();
    for _ in 0..count {
        let name_len = u16::from_le_bytes(reader.take(2)?.try_into().unwrap()) as usize;
        let name = String::from_utf8(reader.take(name_len)?.to_vec())
            .map_err(|_| reader.corrupt("invalid section name"))?;
        let payload_len = reader.usize()?;
        let payload = reader.take(payload_len)?;
        map.insert(name, payload);
    }
    Ok((tag, Sections { map, path }))
}

fn vocabulary_sections(v: &Vocabulary) -> Vec<(&'static str, Vec<u8>)> {
    let mut tokens = ByteWriter::default();
    tokens.str_slice(v.tokens());
    let mut doc_freq = ByteWriter::default();
    doc_freq.u32_slice(v.doc_freqs());
    let mut meta = ByteWriter::default();
    meta.u64(v.total_docs() as u64);
    vec![
        ("tokens", tokens.buf),
        ("doc_freq", doc_freq.buf),
        ("meta", meta.buf),
    ]
}

fn decode_vocabulary(sections: &Sections) -> Result<Vocabulary> {
    let tokens = sections.reader("tokens")?.str_vec()?;
    let doc_freq = sections.reader("doc_freq")?.u32_vec()?;
    let total_docs = sections.reader("meta")?.usize()?;
    Vocabulary::from_parts(tokens, doc_freq, total_docs)
}

fn dictionary_sections(m: &DictionaryMatrix) -> Vec<(&'static str, Vec<u8>)> {
    let mut meta = ByteWriter::default();
    meta.u64(m.dim() as u64);
    let mut tokens = ByteWriter::default();
    tokens.str_slice(m.tokens());
    let mut vectors = ByteWriter::default();
    vectors.f32_slice(m.raw());
    vec![
        ("meta", meta.buf),
        ("tokens", tokens.buf),
        ("vectors", vectors.buf),
    ]
}

fn decode_dictionary(sections: &Sections) -> Result<DictionaryMatrix> {
    let dim = sections.reader("meta")?.usize()?;
    let tokens = sections.reader("tokens")?.str_vec()?;
    let vectors = sections.reader("vectors")?.f32_vec()?;
    DictionaryMatrix::from_parts(dim, tokens, vectors)
}

fn sentiment_payload(m: &SentimentMatrix) -> Vec<u8> {
    let rows = m.sorted_rows();
    let mut w = ByteWriter::default();
    w.u64(rows.len() as u64);
    for (form, features) in rows {
        w.str(form);
        for value in features.to_array() {
            w.f64(value);
        }
    }
    w.buf
}

fn decode_sentiment(reader: &mut ByteReader) -> Result<SentimentMatrix> {
    let count = reader.usize()?;
    let mut rows = HashMap::with_capacity(count);
    for _ in 0..count {
        let form = reader.str()?;
        let features = SentimentFeatures::from_array([
            reader.f64()?,
            reader.f64()?,
            reader.f64()?,
            reader.f64()?,
        ]);
        rows.insert(form, features);
    }
    SentimentMatrix::from_rows(rows)
}

fn doc_freq_payload(stats: &DocFrequency) -> Vec<u8> {
    let mut entries: Vec<(&str, u32)> = stats.entries().collect();
    entries.sort_unstable();
    let mut w = ByteWriter::default();
    w.u64(stats.total_docs() as u64);
    w.u64(entries.len() as u64);
    for (form, df) in entries {
        w.str(form);
        w.u32(df);
    }
    w.buf
}

fn decode_doc_freq(reader: &mut ByteReader) -> Result<DocFrequency> {
    let total_docs = reader.usize()?;
    let count = reader.usize()?;
    let mut map = HashMap::with_capacity(count);
    for _ in 0..count {
        let form = reader.str()?;
        let df = reader.u32()?;
        map.insert(form, df);
    }
    Ok(DocFrequency::from_parts(map, total_docs))
}

fn polarity_code(label: Polarity) -> u8 {
    match label {
        Polarity::Positive => 0,
        Polarity::Negative => 1,
    }
}

fn decode_polarity(reader: &mut ByteReader, code: u8) -> Result<Polarity> {
    match code {
        0 => Ok(Polarity::Positive),
        1 => Ok(Polarity::Negative),
        _ => Err(reader.corrupt("bad polarity code")),
    }
}

fn write_feature_vector(w: &mut ByteWriter, v: &FeatureVector) {
    w.u64(v.dim() as u64);
    w.u64(v.dense_offset() as u64);
    w.u64(v.sparse_entries().len() as u64);
    for &(index, value) in v.sparse_entries() {
        w.u32(index);
        w.f64(value);
    }
    w.f64_slice(v.dense_part());
    for offset in v.boundaries().offsets {
        w.u64(offset as u64);
    }
}

fn read_feature_vector(reader: &mut ByteReader) -> Result<FeatureVector> {
    let dim = reader.usize()?;
    let dense_offset = reader.usize()?;
    let sparse_len = reader.usize()?;
    let mut sparse = Vec::with_capacity(sparse_len);
    for _ in 0..sparse_len {
        let index = reader.u32()?;
        let value = reader.f64()?;
        sparse.push((index, value));
    }
    let dense = reader.f64_vec()?;
    let mut offsets = [0usize; 4];
    for slot in &mut offsets {
        *slot = reader.usize()?;
    }
    if dense_offset + dense.len() != dim || offsets[3] != dim {
        return Err(reader.corrupt("inconsistent vector layout"));
    }
    Ok(FeatureVector::new(
        dim,
        sparse,
        dense_offset,
        dense,
        BlockBoundaries { offsets },
    ))
}

const CLF_NB: u8 = 1;
const CLF_MAXENT: u8 = 2;
const CLF_SVM: u8 = 3;

fn stop_reason_code(stop: StopReason) -> u8 {
    match stop {
        StopReason::GradientBelowTol => 0,
        StopReason::MaxIterations => 1,
        StopReason::NoLineSearchProgress => 2,
    }
}

fn classifier_payload(model: &TrainedModel) -> Vec<u8> {
    let mut w = ByteWriter::default();
    match model {
        TrainedModel::NaiveBayes(m) => {
            w.u8(CLF_NB);
            w.f64(m.log_prior()[0]);
            w.f64(m.log_prior()[1]);
            w.f64_slice(m.log_cond(0));
            w.f64_slice(m.log_cond(1));
        }
        TrainedModel::MaxEnt(m) => {
            w.u8(CLF_MAXENT);
            w.f64_slice(m.weights(0));
            w.f64_slice(m.weights(1));
            w.f64(m.intercepts()[0]);
            w.f64(m.intercepts()[1]);
            w.f64(m.l2());
            w.u8(stop_reason_code(m.stop_reason()));
            w.u64(m.iterations() as u64);
        }
        TrainedModel::Svm(m) => {
            w.u8(CLF_SVM);
            match m.kernel().kind {
                KernelKind::Linear => {
                    w.u8(0);
                    w.f64(0.0);
                }
                KernelKind::Rbf { gamma } => {
                    w.u8(1);
                    w.f64(gamma);
                }
            }
            w.u64(m.kernel().cache_mb as u64);
            w.f64(m.c());
            w.f64(m.bias());
            w.bool(m.converged());
            w.u64(m.iterations() as u64);
            w.f64_slice(m.alphas());
            w.u64(m.sv_labels().len() as u64);
            for &label in m.sv_labels() {
                w.u8(polarity_code(label));
            }
            w.u64(m.support_vectors().len() as u64);
            for sv in m.support_vectors() {
                write_feature_vector(&mut w, sv);
            }
        }
    }
    w.buf
}

fn decode_classifier(reader: &mut ByteReader) -> Result<TrainedModel> {
    match reader.u8()? {
        CLF_NB => {
            let log_prior = [reader.f64()?, reader.f64()?];
            let cond0 = reader.f64_vec()?;
            let cond1 = reader.f64_vec()?;
            NaiveBayesModel::from_parts(log_prior, [cond0, cond1]).map(TrainedModel::NaiveBayes)
        }
        CLF_MAXENT => {
            let w0 = reader.f64_vec()?;
            let w1 = reader.f64_vec()?;
            let intercepts = [reader.f64()?, reader.f64()?];
            let l2 = reader.f64()?;
            let stop = match reader.u8()? {
                0 => StopReason::GradientBelowTol,
                1 => StopReason::MaxIterations,
                2 => StopReason::NoLineSearchProgress,
                _ => return Err(reader.corrupt("bad stop reason")),
            };
            let iterations = reader.usize()?;
            MaxEntModel::from_parts([w0, w1], intercepts, l2, stop, iterations)
                .map(TrainedModel::MaxEnt)
        }
        CLF_SVM => {
            let kind_code = reader.u8()?;
            let gamma = reader.f64()?;
            let cache_mb = reader.usize()?;
            let kernel = match kind_code {
                0 => KernelSpec::linear(cache_mb),
                1 => KernelSpec::rbf(gamma, cache_mb)?,
                _ => return Err(reader.corrupt("bad kernel kind")),
            };
            let c = reader.f64()?;
            let bias = reader.f64()?;
            let converged = reader.bool()?;
            let iterations = reader.usize()?;
            let alphas = reader.f64_vec()?;
            let label_count = reader.usize()?;
            let mut sv_labels = Vec::with_capacity(label_count);
            for _ in 0..label_count {
                let code = reader.u8()?;
                sv_labels.push(decode_polarity(reader, code)?);
            }
            let sv_count = reader.usize()?;
            let mut support_vectors = Vec::with_capacity(sv_count);
            for _ in 0..sv_count {
                support_vectors.push(read_feature_vector(reader)?);
            }
            SvmModel::from_parts(
                kernel,
                c,
                support_vectors,
                alphas,
                sv_labels,
                bias,
                converged,
                iterations,
            )
            .map(TrainedModel::Svm)
        }
        _ => Err(reader.corrupt("bad classifier tag")),
    }
}

fn representation_code(r: RepresentationChoice) -> u8 {
    match r {
        RepresentationChoice::BowOnly => 0,
        RepresentationChoice::WeightedW2vOnly => 1,
        RepresentationChoice::SentimentOnly => 2,
        RepresentationChoice::Hybrid => 3,
    }
}

fn prep_payload(prep: &PrepConfig) -> Vec<u8> {
    let mut w = ByteWriter::default();
    let cues: Vec<String> = prep.negation_cues.iter().cloned().collect();
    w.str_slice(&cues);
    w.bool(prep.negation_toggle);
    w.bool(prep.keep_punctuation);
    let stopwords: Vec<String> = prep.stopwords.iter().cloned().collect();
    w.str_slice(&stopwords);
    w.buf
}

fn decode_prep(reader: &mut ByteReader) -> Result<PrepConfig> {
    let cues = reader.str_vec()?;
    let negation_toggle = reader.bool()?;
    let keep_punctuation = reader.bool()?;
    let stopwords = reader.str_vec()?;
    Ok(PrepConfig {
        negation_cues: cues.into_iter().collect(),
        negation_toggle,
        keep_punctuation,
        stopwords: stopwords.into_iter().collect(),
    })
}

fn bundle_sections(bundle: &ModelBundle) -> Vec<(&'static str, Vec<u8>)> {
    let mut sections = vec![("prep", prep_payload(&bundle.prep))];
    let mut meta = ByteWriter::default();
    meta.u8(representation_code(bundle.representation));
    meta.u8(match bundle.scaling {
        Scaling::None => 0,
        Scaling::UnitL2 => 1,
    });
    meta.bool(bundle.components.normalize_pool);
    sections.push(("meta", meta.buf));
    if let Some(vocab) = &bundle.components.vocab {
        let mut w = ByteWriter::default();
        for (name, payload) in vocabulary_sections(vocab) {
            let _ = name;
            w.buf.extend_from_slice(&(payload.len() as u64).to_le_bytes());
            w.buf.extend_from_slice(&payload);
        }
        sections.push(("vocab", w.buf));
    }
    if let Some(matrix) = &bundle.components.matrix {
        let mut w = ByteWriter::default();
        for (_, payload) in dictionary_sections(matrix) {
            w.buf.extend_from_slice(&(payload.len() as u64).to_le_bytes());
            w.buf.extend_from_slice(&payload);
        }
        sections.push(("matrix", w.buf));
    }
    if let Some(stats) = &bundle.components.doc_freq {
        sections.push(("doc_freq", doc_freq_payload(stats)));
    }
    if let Some(sentiment) = &bundle.components.sentiment {
        sections.push(("sentiment", sentiment_payload(sentiment)));
    }
    if let Some(shift) = &bundle.shift {
        let mut w = ByteWriter::default();
        w.u64(shift.dense_offset() as u64);
        w.f64_slice(shift.shift_values());
        sections.push(("shift", w.buf));
    }
    sections.push(("classifier", classifier_payload(&bundle.model)));
    sections
}

fn read_length_prefixed<'a>(reader: &mut ByteReader<'a>) -> Result<ByteReader<'a>> {
    let len = reader.usize()?;
    let data = reader.take(len)?;
    Ok(ByteReader::new(data, reader.path))
}

fn decode_bundle(sections: &Sections) -> Result<ModelBundle> {
    let prep = decode_prep(&mut sections.reader("prep")?)?;
    let mut meta = sections.reader("meta")?;
    let representation = match meta.u8()? {
        0 => RepresentationChoice::BowOnly,
        1 => RepresentationChoice::WeightedW2vOnly,
        2 => RepresentationChoice::SentimentOnly,
        3 => RepresentationChoice::Hybrid,
        _ => return Err(meta.corrupt("bad representation code")),
    };
    let scaling = match meta.u8()? {
        0 => Scaling::None,
        1 => Scaling::UnitL2,
        _ => return Err(meta.corrupt("bad scaling code")),
    };
    let normalize_pool = meta.bool()?;

    let mut components = Components {
        normalize_pool,
        ..Components::default()
    };
    if let Some(mut reader) = sections.optional("vocab") {
        let tokens = read_length_prefixed(&mut reader)?.str_vec()?;
        let doc_freq = read_length_prefixed(&mut reader)?.u32_vec()?;
        let total_docs = read_length_prefixed(&mut reader)?.usize()?;
        components.vocab = Some(Vocabulary::from_parts(tokens, doc_freq, total_docs)?);
    }
    if let Some(mut reader) = sections.optional("matrix") {
        let dim = read_length_prefixed(&mut reader)?.usize()?;
        let tokens = read_length_prefixed(&mut reader)?.str_vec()?;
        let vectors = read_length_prefixed(&mut reader)?.f32_vec()?;
        components.matrix = Some(DictionaryMatrix::from_parts(dim, tokens, vectors)?);
    }
    if let Some(mut reader) = sections.optional("doc_freq") {
        components.doc_freq = Some(decode_doc_freq(&mut reader)?);
    }
    if let Some(mut reader) = sections.optional("sentiment") {
        components.sentiment = Some(decode_sentiment(&mut reader)?);
    }
    let shift = match sections.optional("shift") {
        Some(mut reader) => {
            let dense_offset = reader.usize()?;
            let values = reader.f64_vec()?;
            Some(NonNegShift::from_parts(dense_offset, values))
        }
        None => None,
    };
    let model = decode_classifier(&mut sections.reader("classifier")?)?;
    Ok(ModelBundle {
        prep,
        representation,
        scaling,
        components,
        shift,
        model,
    })
}

pub fn to_bytes(artifact: &Artifact) -> Vec<u8> {
    match artifact {
        Artifact::Vocabulary(v) => emit(TAG_VOCABULARY, &vocabulary_sections(v)),
        Artifact::Dictionary(m) => emit(TAG_DICTIONARY, &dictionary_sections(m)),
        Artifact::Sentiment(m) => emit(TAG_SENTIMENT, &[("rows", sentiment_payload(m))]),
        Artifact::Classifier(c) => emit(TAG_CLASSIFIER, &[("model", classifier_payload(c))]),
        Artifact::Bundle(b) => emit(TAG_BUNDLE, &bundle_sections(b)),
    }
}

pub fn from_bytes(path: &Path, data: &[u8]) -> Result<Artifact> {
    let (tag, sections) = parse_container(path, data)?;
    match tag {
        TAG_VOCABULARY => decode_vocabulary(&sections).map(Artifact::Vocabulary),
        TAG_DICTIONARY => decode_dictionary(&sections).map(Artifact::Dictionary),
        TAG_SENTIMENT => decode_sentiment(&mut sections.reader("rows")?).map(Artifact::Sentiment),
        TAG_CLASSIFIER => {
            decode_classifier(&mut sections.reader("model")?).map(Artifact::Classifier)
        }
        TAG_BUNDLE => decode_bundle(&sections).map(Artifact::Bundle),
        other => Err(Error::Validation(format!(
            "{}: unknown artifact tag {other}",
            path.display()
        ))),
    }
}

pub fn save_model(artifact: &Artifact, path: &Path) -> Result<()> {
    std::fs::write(path, to_bytes(artifact)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<Artifact> {
    let data = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    from_bytes(path, &data)
}
