//! Hybrid weighted word2vec document representations for sentence-level
//! sentiment polarity, with natively implemented classifiers and a
//! cross-validation harness.
//!
//! The pipeline: raw snippet corpora are decoded and labeled
//! ([`corpus`]), tokenized with negation marking and stopword pruning
//! ([`textprep`]), then turned into document vectors that concatenate a
//! binary-weighted TF-IDF bag of words ([`bow`]), a TF-IDF weighted
//! average of CBOW word vectors ([`embedding`]), and four aggregate
//! lexicon sentiment scores ([`sentiment`], [`sentiwordnet`]). The
//! [`hybrid`] module assembles those blocks, [`classifier`] trains the
//! four model families, [`eval`] runs stratified cross-validation
//! grids, and [`persist`] saves and loads fitted artifacts.

pub mod bow;
pub mod classifier;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod eval;
pub mod hybrid;
pub mod persist;
pub mod sentiment;
pub mod sentiwordnet;
pub mod textprep;

pub use bow::{bow_vector, build_vocabulary, SparseVector, Vocabulary};
pub use classifier::{
    class_index, maxent_objective_and_gradient, maxent_predict, maxent_predict_proba,
    dual_objective, maxent_train, nb_predict, nb_train,
    svm_decision, svm_predict, svm_train, train_classifier, ClassifierKind, ClassifierSettings,
    GammaChoice, KernelKind, KernelSpec, MaxEntModel, NaiveBayesModel, StopReason, SvmModel,
    TrainedModel, CLASSES,
};
pub use corpus::{
    load_polarity_corpus, load_snippet_file, DecodeOptions, Polarity, RawCorpus, RawRecord,
    TextEncoding,
};
pub use embedding::{
    load_word_vectors, tfidf_weight, train_cbow, train_cbow_with_stats, weighted_doc_vector,
    CbowConfig, DictionaryMatrix, DocFrequency,
};
pub use error::{Error, Result};
pub use eval::{
    accuracy, grid_cells, make_folds, render_table, render_tsv, run_cell, run_grid, ArtifactCache,
    CellResult, CellSpec, EvalConfig, FoldPlan, GridReport, GridRow,
};
pub use hybrid::{
    assemble, assemble_all, dot, squared_distance, write_matrix, BlockBoundaries, Components,
    FeatureVector, NonNegShift, RepresentationChoice, Scaling,
};
pub use persist::{load_model, save_model, Artifact, ModelBundle};
pub use sentiment::{
    build_sentiment_matrix, collect_forms, document_sentiment, sentence_sentiment,
    SentimentFeatures, SentimentMatrix,
};
pub use sentiwordnet::{load_sentiwordnet, parse_sentiwordnet_str, LexiconEntry, LexiconLoad, PosTag};
pub use textprep::{prepare, prepare_text, PrepConfig, PreparedDocument, Token};
