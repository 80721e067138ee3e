//! Classification of clips, corpus statistics and script linting.

pub mod classify;
pub mod lint;
pub mod stats;

pub use classify::{classify, classify_timeline, label_names, observe, ObservedClip};
pub use lint::lint;
pub use stats::{corpus_stats, reference_stats, CorpusStats};
