//! Stylometry over POS-tagged corpora partitioned by author or period.
//!
//! - [`corpus`]: tagged-TSV parsing, tokenization, sentence segmentation,
//!   partitions and frequency indexes.
//! - [`metrics`]: lexical density, windowed type/token ratio, big words,
//!   word and sentence lengths, hapax density, pronoun profiles.
//! - [`charvocab`]: exact hypergeometric over/under-use tests against a
//!   reference population, single-urn or per-POS-category.
//! - [`cli`]: the `rhetorica` command-line front end.

pub mod charvocab;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod output;

pub use error::{Error, Result};
