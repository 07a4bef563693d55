//! Characteristic vocabulary: exact hypergeometric over/under-use tests.
//!
//! A sample (one partition) is treated as `n` tokens drawn without
//! replacement from a population (the whole corpus, or one POS category of
//! it). A term seen `K` times in the population is expected `n K / N` times
//! in the sample; it is classified C- below the `alpha/2` quantile, C+
//! above the `1 - alpha/2` quantile, and C= otherwise.

mod classify;
mod hypergeom;
mod keyness;

pub use classify::{
    classify_term, term_urn, Classification, KeynessConfig, ReferenceMode, TermTest, UrnModel,
};
pub use hypergeom::{confidence_interval, hypergeom_cdf, hypergeom_pmf, Hypergeometric, UrnParams};
pub use keyness::{
    characteristic_vocabulary, name_frequency_table, top_overused_lemmas, KeynessRow,
};
