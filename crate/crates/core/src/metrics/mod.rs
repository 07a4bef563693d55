//! Overall stylistic measurements and pronoun profiles.

mod lexical;
mod pronouns;
mod report;
mod sentences;

pub use lexical::{
    big_word_ratio, function_word_ratio, hapax_density, letter_count, lexical_density,
    mean_word_length, windowed_ttr, WindowedTtr, DEFAULT_BW_THRESHOLD, DEFAULT_WINDOW,
};
pub use pronouns::{
    pronoun_inventory, pronoun_profile, PronounProfile, PronounShare, DEFAULT_WATCH_LIST,
};
pub use report::{metrics_report, IndexMetrics, MetricsOptions, MetricsReport, TtrBasis};
pub use sentences::{
    sentence_length_stats, sentence_lengths, SentenceLengthStats, DEFAULT_QUANTILES,
};
