use std::fmt;
use std::str::FromStr;

use super::lexical::{
    big_word_ratio, hapax_density, lexical_density, mean_word_length, windowed_ttr,
    DEFAULT_BW_THRESHOLD, DEFAULT_WINDOW,
};
use super::sentences::{sentence_length_stats, DEFAULT_QUANTILES};
use crate::corpus::{Document, FrequencyIndex};
use crate::error::{Error, Result};

/// What counts as a type for the type/token ratio.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TtrBasis {
    /// Lowercased surface forms.
    #[default]
    Surface,
    Lemma,
}

impl FromStr for TtrBasis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "surface" => Ok(TtrBasis::Surface),
            "lemma" => Ok(TtrBasis::Lemma),
            other => Err(format!("unknown TTR basis `{other}` (surface|lemma)")),
        }
    }
}

impl fmt::Display for TtrBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TtrBasis::Surface => "surface",
            TtrBasis::Lemma => "lemma",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsOptions {
    pub window_size: usize,
    pub bw_threshold: usize,
    pub ttr_basis: TtrBasis,
    pub quantiles: Vec<f64>,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions {
            window_size: DEFAULT_WINDOW,
            bw_threshold: DEFAULT_BW_THRESHOLD,
            ttr_basis: TtrBasis::Surface,
            quantiles: DEFAULT_QUANTILES.to_vec(),
        }
    }
}

/// Measurements that only need counts.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexMetrics {
    pub label: String,
    pub tokens: u64,
    pub types: usize,
    pub ld: f64,
    pub hapax_density: f64,
}

impl IndexMetrics {
    pub fn from_index(index: &FrequencyIndex) -> Result<Self> {
        Ok(IndexMetrics {
            label: index.label.clone(),
            tokens: index.n(),
            types: index.types(),
            ld: lexical_density(index)?,
            hapax_density: hapax_density(index)?,
        })
    }
}

/// Overall stylistic measurements for one partition.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub counts: IndexMetrics,
    pub documents: usize,
    pub sentences: usize,
    pub ttr: f64,
    pub bw: f64,
    pub mean_word_length: f64,
    pub msl_mean: f64,
    pub msl_median: usize,
    pub msl_quantiles: Vec<(f64, usize)>,
    pub window_size: usize,
    pub windows_used: usize,
    pub bw_threshold: usize,
    pub ttr_basis: TtrBasis,
}

impl MetricsReport {
    /// Set when the partition is shorter than one TTR window and the ratio
    /// was taken over the whole stream.
    pub fn sub_window(&self) -> bool {
        self.windows_used == 0
    }
}

/// Bundles every overall measurement for `docs`, whose counts are `index`.
pub fn metrics_report(
    docs: &[Document],
    index: &FrequencyIndex,
    options: &MetricsOptions,
) -> Result<MetricsReport> {
    if docs.is_empty() {
        return Err(Error::undefined(format!(
            "partition {} has no documents",
            index.label
        )));
    }
    let words: Vec<_> = docs.iter().flat_map(Document::word_tokens).collect();
    if words.len() as u64 != index.n() {
        return Err(Error::domain(format!(
            "index {} counts {} word tokens but the documents hold {}",
            index.label,
            index.n(),
            words.len()
        )));
    }
    let counts = IndexMetrics::from_index(index)?;
    let stream: Vec<String> = match options.ttr_basis {
        TtrBasis::Surface => words.iter().map(|t| t.surface.to_lowercase()).collect(),
        TtrBasis::Lemma => words.iter().map(|t| t.lemma.clone()).collect(),
    };
    let ttr = windowed_ttr(&stream, options.window_size)?;
    let sentences = sentence_length_stats(docs, &options.quantiles)?;
    Ok(MetricsReport {
        counts,
        documents: docs.len(),
        sentences: sentences.sentences,
        ttr: ttr.ttr,
        bw: big_word_ratio(words.iter().copied(), options.bw_threshold)?,
        mean_word_length: mean_word_length(words.iter().copied())?,
        msl_mean: sentences.mean,
        msl_median: sentences.median,
        msl_quantiles: sentences.quantiles,
        window_size: options.window_size,
        windows_used: ttr.windows_used,
        bw_threshold: options.bw_threshold,
        ttr_basis: options.ttr_basis,
    })
}
