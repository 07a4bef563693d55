use std::collections::HashSet;
use std::hash::Hash;

use crate::corpus::{FrequencyIndex, Token};
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: usize = 10_000;
pub const DEFAULT_BW_THRESHOLD: usize = 6;

/// Share of lexical words (nouns, names, lexical verbs, adjectives,
/// adverbs) among word tokens. Auxiliaries count as function words.
pub fn lexical_density(index: &FrequencyIndex) -> Result<f64> {
    if index.n() == 0 {
        return Err(Error::undefined("lexical density of an empty index"));
    }
    Ok(index.lexical_count() as f64 / index.n() as f64)
}

/// Share of every other word token: `1 - lexical_density`.
pub fn function_word_ratio(index: &FrequencyIndex) -> Result<f64> {
    if index.n() == 0 {
        return Err(Error::undefined("function-word ratio of an empty index"));
    }
    Ok((index.n() - index.lexical_count()) as f64 / index.n() as f64)
}

/// Terms seen exactly once over distinct terms.
pub fn hapax_density(index: &FrequencyIndex) -> Result<f64> {
    if index.n() == 0 {
        return Err(Error::undefined("hapax density of an empty index"));
    }
    let hapaxes = index.terms().filter(|(_, c)| *c == 1).count();
    Ok(hapaxes as f64 / index.types() as f64)
}

/// Letters in a surface form; digits, apostrophes and hyphens don't count.
pub fn letter_count(surface: &str) -> usize {
    surface.chars().filter(|c| c.is_alphabetic()).count()
}

pub fn big_word_ratio<'a>(
    tokens: impl IntoIterator<Item = &'a Token>,
    threshold: usize,
) -> Result<f64> {
    let (mut words, mut big) = (0usize, 0usize);
    for t in tokens.into_iter().filter(|t| t.is_word()) {
        words += 1;
        if letter_count(&t.surface) >= threshold {
            big += 1;
        }
    }
    if words == 0 {
        return Err(Error::undefined("big-word ratio without word tokens"));
    }
    Ok(big as f64 / words as f64)
}

pub fn mean_word_length<'a>(tokens: impl IntoIterator<Item = &'a Token>) -> Result<f64> {
    let (mut words, mut letters) = (0usize, 0usize);
    for t in tokens.into_iter().filter(|t| t.is_word()) {
        words += 1;
        letters += letter_count(&t.surface);
    }
    if words == 0 {
        return Err(Error::undefined("mean word length without word tokens"));
    }
    Ok(letters as f64 / words as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowedTtr {
    pub ttr: f64,
    pub window_size: usize,
    /// Full windows averaged; 0 when the stream is shorter than one window.
    pub windows_used: usize,
}

impl WindowedTtr {
    pub fn sub_window(&self) -> bool {
        self.windows_used == 0
    }
}

/// Mean type/token ratio over consecutive non-overlapping windows of
/// `window` items. A trailing partial window is dropped; a stream shorter
/// than one window is measured whole and flagged through `windows_used = 0`.
pub fn windowed_ttr<T: Eq + Hash>(stream: &[T], window: usize) -> Result<WindowedTtr> {
    if window == 0 {
        return Err(Error::domain("TTR window must be positive"));
    }
    if stream.is_empty() {
        return Err(Error::undefined("TTR of an empty stream"));
    }
    let ratio =
        |chunk: &[T]| chunk.iter().collect::<HashSet<_>>().len() as f64 / chunk.len() as f64;
    if stream.len() < window {
        return Ok(WindowedTtr {
            ttr: ratio(stream),
            window_size: window,
            windows_used: 0,
        });
    }
    let per_window: Vec<f64> = stream.chunks_exact(window).map(ratio).collect();
    Ok(WindowedTtr {
        ttr: per_window.iter().sum::<f64>() / per_window.len() as f64,
        window_size: window,
        windows_used: per_window.len(),
    })
}
