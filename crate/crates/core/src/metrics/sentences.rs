use crate::corpus::Document;
use crate::error::{Error, Result};

pub const DEFAULT_QUANTILES: &[f64] = &[0.1, 0.25, 0.5, 0.75, 0.9];

#[derive(Clone, Debug, PartialEq)]
pub struct SentenceLengthStats {
    pub sentences: usize,
    pub mean: f64,
    /// Upper median: the largest length L such that at least half of the
    /// sentences are L tokens or longer.
    pub median: usize,
    pub quantiles: Vec<(f64, usize)>,
}

/// Word tokens per sentence, over every sentence of every document.
pub fn sentence_lengths(docs: &[Document]) -> Vec<usize> {
    docs.iter()
        .flat_map(|d| {
            d.sentences()
                .map(|s| s.iter().filter(|t| t.is_word()).count())
        })
        .collect()
}

/// Length at quantile `q` of ascending `sorted`: element `floor(q * m)`,
/// clamped to the last one, so q = 0.5 is the upper median.
fn attained_quantile(sorted: &[usize], q: f64) -> usize {
    let i = ((q * sorted.len() as f64).floor() as usize).min(sorted.len() - 1);
    sorted[i]
}

pub fn sentence_length_stats(docs: &[Document], quantiles: &[f64]) -> Result<SentenceLengthStats> {
    let mut lengths = sentence_lengths(docs);
    if lengths.is_empty() {
        return Err(Error::undefined("sentence statistics without sentences"));
    }
    if let Some(q) = quantiles.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        return Err(Error::domain(format!("quantile {q} outside [0, 1]")));
    }
    lengths.sort_unstable();
    let total: usize = lengths.iter().sum();
    Ok(SentenceLengthStats {
        sentences: lengths.len(),
        mean: total as f64 / lengths.len() as f64,
        median: attained_quantile(&lengths, 0.5),
        quantiles: quantiles
            .iter()
            .map(|&q| (q, attained_quantile(&lengths, q)))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{PosTag, Token};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn doc_with_lengths(lengths: &[usize]) -> Document {
        let mut tokens = Vec::new();
        let mut breaks = Vec::new();
        for &len in lengths {
            for _ in 0..len {
                tokens.push(Token::new("mot", "mot", PosTag::Noun));
            }
            tokens.push(Token::new(".", ".", PosTag::Punct));
            breaks.push(tokens.len());
        }
        Document::new("d", "a", "p", None, tokens, breaks).unwrap()
    }

    #[test]
    fn single_sentence() {
        let stats = sentence_length_stats(&[doc_with_lengths(&[9])], DEFAULT_QUANTILES).unwrap();
        assert_eq!((stats.mean, stats.median), (9.0, 9));
    }

    #[test]
    fn punctuation_excluded_and_mean() {
        let stats = sentence_length_stats(&[doc_with_lengths(&[10, 20, 30])], &[]).unwrap();
        assert_eq!(stats.mean, 20.0);
        assert_eq!(stats.median, 20);
    }

    #[test]
    fn upper_median_on_even_counts() {
        let stats =
            sentence_length_stats(&[doc_with_lengths(&[40, 10, 42, 50])], &[0.0, 1.0]).unwrap();
        // at least half of the sentences have 42 tokens or more
        assert_eq!(stats.median, 42);
        assert_eq!(stats.quantiles, vec![(0.0, 10), (1.0, 50)]);
    }

    #[test]
    fn no_sentences() {
        assert!(sentence_length_stats(&[], &[]).is_err());
        assert!(sentence_length_stats(&[doc_with_lengths(&[3])], &[1.5]).is_err());
    }

    #[test]
    fn random_sentences_mean_by_independent_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let lengths: Vec<usize> = (0..1000).map(|_| rng.gen_range(1..80)).collect();
        let stats =
            sentence_length_stats(&[doc_with_lengths(&lengths)], DEFAULT_QUANTILES).unwrap();
        let mut total = 0usize;
        for l in &lengths {
            total += l;
        }
        assert_eq!(stats.mean, total as f64 / 1000.0);
        assert!(lengths.contains(&stats.median));
        for (_, l) in &stats.quantiles {
            assert!(lengths.contains(l));
        }
    }
}
