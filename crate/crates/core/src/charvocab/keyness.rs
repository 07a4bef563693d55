use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{
    classify_term, Classification, KeynessConfig, ReferenceMode, TermTest, UrnModel,
};
use super::hypergeom::check_alpha;
use crate::corpus::{FrequencyIndex, PosTag, TermKey};
use crate::error::{Error, Result};

/// Descending score, then lemma, then tag.
fn ranking(a: &TermTest, b: &TermTest) -> Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.lemma.cmp(&b.lemma))
        .then_with(|| a.pos.cmp(&b.pos))
}

/// Tests every term of the reference (and, in exclusive mode, of the
/// sample) whose tag passes `pos_filter`.
///
/// No multiple-testing correction is applied: each term is its own test at
/// level `alpha`, so roughly `alpha` of the typical terms land outside
/// their interval by chance. Under the nine-urn model, terms tagged NUM or
/// OTHER have no urn and are skipped.
pub fn characteristic_vocabulary(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    config: &KeynessConfig,
    pos_filter: Option<&[PosTag]>,
) -> Result<Vec<TermTest>> {
    check_alpha(config.alpha)?;
    let filter: Option<BTreeSet<PosTag>> =
        pos_filter.map(|tags| tags.iter().map(|t| t.folded()).collect());

    let mut keys: BTreeSet<&TermKey> = reference.terms().map(|(k, _)| k).collect();
    match config.reference {
        ReferenceMode::Inclusive => {
            if let Some(((lemma, pos), _)) =
                sample.terms().find(|(k, _)| reference.tf(&k.0, k.1) == 0)
            {
                return Err(Error::TermAbsent {
                    lemma: lemma.clone(),
                    pos: *pos,
                });
            }
        }
        ReferenceMode::Exclusive => keys.extend(sample.terms().map(|(k, _)| k)),
    }

    let keys: Vec<&TermKey> = keys
        .into_iter()
        .filter(|(_, pos)| filter.as_ref().is_none_or(|f| f.contains(pos)))
        .filter(|(_, pos)| config.model == UrnModel::SingleUrn || pos.urn().is_some())
        .collect();

    let mut tests = keys
        .par_iter()
        .map(|(lemma, pos)| classify_term(sample, reference, lemma, *pos, config))
        .collect::<Result<Vec<_>>>()?;
    tests.sort_by(ranking);
    Ok(tests)
}

/// The `limit` most overused terms (C+ only) among the tags in `pos_set`.
pub fn top_overused_lemmas(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    config: &KeynessConfig,
    pos_set: &[PosTag],
    limit: usize,
) -> Result<Vec<TermTest>> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let tests = characteristic_vocabulary(sample, reference, config, Some(pos_set))?;
    Ok(tests
        .into_iter()
        .filter(|t| t.class == Classification::Overused)
        .take(limit)
        .collect())
}

/// One row of a frequent-names comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KeynessRow {
    pub lemma: String,
    pub pos: PosTag,
    pub rank_sample: usize,
    pub rank_reference: Option<usize>,
    /// Occurrences per thousand word tokens.
    pub relfreq_sample: f64,
    pub relfreq_reference: f64,
    /// Relative change of the sample rate over the reference rate, in percent.
    pub difference_pct: Option<f64>,
}

fn per_mille(count: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        1000.0 * count as f64 / total as f64
    }
}

fn ranked_names(index: &FrequencyIndex) -> Vec<(&str, u64)> {
    let mut names: Vec<(&str, u64)> = index
        .terms()
        .filter(|((_, pos), _)| *pos == PosTag::Name)
        .map(|((lemma, _), c)| (lemma.as_str(), c))
        .collect();
    names.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    names
}

/// Frequency table for the sample's `limit` most frequent names.
///
/// In inclusive mode the reference rate is computed over the whole corpus
/// (sample included); in exclusive mode over the reference alone.
pub fn name_frequency_table(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    limit: usize,
    mode: ReferenceMode,
) -> Result<Vec<KeynessRow>> {
    let sample_names = ranked_names(sample);
    let reference_names = ranked_names(reference);
    if sample_names.is_empty() {
        return Err(Error::undefined("the sample has no NAME tokens"));
    }
    if reference_names.is_empty() && mode == ReferenceMode::Inclusive {
        return Err(Error::undefined("the reference has no NAME tokens"));
    }
    let reference_rank: HashMap<&str, usize> = reference_names
        .iter()
        .enumerate()
        .map(|(i, (lemma, _))| (*lemma, i + 1))
        .collect();

    Ok(sample_names
        .iter()
        .take(limit)
        .enumerate()
        .map(|(i, &(lemma, count))| {
            let relfreq_sample = per_mille(count, sample.n());
            let relfreq_reference = per_mille(reference.tf(lemma, PosTag::Name), reference.n());
            let difference_pct = (relfreq_reference > 0.0)
                .then(|| 100.0 * (relfreq_sample - relfreq_reference) / relfreq_reference);
            KeynessRow {
                lemma: lemma.to_string(),
                pos: PosTag::Name,
                rank_sample: i + 1,
                rank_reference: reference_rank.get(lemma).copied(),
                relfreq_sample,
                relfreq_reference,
                difference_pct,
            }
        })
        .collect())
}
