use serde::Serialize;

use crate::charvocab::{
    classify_term, Classification, KeynessConfig, ReferenceMode, TermTest, UrnModel, UrnParams,
};
use crate::corpus::{FrequencyIndex, PosTag};
use crate::error::{Error, Result};

pub const DEFAULT_WATCH_LIST: &[&str] = &["nous", "je", "il", "vous"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PronounShare {
    pub lemma: String,
    /// Percent of all PRON tokens in the sample.
    pub percent: f64,
    pub test: TermTest,
}

impl PronounShare {
    pub fn class(&self) -> Classification {
        self.test.class
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PronounProfile {
    pub label: String,
    pub pronoun_total: u64,
    pub shares: Vec<PronounShare>,
}

/// Percent share of every pronoun lemma among the PRON tokens, sorted by
/// lemma. Sums to 100.
pub fn pronoun_inventory(sample: &FrequencyIndex) -> Result<Vec<(String, f64)>> {
    let total = sample.tag_total(PosTag::Pron);
    if total == 0 {
        return Err(Error::undefined(format!(
            "{} has no pronouns",
            sample.label
        )));
    }
    let mut shares: Vec<(String, f64)> = sample
        .terms()
        .filter(|((_, pos), _)| *pos == PosTag::Pron)
        .map(|((lemma, _), c)| (lemma.clone(), 100.0 * c as f64 / total as f64))
        .collect();
    shares.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(shares)
}

/// Relative frequency of each watched pronoun among all pronouns, with an
/// over/under-use test on the PRON urn against `reference`.
///
/// A watched lemma missing from both indexes gets 0% and an urn with no
/// successes, which is always typical.
pub fn pronoun_profile(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    watch: &[&str],
    config: &KeynessConfig,
) -> Result<PronounProfile> {
    let total = sample.tag_total(PosTag::Pron);
    if total == 0 {
        return Err(Error::undefined(format!(
            "{} has no pronouns",
            sample.label
        )));
    }
    let pron_config = KeynessConfig {
        model: UrnModel::NineUrn,
        ..*config
    };
    let shares = watch
        .iter()
        .map(|&lemma| {
            let tf1 = sample.tf(lemma, PosTag::Pron);
            let test = match classify_term(sample, reference, lemma, PosTag::Pron, &pron_config) {
                Ok(test) => test,
                Err(Error::TermAbsent { .. }) if tf1 == 0 => {
                    let population = match config.reference {
                        ReferenceMode::Inclusive => reference.tag_total(PosTag::Pron),
                        ReferenceMode::Exclusive => reference.tag_total(PosTag::Pron) + total,
                    };
                    let urn = UrnParams::new(population, 0, total)?;
                    TermTest::from_urn(lemma, PosTag::Pron, urn, 0, config.alpha)?
                }
                Err(e) => return Err(e),
            };
            Ok(PronounShare {
                lemma: lemma.to_string(),
                percent: 100.0 * tf1 as f64 / total as f64,
                test,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PronounProfile {
        label: sample.label.clone(),
        pronoun_total: total,
        shares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(label: &str, terms: &[(&str, PosTag, u64)]) -> FrequencyIndex {
        let mut pos = std::collections::BTreeMap::new();
        for &(_, p, c) in terms {
            *pos.entry(p).or_insert(0) += c;
        }
        FrequencyIndex::from_counts(
            label,
            pos,
            terms.iter().map(|&(l, p, c)| ((l.to_string(), p), c)),
        )
        .unwrap()
    }

    #[test]
    fn nous_share() {
        let sample = index(
            "s",
            &[
                ("nous", PosTag::Pron, 31),
                ("il", PosTag::Pron, 169),
                ("le", PosTag::Det, 800),
            ],
        );
        let profile =
            pronoun_profile(&sample, &sample, &["nous"], &KeynessConfig::default()).unwrap();
        assert_eq!(profile.shares[0].percent, 15.5);
        assert_eq!(profile.shares[0].class(), Classification::Typical);
    }

    #[test]
    fn absent_watch_lemma() {
        let sample = index("s", &[("il", PosTag::Pron, 10)]);
        let profile =
            pronoun_profile(&sample, &sample, &["vous"], &KeynessConfig::default()).unwrap();
        assert_eq!(profile.shares[0].percent, 0.0);
        assert_eq!(profile.shares[0].test.tf1, 0);
        assert_eq!(profile.shares[0].class(), Classification::Typical);
    }

    #[test]
    fn no_pronouns_is_undefined() {
        let sample = index("s", &[("le", PosTag::Det, 10)]);
        assert!(matches!(
            pronoun_profile(&sample, &sample, &["je"], &KeynessConfig::default()),
            Err(Error::UndefinedInput(_))
        ));
        assert!(pronoun_inventory(&sample).is_err());
    }

    #[test]
    fn inventory_sums_to_hundred() {
        let sample = index(
            "s",
            &[
                ("je", PosTag::Pron, 7),
                ("nous", PosTag::Pron, 3),
                ("on", PosTag::Pron, 11),
                ("le", PosTag::Det, 5),
            ],
        );
        let total: f64 = pronoun_inventory(&sample)
            .unwrap()
            .iter()
            .map(|(_, p)| p)
            .sum();
        assert!((total - 100.0).abs() < 1e-9);
    }

    #[test]
    fn planted_skew_is_flagged() {
        let reference = index(
            "r",
            &[
                ("nous", PosTag::Pron, 1000),
                ("je", PosTag::Pron, 1000),
                ("il", PosTag::Pron, 2000),
            ],
        );
        let sample = index(
            "s",
            &[
                ("nous", PosTag::Pron, 250),
                ("je", PosTag::Pron, 50),
                ("il", PosTag::Pron, 300),
            ],
        );
        let profile = pronoun_profile(
            &sample,
            &reference,
            DEFAULT_WATCH_LIST,
            &KeynessConfig::default(),
        )
        .unwrap();
        let classes: Vec<_> = profile.shares.iter().map(|s| s.class()).collect();
        assert_eq!(
            classes,
            vec![
                Classification::Overused,
                Classification::Underused,
                Classification::Typical,
                Classification::Typical,
            ]
        );
    }
}
