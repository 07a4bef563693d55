use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::hypergeom::{check_alpha, Hypergeometric, UrnParams};
use crate::corpus::{FrequencyIndex, PosTag};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// C+: more occurrences than the upper bound.
    Overused,
    /// C-: fewer occurrences than the lower bound.
    Underused,
    /// C=: inside the interval.
    Typical,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Overused => "C+",
            Classification::Underused => "C-",
            Classification::Typical => "C=",
        }
    }

    pub fn from_bounds(observed: u64, lower: u64, upper: u64) -> Self {
        if observed < lower {
            Classification::Underused
        } else if observed > upper {
            Classification::Overused
        } else {
            Classification::Typical
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Which population a term's draws are compared against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UrnModel {
    /// Every word token of the corpus.
    SingleUrn,
    /// Only tokens of the term's own POS category.
    #[default]
    NineUrn,
}

impl FromStr for UrnModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" | "single-urn" => Ok(UrnModel::SingleUrn),
            "nine-urn" | "nine" => Ok(UrnModel::NineUrn),
            other => Err(format!("unknown model `{other}` (single|nine-urn)")),
        }
    }
}

impl fmt::Display for UrnModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UrnModel::SingleUrn => "single",
            UrnModel::NineUrn => "nine-urn",
        })
    }
}

/// Whether the reference index already contains the sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReferenceMode {
    /// Reference is the whole corpus, sample included.
    #[default]
    Inclusive,
    /// Reference holds only the other partitions; the population is
    /// reference + sample.
    Exclusive,
}

impl FromStr for ReferenceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inclusive" => Ok(ReferenceMode::Inclusive),
            "exclusive" => Ok(ReferenceMode::Exclusive),
            other => Err(format!(
                "unknown reference mode `{other}` (inclusive|exclusive)"
            )),
        }
    }
}

impl fmt::Display for ReferenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceMode::Inclusive => "inclusive",
            ReferenceMode::Exclusive => "exclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeynessConfig {
    pub alpha: f64,
    pub model: UrnModel,
    pub reference: ReferenceMode,
}

impl Default for KeynessConfig {
    fn default() -> Self {
        KeynessConfig {
            alpha: 0.01,
            model: UrnModel::NineUrn,
            reference: ReferenceMode::Inclusive,
        }
    }
}

/// Outcome of one over/under-use test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermTest {
    pub lemma: String,
    pub pos: PosTag,
    pub tf1: u64,
    pub expected: f64,
    pub lower: u64,
    pub upper: u64,
    /// P(X <= tf1) under the null hypothesis.
    pub cdf: f64,
    pub alpha: f64,
    pub class: Classification,
    /// |tf1 - expected| / sd; infinite when the deviation is certain.
    pub score: f64,
}

impl TermTest {
    /// Tests `observed` draws against an urn.
    pub fn from_urn(
        lemma: impl Into<String>,
        pos: PosTag,
        params: UrnParams,
        observed: u64,
        alpha: f64,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        let (lo, hi) = params.support();
        if observed < lo || observed > hi {
            return Err(Error::domain(format!(
                "observed count {observed} outside support [{lo}, {hi}]"
            )));
        }
        let dist = Hypergeometric::new(params);
        let (lower, upper) = dist.interval(alpha)?;
        let expected = params.mean();
        Ok(TermTest {
            lemma: lemma.into(),
            pos,
            tf1: observed,
            expected,
            lower,
            upper,
            cdf: dist.cdf(observed),
            alpha,
            class: Classification::from_bounds(observed, lower, upper),
            score: deviation_score(observed, expected, params.std_dev()),
        })
    }
}

pub(crate) fn deviation_score(observed: u64, expected: f64, sd: f64) -> f64 {
    let deviation = (observed as f64 - expected).abs();
    if sd > 0.0 {
        deviation / sd
    } else if deviation > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Population and sample sizes for the urn `pos` is drawn from.
fn urn_sizes(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    pos: PosTag,
    model: UrnModel,
) -> Result<(u64, u64)> {
    match model {
        UrnModel::SingleUrn => Ok((reference.n(), sample.n())),
        UrnModel::NineUrn => {
            let urn = pos
                .urn()
                .ok_or_else(|| Error::domain(format!("{pos} belongs to none of the nine urns")))?;
            Ok((reference.tag_total(urn), sample.tag_total(urn)))
        }
    }
}

/// Builds the urn for one term plus the observed sample count.
pub fn term_urn(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    lemma: &str,
    pos: PosTag,
    config: &KeynessConfig,
) -> Result<(UrnParams, u64)> {
    let pos = pos.folded();
    let (ref_size, sample_size) = urn_sizes(sample, reference, pos, config.model)?;
    let tf_sample = sample.tf(lemma, pos);
    let tf_ref = reference.tf(lemma, pos);
    match config.reference {
        ReferenceMode::Inclusive => {
            if tf_ref == 0 {
                return Err(Error::TermAbsent {
                    lemma: lemma.to_string(),
                    pos,
                });
            }
            if sample_size > ref_size || tf_sample > tf_ref || sample.n() > reference.n() {
                return Err(Error::domain(format!(
                    "sample is not contained in the reference for {lemma}/{pos} \
                     (sample {tf_sample}/{sample_size}, reference {tf_ref}/{ref_size})"
                )));
            }
            Ok((UrnParams::new(ref_size, tf_ref, sample_size)?, tf_sample))
        }
        ReferenceMode::Exclusive => Ok((
            UrnParams::new(ref_size + sample_size, tf_ref + tf_sample, sample_size)?,
            tf_sample,
        )),
    }
}

/// Classifies one (lemma, POS) term of the sample against the reference.
pub fn classify_term(
    sample: &FrequencyIndex,
    reference: &FrequencyIndex,
    lemma: &str,
    pos: PosTag,
    config: &KeynessConfig,
) -> Result<TermTest> {
    check_alpha(config.alpha)?;
    let pos = pos.folded();
    if config.reference == ReferenceMode::Exclusive && reference.tf(lemma, pos) == 0 {
        let tf1 = sample.tf(lemma, pos);
        if tf1 == 0 {
            return Err(Error::TermAbsent {
                lemma: lemma.to_string(),
                pos,
            });
        }
        // never seen outside the sample: no expectation to compare against
        urn_sizes(sample, reference, pos, config.model)?;
        return Ok(TermTest {
            lemma: lemma.to_string(),
            pos,
            tf1,
            expected: 0.0,
            lower: 0,
            upper: 0,
            cdf: 1.0,
            alpha: config.alpha,
            class: Classification::Overused,
            score: f64::INFINITY,
        });
    }
    let (params, observed) = term_urn(sample, reference, lemma, pos, config)?;
    TermTest::from_urn(lemma, pos, params, observed, config.alpha)
}
