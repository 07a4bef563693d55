//! Per-partition frequency counts and their on-disk form.
//!
//! File layout (UTF-8, LF, fields separated by tabs):
//!
//! ```text
//! rhetorica-index v1 partition=<label>
//! n <count>
//! nc <TAG> <count>            one line per word tag, in tag order
//! tf <lemma> <TAG> <count>    one line per term, sorted by lemma then tag
//! checksum <hex>
//! ```
//!
//! The checksum is the lowercase hex SHA-256 digest of every byte that
//! precedes the `checksum` line, newlines included.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::ops::{Add, AddAssign};
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{Document, Partition, PosTag};
use crate::error::{Error, Result};

pub const INDEX_MAGIC: &str = "rhetorica-index";
pub const INDEX_VERSION: &str = "v1";

/// Term key: lemma plus tag, with AUX already folded into VERB.
pub type TermKey = (String, PosTag);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyIndex {
    pub label: String,
    n: u64,
    // raw per-tag word counts; AUX kept apart from VERB
    pos_counts: BTreeMap<PosTag, u64>,
    tf: HashMap<TermKey, u64>,
}

impl FrequencyIndex {
    pub fn empty(label: impl Into<String>) -> Self {
        FrequencyIndex {
            label: label.into(),
            ..Default::default()
        }
    }

    /// Builds an index directly from counts, checking internal consistency.
    pub fn from_counts(
        label: impl Into<String>,
        pos_counts: impl IntoIterator<Item = (PosTag, u64)>,
        tf: impl IntoIterator<Item = (TermKey, u64)>,
    ) -> Result<Self> {
        let mut index = FrequencyIndex::empty(label);
        for (tag, count) in pos_counts {
            if !tag.is_word() {
                return Err(Error::domain("PUNCT has no place in a frequency index"));
            }
            if count > 0 {
                *index.pos_counts.entry(tag).or_default() += count;
            }
        }
        for ((lemma, tag), count) in tf {
            if count > 0 {
                *index.tf.entry((lemma, tag.folded())).or_default() += count;
            }
        }
        index.n = index.pos_counts.values().sum();
        index.check_consistency()?;
        Ok(index)
    }

    fn check_consistency(&self) -> Result<()> {
        let tf_total: u64 = self.tf.values().sum();
        if tf_total != self.n {
            return Err(Error::domain(format!(
                "term counts sum to {tf_total} but n = {}",
                self.n
            )));
        }
        for urn in PosTag::WORD_TAGS {
            if urn == PosTag::Aux {
                continue;
            }
            let terms: u64 = self
                .tf
                .iter()
                .filter(|((_, tag), _)| *tag == urn)
                .map(|(_, c)| c)
                .sum();
            if terms != self.tag_total(urn) {
                return Err(Error::domain(format!(
                    "{urn} terms sum to {terms} but the tag total is {}",
                    self.tag_total(urn)
                )));
            }
        }
        Ok(())
    }

    pub fn add_token(&mut self, lemma: &str, pos: PosTag) {
        if !pos.is_word() {
            return;
        }
        self.n += 1;
        *self.pos_counts.entry(pos).or_default() += 1;
        let key = (lemma.to_string(), pos.folded());
        *self.tf.entry(key).or_default() += 1;
    }

    /// Total word tokens.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Raw count for one tag; AUX and VERB are separate here.
    pub fn pos_count(&self, tag: PosTag) -> u64 {
        self.pos_counts.get(&tag).copied().unwrap_or(0)
    }

    /// Count under the folded tag: VERB includes AUX.
    pub fn tag_total(&self, tag: PosTag) -> u64 {
        match tag {
            PosTag::Verb => self.pos_count(PosTag::Verb) + self.pos_count(PosTag::Aux),
            other => self.pos_count(other),
        }
    }

    /// Size of the sampling urn for `tag`, or `None` for tags outside the nine urns.
    pub fn urn_total(&self, tag: PosTag) -> Option<u64> {
        tag.urn().map(|urn| self.tag_total(urn))
    }

    pub fn pos_counts(&self) -> &BTreeMap<PosTag, u64> {
        &self.pos_counts
    }

    pub fn tf(&self, lemma: &str, pos: PosTag) -> u64 {
        self.tf
            .get(&(lemma.to_string(), pos.folded()))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, u64)> + '_ {
        self.tf.iter().map(|(k, &v)| (k, v))
    }

    /// Terms in deterministic (lemma, tag) order.
    pub fn sorted_terms(&self) -> Vec<(&TermKey, u64)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(b.0));
        terms
    }

    /// Number of distinct (lemma, tag) terms.
    pub fn types(&self) -> usize {
        self.tf.len()
    }

    /// Lexical word tokens: NOUN, NAME, lexical VERB, ADJ, ADV.
    pub fn lexical_count(&self) -> u64 {
        self.pos_counts
            .iter()
            .filter(|(tag, _)| tag.is_lexical())
            .map(|(_, c)| c)
            .sum()
    }

    /// True when every count here is at most the matching count in `other`.
    pub fn is_dominated_by(&self, other: &FrequencyIndex) -> bool {
        self.n <= other.n
            && self
                .pos_counts
                .iter()
                .all(|(tag, &c)| c <= other.pos_count(*tag))
            && self
                .tf
                .iter()
                .all(|(key, &c)| c <= other.tf.get(key).copied().unwrap_or(0))
    }

    /// Same counts, ignoring the label.
    pub fn same_counts(&self, other: &FrequencyIndex) -> bool {
        self.n == other.n && self.pos_counts == other.pos_counts && self.tf == other.tf
    }

    pub fn merge(&mut self, other: &FrequencyIndex) {
        self.n += other.n;
        for (tag, c) in &other.pos_counts {
            *self.pos_counts.entry(*tag).or_default() += c;
        }
        for (key, c) in &other.tf {
            *self.tf.entry(key.clone()).or_default() += c;
        }
    }

    pub fn to_file_string(&self) -> Result<String> {
        if self.label.contains(['\t', '\n', '\r']) {
            return Err(Error::domain("partition label contains a tab or newline"));
        }
        let mut body = String::new();
        body.push_str(&format!(
            "{INDEX_MAGIC}\t{INDEX_VERSION}\tpartition={}\n",
            self.label
        ));
        body.push_str(&format!("n\t{}\n", self.n));
        for tag in PosTag::WORD_TAGS {
            body.push_str(&format!("nc\t{tag}\t{}\n", self.pos_count(tag)));
        }
        for ((lemma, tag), count) in self.sorted_terms() {
            if lemma.is_empty() || lemma.contains(['\t', '\n', '\r']) {
                return Err(Error::domain(format!("lemma {lemma:?} cannot be stored")));
            }
            body.push_str(&format!("tf\t{lemma}\t{tag}\t{count}\n"));
        }
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        body.push_str(&format!("checksum\t{digest}\n"));
        Ok(body)
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        let fail = |line: usize, message: String| Error::IndexFormat { line, message };

        let checksum_at = text
            .rfind("checksum\t")
            .filter(|&at| at == 0 || text.as_bytes()[at - 1] == b'\n')
            .ok_or_else(|| fail(0, "missing checksum line".into()))?;
        let (body, trailer) = text.split_at(checksum_at);

        let mut lines = body.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines
            .next()
            .ok_or_else(|| fail(1, "empty index file".into()))?;
        let fields: Vec<&str> = header.split('\t').collect();
        if fields.first() != Some(&INDEX_MAGIC) || fields.len() != 3 {
            return Err(fail(1, "not a rhetorica index header".into()));
        }
        if fields[1] != INDEX_VERSION {
            return Err(Error::VersionMismatch {
                found: fields[1].to_string(),
            });
        }
        let label = fields[2]
            .strip_prefix("partition=")
            .ok_or_else(|| fail(1, "header lacks partition=".into()))?;

        let stored = trailer
            .trim_end_matches('\n')
            .strip_prefix("checksum\t")
            .unwrap_or_default();
        let computed = hex::encode(Sha256::digest(body.as_bytes()));
        if stored != computed {
            return Err(Error::ChecksumMismatch {
                stored: stored.to_string(),
                computed,
            });
        }

        let count = |line: usize, raw: &str| {
            raw.parse::<u64>()
                .map_err(|_| fail(line, format!("bad count `{raw}`")))
        };
        let tag = |line: usize, raw: &str| {
            PosTag::parse_known(raw)
                .filter(|t| t.is_word() && t.as_str() == raw)
                .ok_or_else(|| fail(line, format!("bad tag `{raw}`")))
        };

        let mut n = None;
        let mut pos_counts = BTreeMap::new();
        let mut tf = HashMap::new();
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                ["n", c] => {
                    if n.replace(count(line_no, c)?).is_some() {
                        return Err(fail(line_no, "duplicate n line".into()));
                    }
                }
                ["nc", t, c] => {
                    let (t, c) = (tag(line_no, t)?, count(line_no, c)?);
                    if pos_counts.insert(t, c).is_some() {
                        return Err(fail(line_no, format!("duplicate nc line for {t}")));
                    }
                }
                ["tf", lemma, t, c] => {
                    let (t, c) = (tag(line_no, t)?, count(line_no, c)?);
                    if lemma.is_empty() || t == PosTag::Aux || c == 0 {
                        return Err(fail(line_no, "invalid term line".into()));
                    }
                    if tf.insert((lemma.to_string(), t), c).is_some() {
                        return Err(fail(line_no, format!("duplicate term {lemma}/{t}")));
                    }
                }
                _ => return Err(fail(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        let n = n.ok_or_else(|| fail(0, "missing n line".into()))?;
        pos_counts.retain(|_, c| *c > 0);
        let index = FrequencyIndex {
            label: label.to_string(),
            n,
            pos_counts,
            tf,
        };
        if index.pos_counts.values().sum::<u64>() != n {
            return Err(fail(0, "nc lines do not sum to n".into()));
        }
        index
            .check_consistency()
            .map_err(|e| fail(0, e.to_string()))?;
        Ok(index)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let body = self.to_file_string()?;
        let mut file = fs::File::create(path)?;
        file.write_all(body.as_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        FrequencyIndex::from_file_str(&text)
    }
}

impl AddAssign<&FrequencyIndex> for FrequencyIndex {
    fn add_assign(&mut self, rhs: &FrequencyIndex) {
        self.merge(rhs);
    }
}

impl Add for FrequencyIndex {
    type Output = FrequencyIndex;

    fn add(mut self, rhs: FrequencyIndex) -> FrequencyIndex {
        self.merge(&rhs);
        self
    }
}

fn index_document(label: &str, doc: &Document) -> FrequencyIndex {
    let mut index = FrequencyIndex::empty(label);
    for token in &doc.tokens {
        index.add_token(&token.lemma, token.pos);
    }
    index
}

/// Counts the word tokens of every document in `partition`.
///
/// Documents are indexed in parallel and the partial indexes merged.
pub fn build_index(docs: &[Document], partition: &Partition) -> Result<FrequencyIndex> {
    let by_id: HashMap<&str, &Document> = docs.iter().map(|d| (d.id.as_str(), d)).collect();
    let missing: Vec<String> = partition
        .document_ids
        .iter()
        .filter(|id| !by_id.contains_key(id.as_str()))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::UnknownDocuments(missing));
    }
    let selected: Vec<&Document> = partition
        .document_ids
        .iter()
        .map(|id| by_id[id.as_str()])
        .collect();
    let label = partition.label.as_str();
    Ok(selected
        .par_iter()
        .map(|doc| index_document(label, doc))
        .reduce(
            || FrequencyIndex::empty(label),
            |mut acc, part| {
                acc.merge(&part);
                acc
            },
        ))
}
