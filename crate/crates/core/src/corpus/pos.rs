use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Normalized part-of-speech tag carried by every token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Name,
    Verb,
    Aux,
    Adj,
    Adv,
    Prep,
    Conj,
    Det,
    Pron,
    Num,
    Punct,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 13] = [
        PosTag::Noun,
        PosTag::Name,
        PosTag::Verb,
        PosTag::Aux,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Prep,
        PosTag::Conj,
        PosTag::Det,
        PosTag::Pron,
        PosTag::Num,
        PosTag::Punct,
        PosTag::Other,
    ];

    /// Every tag that marks a word token (everything except punctuation).
    pub const WORD_TAGS: [PosTag; 12] = [
        PosTag::Noun,
        PosTag::Name,
        PosTag::Verb,
        PosTag::Aux,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Prep,
        PosTag::Conj,
        PosTag::Det,
        PosTag::Pron,
        PosTag::Num,
        PosTag::Other,
    ];

    /// The nine sampling urns of the POS-conditioned model.
    pub const URNS: [PosTag; 9] = [
        PosTag::Noun,
        PosTag::Name,
        PosTag::Verb,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Prep,
        PosTag::Conj,
        PosTag::Det,
        PosTag::Pron,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Name => "NAME",
            PosTag::Verb => "VERB",
            PosTag::Aux => "AUX",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Prep => "PREP",
            PosTag::Conj => "CONJ",
            PosTag::Det => "DET",
            PosTag::Pron => "PRON",
            PosTag::Num => "NUM",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        }
    }

    pub fn is_word(self) -> bool {
        self != PosTag::Punct
    }

    /// Content-word categories; auxiliaries count as function words.
    pub fn is_lexical(self) -> bool {
        matches!(
            self,
            PosTag::Noun | PosTag::Name | PosTag::Verb | PosTag::Adj | PosTag::Adv
        )
    }

    /// Tag used for term keys and urn membership: AUX folds into VERB.
    pub fn folded(self) -> PosTag {
        match self {
            PosTag::Aux => PosTag::Verb,
            other => other,
        }
    }

    /// The urn a token of this tag is drawn from, if any.
    pub fn urn(self) -> Option<PosTag> {
        let folded = self.folded();
        PosTag::URNS.contains(&folded).then_some(folded)
    }

    /// Parses a tag, accepting the canonical names plus a few common
    /// Universal Dependencies synonyms. Returns `None` for anything else.
    pub fn parse_known(raw: &str) -> Option<PosTag> {
        let tag = match raw.to_ascii_uppercase().as_str() {
            "NOUN" => PosTag::Noun,
            "NAME" | "PROPN" => PosTag::Name,
            "VERB" => PosTag::Verb,
            "AUX" => PosTag::Aux,
            "ADJ" => PosTag::Adj,
            "ADV" => PosTag::Adv,
            "PREP" | "ADP" => PosTag::Prep,
            "CONJ" | "CCONJ" | "SCONJ" => PosTag::Conj,
            "DET" => PosTag::Det,
            "PRON" => PosTag::Pron,
            "NUM" => PosTag::Num,
            "PUNCT" => PosTag::Punct,
            "OTHER" => PosTag::Other,
            _ => return None,
        };
        Some(tag)
    }

    /// Parses a comma-separated tag list such as `NOUN,ADJ,VERB`.
    pub fn parse_list(raw: &str) -> Result<Vec<PosTag>, String> {
        raw.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect()
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::parse_known(s).ok_or_else(|| format!("unknown POS tag `{s}`"))
    }
}
