use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

use super::PosTag;
use crate::error::{Error, Result};

/// One tagged occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: PosTag,
}

impl Token {
    pub fn new(surface: impl Into<String>, lemma: impl Into<String>, pos: PosTag) -> Self {
        Token {
            surface: surface.into(),
            lemma: lemma.into(),
            pos,
        }
    }

    pub fn is_word(&self) -> bool {
        self.pos.is_word()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub author: String,
    pub period_label: String,
    pub date: Option<NaiveDate>,
    pub tokens: Vec<Token>,
    /// Index one past the last token of each sentence.
    pub sentence_breaks: Vec<usize>,
}

impl Document {
    /// Builds a document, checking that `sentence_breaks` partitions `tokens`.
    pub fn new(
        id: impl Into<String>,
        author: impl Into<String>,
        period_label: impl Into<String>,
        date: Option<NaiveDate>,
        tokens: Vec<Token>,
        sentence_breaks: Vec<usize>,
    ) -> Result<Self> {
        let doc = Document {
            id: id.into(),
            author: author.into(),
            period_label: period_label.into(),
            date,
            tokens,
            sentence_breaks,
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::domain("document id is empty"));
        }
        if self.tokens.is_empty() {
            if !self.sentence_breaks.is_empty() {
                return Err(Error::domain(format!(
                    "document {}: sentence breaks on an empty token list",
                    self.id
                )));
            }
            return Ok(());
        }
        let strictly_increasing = self
            .sentence_breaks
            .windows(2)
            .all(|pair| pair[0] < pair[1]);
        let starts_positive = self.sentence_breaks.first().is_some_and(|&b| b > 0);
        if !strictly_increasing
            || !starts_positive
            || self.sentence_breaks.last() != Some(&self.tokens.len())
        {
            return Err(Error::domain(format!(
                "document {}: sentence breaks must be strictly increasing and end at {}",
                self.id,
                self.tokens.len()
            )));
        }
        if let Some(t) = self
            .tokens
            .iter()
            .find(|t| t.surface.is_empty() || t.lemma.is_empty())
        {
            return Err(Error::domain(format!(
                "document {}: token with empty surface or lemma ({:?})",
                self.id, t
            )));
        }
        Ok(())
    }

    pub fn sentences(&self) -> impl Iterator<Item = &[Token]> + '_ {
        let mut start = 0;
        self.sentence_breaks.iter().map(move |&end| {
            let sentence = &self.tokens[start..end];
            start = end;
            sentence
        })
    }

    pub fn word_tokens(&self) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(|t| t.is_word())
    }
}

/// A labeled set of documents compared as one unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub label: String,
    pub document_ids: BTreeSet<String>,
}

impl Partition {
    pub fn new<I, S>(label: impl Into<String>, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Partition {
            label: label.into(),
            document_ids: ids.into_iter().map(Into::into).collect(),
        }
    }

    /// Partition containing every document given.
    pub fn all(label: impl Into<String>, docs: &[Document]) -> Self {
        Partition::new(label, docs.iter().map(|d| d.id.clone()))
    }

    pub fn select(selector: &PartitionSelector, docs: &[Document]) -> Self {
        Partition::new(
            selector.label.clone(),
            docs.iter()
                .filter(|d| selector.matches(d))
                .map(|d| d.id.clone()),
        )
    }

    pub fn is_disjoint(&self, other: &Partition) -> bool {
        self.document_ids.is_disjoint(&other.document_ids)
    }
}

/// Document filter: author and period equality plus an inclusive date range.
///
/// Textual form: `label` or `label:key=value,key=value` with keys
/// `author`, `period`, `from`, `to` (dates as `YYYY-MM-DD`). A bare label
/// selects documents whose period equals the label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionSelector {
    pub label: String,
    pub author: Option<String>,
    pub period: Option<String>,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
}

impl PartitionSelector {
    pub fn matches(&self, doc: &Document) -> bool {
        if self.author.as_ref().is_some_and(|a| *a != doc.author) {
            return false;
        }
        if self.period.as_ref().is_some_and(|p| *p != doc.period_label) {
            return false;
        }
        if self.from.is_some() || self.to.is_some() {
            let Some(date) = doc.date else {
                return false;
            };
            if self.from.is_some_and(|from| date < from) || self.to.is_some_and(|to| date > to) {
                return false;
            }
        }
        true
    }
}

impl FromStr for PartitionSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (label, spec) = match s.split_once(':') {
            Some((label, spec)) => (label.trim(), Some(spec)),
            None => (s.trim(), None),
        };
        if label.is_empty() {
            return Err(format!("partition selector `{s}` has an empty label"));
        }
        let mut selector = PartitionSelector {
            label: label.to_string(),
            ..Default::default()
        };
        let Some(spec) = spec else {
            selector.period = Some(label.to_string());
            return Ok(selector);
        };
        for clause in spec.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| format!("selector clause `{clause}` is not key=value"))?;
            let date = || {
                NaiveDate::parse_from_str(value, "%Y-%m-%d")
                    .map_err(|e| format!("bad date `{value}`: {e}"))
            };
            match key {
                "author" => selector.author = Some(value.to_string()),
                "period" => selector.period = Some(value.to_string()),
                "from" => selector.from = Some(date()?),
                "to" => selector.to = Some(date()?),
                other => return Err(format!("unknown selector key `{other}`")),
            }
        }
        Ok(selector)
    }
}

impl fmt::Display for PartitionSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        let mut clauses = Vec::new();
        if let Some(a) = &self.author {
            clauses.push(format!("author={a}"));
        }
        if let Some(p) = &self.period {
            clauses.push(format!("period={p}"));
        }
        if let Some(d) = self.from {
            clauses.push(format!("from={d}"));
        }
        if let Some(d) = self.to {
            clauses.push(format!("to={d}"));
        }
        if !clauses.is_empty() {
            write!(f, ":{}", clauses.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, author: &str, period: &str, date: Option<&str>) -> Document {
        Document::new(
            id,
            author,
            period,
            date.map(|d| NaiveDate::parse_from_str(d, "%Y-%m-%d").unwrap()),
            vec![Token::new("Je", "je", PosTag::Pron)],
            vec![1],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_breaks() {
        let tokens = vec![
            Token::new("a", "a", PosTag::Det),
            Token::new("b", "b", PosTag::Noun),
        ];
        assert!(Document::new("d", "x", "p", None, tokens.clone(), vec![1]).is_err());
        assert!(Document::new("d", "x", "p", None, tokens.clone(), vec![1, 1, 2]).is_err());
        assert!(Document::new("d", "x", "p", None, tokens.clone(), vec![0, 2]).is_err());
        let ok = Document::new("d", "x", "p", None, tokens, vec![1, 2]).unwrap();
        let lens: Vec<usize> = ok.sentences().map(|s| s.len()).collect();
        assert_eq!(lens, vec![1, 1]);
    }

    #[test]
    fn selector_splits_terms_by_date() {
        let docs = vec![
            doc("a", "Mitterrand", "Mitterrand", Some("1983-01-01")),
            doc("b", "Mitterrand", "Mitterrand", Some("1990-01-01")),
            doc("c", "Chirac", "Chirac", Some("1996-01-01")),
            doc("d", "Mitterrand", "Mitterrand", None),
        ];
        let first: PartitionSelector = "Mitterrand 1:author=Mitterrand,to=1988-05-20"
            .parse()
            .unwrap();
        let second: PartitionSelector = "Mitterrand 2:author=Mitterrand,from=1988-05-21"
            .parse()
            .unwrap();
        let p1 = Partition::select(&first, &docs);
        let p2 = Partition::select(&second, &docs);
        assert_eq!(p1.document_ids.iter().collect::<Vec<_>>(), vec!["a"]);
        assert_eq!(p2.document_ids.iter().collect::<Vec<_>>(), vec!["b"]);
        assert!(p1.is_disjoint(&p2));

        let bare: PartitionSelector = "Chirac".parse().unwrap();
        assert_eq!(bare.period.as_deref(), Some("Chirac"));
        assert_eq!(Partition::select(&bare, &docs).document_ids.len(), 1);
    }

    #[test]
    fn selector_display_parses_back() {
        let s: PartitionSelector = "T:author=X,from=2001-02-03".parse().unwrap();
        assert_eq!(s.to_string().parse::<PartitionSelector>().unwrap(), s);
        assert!("T:colour=red".parse::<PartitionSelector>().is_err());
        assert!(":author=X".parse::<PartitionSelector>().is_err());
    }
}
