//! Reader and writer for the tagged-TSV corpus format. Fields are
//! tab-separated (shown as spaces below).
//!
//! ```text
//! #doc id=m1 author=Macron period=Macron date=2017-05-14
//! Je je PRON
//! suis être AUX
//! . . PUNCT
//!
//! # a comment
//! ```
//!
//! A blank line closes the current sentence; a new `#doc` header (or end of
//! input) closes the current document.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use chrono::NaiveDate;

use super::{AliasMap, Document, PosTag, Token};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Default)]
pub struct ParsedCorpus {
    pub documents: Vec<Document>,
    pub warnings: Vec<ParseWarning>,
}

struct OpenDocument {
    id: String,
    author: String,
    period: String,
    date: Option<NaiveDate>,
    tokens: Vec<Token>,
    breaks: Vec<usize>,
}

impl OpenDocument {
    fn close_sentence(&mut self) {
        if self.breaks.last().copied().unwrap_or(0) < self.tokens.len() {
            self.breaks.push(self.tokens.len());
        }
    }

    fn finish(mut self) -> Document {
        self.close_sentence();
        Document {
            id: self.id,
            author: self.author,
            period_label: self.period,
            date: self.date,
            tokens: self.tokens,
            sentence_breaks: self.breaks,
        }
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<OpenDocument> {
    let (mut id, mut author, mut period, mut date) = (None, None, None, None);
    for field in line.split('\t').skip(1).filter(|f| !f.is_empty()) {
        let (key, value) = field.split_once('=').ok_or_else(|| {
            Error::parse(line_no, format!("header field `{field}` is not key=value"))
        })?;
        let slot = match key {
            "id" => &mut id,
            "author" => &mut author,
            "period" => &mut period,
            "date" => &mut date,
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown header key `{other}`"),
                ));
            }
        };
        if slot.replace(value.to_string()).is_some() {
            return Err(Error::parse(
                line_no,
                format!("duplicate header key `{key}`"),
            ));
        }
    }
    let require = |v: Option<String>, key: &str| {
        v.filter(|s| !s.is_empty())
            .ok_or_else(|| Error::parse(line_no, format!("header is missing required key `{key}`")))
    };
    let date = date
        .map(|d| {
            NaiveDate::parse_from_str(&d, "%Y-%m-%d")
                .map_err(|e| Error::parse(line_no, format!("bad date `{d}`: {e}")))
        })
        .transpose()?;
    Ok(OpenDocument {
        id: require(id, "id")?,
        author: require(author, "author")?,
        period: require(period, "period")?,
        date,
        tokens: Vec::new(),
        breaks: Vec::new(),
    })
}

/// Parses a tagged-TSV stream into documents, in input order.
pub fn parse_tagged(input: impl BufRead, aliases: Option<&AliasMap>) -> Result<ParsedCorpus> {
    let mut out = ParsedCorpus::default();
    let mut seen_ids = HashSet::new();
    let mut current: Option<OpenDocument> = None;
    let mut buf = Vec::new();
    let mut input = input;
    let mut line_no = 0;

    loop {
        buf.clear();
        if input.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let raw = std::str::from_utf8(&buf)
            .map_err(|e| Error::parse(line_no, format!("invalid UTF-8: {e}")))?;
        let line = raw.trim_end_matches('\n').trim_end_matches('\r');

        if line.starts_with("#doc") && (line.len() == 4 || line[4..].starts_with('\t')) {
            if let Some(doc) = current.take() {
                out.documents.push(doc.finish());
            }
            let doc = parse_header(line_no, line)?;
            if !seen_ids.insert(doc.id.clone()) {
                return Err(Error::parse(
                    line_no,
                    format!("duplicate document id `{}`", doc.id),
                ));
            }
            current = Some(doc);
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if let Some(doc) = current.as_mut() {
                doc.close_sentence();
            }
            continue;
        }

        let doc = current
            .as_mut()
            .ok_or_else(|| Error::parse(line_no, "token line before any #doc header"))?;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let (surface, lemma, tag) = (fields[0], fields[1], fields[2]);
        if surface.is_empty() || lemma.is_empty() {
            return Err(Error::parse(line_no, "empty surface or lemma"));
        }
        let pos = PosTag::parse_known(tag).unwrap_or_else(|| {
            out.warnings.push(ParseWarning {
                line: line_no,
                message: format!("unknown POS tag `{tag}` mapped to OTHER"),
            });
            PosTag::Other
        });
        let (surface, lemma) = match aliases {
            Some(map) => (map.apply(surface), map.apply(lemma)),
            None => (surface, lemma),
        };
        doc.tokens.push(Token::new(surface, lemma, pos));
    }
    if let Some(doc) = current.take() {
        out.documents.push(doc.finish());
    }
    Ok(out)
}

/// Writes documents back in tagged-TSV form. Fields must not contain tabs or
/// newlines.
pub fn write_tagged(docs: &[Document], mut out: impl Write) -> Result<()> {
    let check = |s: &str| {
        if s.contains(['\t', '\n', '\r']) {
            Err(Error::domain(format!(
                "field `{s}` contains a tab or newline"
            )))
        } else {
            Ok(())
        }
    };
    for doc in docs {
        for field in [&doc.id, &doc.author, &doc.period_label] {
            check(field)?;
        }
        write!(
            out,
            "#doc\tid={}\tauthor={}\tperiod={}",
            doc.id, doc.author, doc.period_label
        )?;
        if let Some(date) = doc.date {
            write!(out, "\tdate={}", date.format("%Y-%m-%d"))?;
        }
        writeln!(out)?;
        for sentence in doc.sentences() {
            for t in sentence {
                check(&t.surface)?;
                check(&t.lemma)?;
                writeln!(out, "{}\t{}\t{}", t.surface, t.lemma, t.pos)?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_document() {
        let src = "#doc\tid=m1\tauthor=Macron\tperiod=Macron\nJe\tje\tPRON\n\n";
        let parsed = parse_tagged(src.as_bytes(), None).unwrap();
        assert_eq!(parsed.documents.len(), 1);
        let doc = &parsed.documents[0];
        assert_eq!(doc.tokens, vec![Token::new("Je", "je", PosTag::Pron)]);
        assert_eq!(doc.sentence_breaks, vec![1]);
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn wrong_field_count_names_the_line() {
        let src = "#doc\tid=m1\tauthor=A\tperiod=P\nJe\tje\tPRON\nsuis\têtre\n";
        let err = parse_tagged(src.as_bytes(), None).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn token_before_header_is_an_error() {
        let err = parse_tagged("Je\tje\tPRON\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn header_requires_keys() {
        let err = parse_tagged("#doc\tid=x\tauthor=A\n".as_bytes(), None).unwrap_err();
        assert!(err.to_string().contains("period"));
        let err = parse_tagged(
            "#doc\tid=x\tauthor=A\tperiod=P\tdate=2017-13-01\n".as_bytes(),
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("bad date"));
    }

    #[test]
    fn unknown_tag_becomes_other_with_warning() {
        let src = "#doc\tid=a\tauthor=A\tperiod=P\nouf\touf\tINTJ\n";
        let parsed = parse_tagged(src.as_bytes(), None).unwrap();
        assert_eq!(parsed.documents[0].tokens[0].pos, PosTag::Other);
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].line, 2);
    }

    #[test]
    fn aliases_apply_to_surfaces() {
        let map = AliasMap::new([("Abou Dhabi", "Abu Dabi")]).unwrap();
        let src = "#doc\tid=a\tauthor=A\tperiod=P\nAbou Dhabi\tAbou Dhabi\tNAME\n";
        let parsed = parse_tagged(src.as_bytes(), Some(&map)).unwrap();
        assert_eq!(parsed.documents[0].tokens[0].surface, "Abu Dabi");
        assert_eq!(parsed.documents[0].tokens[0].lemma, "Abu Dabi");
    }

    #[test]
    fn comments_and_repeated_blank_lines() {
        let src = "# corpus\n#doc\tid=a\tauthor=A\tperiod=P\tdate=2018-01-02\n\n\nun\tun\tDET\n# note\n\n\ndeux\tdeux\tNUM\n";
        let parsed = parse_tagged(src.as_bytes(), None).unwrap();
        let doc = &parsed.documents[0];
        assert_eq!(doc.sentence_breaks, vec![1, 2]);
        assert_eq!(doc.date, NaiveDate::from_ymd_opt(2018, 1, 2));
        doc.validate().unwrap();
    }

    #[test]
    fn duplicate_ids_rejected() {
        let src = "#doc\tid=a\tauthor=A\tperiod=P\n#doc\tid=a\tauthor=A\tperiod=P\n";
        assert!(parse_tagged(src.as_bytes(), None).is_err());
    }

    fn arb_token() -> impl Strategy<Value = Token> {
        (
            "[A-Za-zé' ]{1,6}",
            "[a-zé]{1,6}",
            prop::sample::select(PosTag::ALL.to_vec()),
        )
            .prop_map(|(s, l, p)| Token::new(s, l, p))
    }

    fn arb_document(id: usize) -> impl Strategy<Value = Document> {
        (
            prop::collection::vec(prop::collection::vec(arb_token(), 1..5), 0..4),
            "[A-Z][a-z]{0,5}",
            prop::option::of(0i64..20_000),
        )
            .prop_map(move |(sentences, author, day)| {
                let mut tokens = Vec::new();
                let mut breaks = Vec::new();
                for s in sentences {
                    tokens.extend(s);
                    breaks.push(tokens.len());
                }
                let date = day.map(|d| {
                    NaiveDate::from_ymd_opt(1958, 1, 1).unwrap() + chrono::Days::new(d as u64)
                });
                Document::new(
                    format!("d{id}"),
                    author.clone(),
                    author,
                    date,
                    tokens,
                    breaks,
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(
            docs in (0usize..4).prop_flat_map(|n| {
                (0..n).map(arb_document).collect::<Vec<_>>()
            })
        ) {
            let mut buf = Vec::new();
            write_tagged(&docs, &mut buf).unwrap();
            let parsed = parse_tagged(buf.as_slice(), None).unwrap();
            prop_assert_eq!(parsed.documents, docs);
        }
    }
}
