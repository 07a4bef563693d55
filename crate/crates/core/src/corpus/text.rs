//! Plain-text tokenization and sentence segmentation.

use std::collections::BTreeSet;
use std::io::BufRead;

use super::{PosTag, Token};
use crate::error::Result;

/// Built-in abbreviations whose period never ends a sentence.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "M.", "MM.", "Mr.", "Mrs.", "Ms.", "Mme", "Dr.", "St.", "Sept.", "etc.", "U.S.",
];

pub const TERMINATORS: &[&str] = &[".", "!", "?", "…"];

/// Closing marks that stay attached to the sentence they follow.
const CLOSERS: &[&str] = &["\"", "'", "”", "’", "»", ")", "]"];
const STRAIGHT_QUOTES: &[&str] = &["\"", "'"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abbreviations {
    entries: BTreeSet<String>,
    // longest first, for greedy matching in the tokenizer
    by_length: Vec<String>,
}

impl Abbreviations {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let entries: BTreeSet<String> = entries
            .into_iter()
            .map(Into::into)
            .filter(|e: &String| !e.is_empty())
            .collect();
        let mut by_length: Vec<String> = entries.iter().cloned().collect();
        by_length.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Abbreviations { entries, by_length }
    }

    pub fn empty() -> Self {
        Abbreviations::new(Vec::<String>::new())
    }

    /// One abbreviation per line; blank lines and `#` comments are skipped.
    pub fn read(reader: impl BufRead) -> Result<Self> {
        let mut entries = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                entries.push(line.to_string());
            }
        }
        Ok(Abbreviations::new(entries))
    }

    pub fn contains(&self, s: &str) -> bool {
        self.entries.contains(s)
    }

    /// True when `word` (or `word.`) is listed.
    fn covers(&self, word: &str) -> bool {
        if self.entries.contains(word) {
            return true;
        }
        let mut dotted = String::with_capacity(word.len() + 1);
        dotted.push_str(word);
        dotted.push('.');
        self.entries.contains(&dotted)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

impl Default for Abbreviations {
    fn default() -> Self {
        Abbreviations::new(DEFAULT_ABBREVIATIONS.iter().copied())
    }
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '’' | '-' | '‐')
}

/// Splits text into word, number and punctuation tokens.
///
/// Words are maximal runs of letters, allowing an apostrophe or hyphen
/// between two letters; their lemma is the lowercased surface and their tag
/// OTHER. Digit runs, with any letters directly after them, become NUM, and
/// any other visible character is a PUNCT token of its own. An abbreviation
/// from `abbreviations` that starts at a token boundary is kept whole as a
/// single word token.
pub fn tokenize_with(text: &str, abbreviations: &Abbreviations) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }

        if c.is_alphabetic() {
            if let Some(abbr) = match_abbreviation(text, start, abbreviations) {
                tokens.push(Token::new(abbr, abbr.to_lowercase(), PosTag::Other));
                let end = start + abbr.len();
                while i < chars.len() && chars[i].0 < end {
                    i += 1;
                }
                continue;
            }
            let mut j = i + 1;
            while j < chars.len() {
                let c = chars[j].1;
                if c.is_alphabetic() {
                    j += 1;
                } else if is_joiner(c) && chars.get(j + 1).is_some_and(|n| n.1.is_alphabetic()) {
                    j += 2;
                } else {
                    break;
                }
            }
            let end = chars.get(j).map_or(text.len(), |c| c.0);
            let surface = &text[start..end];
            tokens.push(Token::new(surface, surface.to_lowercase(), PosTag::Other));
            i = j;
        } else if c.is_ascii_digit() || c.is_numeric() {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].1.is_ascii_digit() || chars[j].1.is_numeric()) {
                j += 1;
            }
            // Ordinal suffixes such as "11th" or "2e" stay attached.
            while j < chars.len() && chars[j].1.is_alphabetic() {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |c| c.0);
            let surface = &text[start..end];
            tokens.push(Token::new(surface, surface.to_lowercase(), PosTag::Num));
            i = j;
        } else {
            let end = chars.get(i + 1).map_or(text.len(), |c| c.0);
            let surface = &text[start..end];
            tokens.push(Token::new(surface, surface, PosTag::Punct));
            i += 1;
        }
    }
    tokens
}

/// [`tokenize_with`] using the built-in abbreviation list.
pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_with(text, &Abbreviations::default())
}

fn match_abbreviation<'a>(
    text: &str,
    start: usize,
    abbreviations: &'a Abbreviations,
) -> Option<&'a str> {
    let rest = &text[start..];
    abbreviations
        .by_length
        .iter()
        .map(String::as_str)
        .find(|abbr| {
            rest.starts_with(abbr)
                && !rest[abbr.len()..]
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_alphanumeric())
        })
}

/// Straight quotes are symmetric: one closes only while the sentence so far
/// holds an odd number of them.
fn is_closer(sentence: &[Token], token: &Token) -> bool {
    if token.pos != PosTag::Punct || !CLOSERS.contains(&token.surface.as_str()) {
        return false;
    }
    if STRAIGHT_QUOTES.contains(&token.surface.as_str()) {
        return sentence
            .iter()
            .filter(|t| t.surface == token.surface)
            .count()
            % 2
            == 1;
    }
    true
}

fn is_terminator(token: &Token) -> bool {
    token.pos == PosTag::Punct && TERMINATORS.contains(&token.surface.as_str())
}

/// Computes sentence breaks (index one past each sentence's last token).
///
/// A sentence ends after a terminator (`.`, `!`, `?`, `…`) unless the
/// closest preceding word token is an abbreviation. Runs of terminators
/// and any closing quotes or brackets right after them stay in the same
/// sentence. The last token always closes a sentence.
pub fn segment_sentences(tokens: &[Token], abbreviations: &Abbreviations) -> Vec<usize> {
    let mut breaks = Vec::new();
    let mut last_word: Option<&Token> = None;
    let mut i = 0;
    while i < tokens.len() {
        let token = &tokens[i];
        if !is_terminator(token) {
            if token.is_word() {
                last_word = Some(token);
            }
            i += 1;
            continue;
        }

        let after_abbreviation = i > 0
            && tokens[i - 1].is_word()
            && last_word.is_some_and(|w| abbreviations.covers(&w.surface));
        let mut end = i + 1;
        while end < tokens.len() && is_terminator(&tokens[end]) {
            end += 1;
        }
        if after_abbreviation && end == i + 1 {
            i = end;
            continue;
        }
        let start = breaks.last().copied().unwrap_or(0);
        while end < tokens.len() && is_closer(&tokens[start..end], &tokens[end]) {
            end += 1;
        }
        breaks.push(end);
        last_word = None;
        i = end;
    }
    if !tokens.is_empty() && breaks.last() != Some(&tokens.len()) {
        breaks.push(tokens.len());
    }
    breaks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    #[test]
    fn law_sentence_has_nine_words() {
        let tokens = tokenize("The law is harsh but it is the law");
        assert_eq!(tokens.len(), 9);
        assert!(tokens.iter().all(|t| t.is_word() && t.pos == PosTag::Other));
        assert_eq!(tokens[0].lemma, "the");
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
        assert!(segment_sentences(&[], &Abbreviations::default()).is_empty());
    }

    #[test]
    fn abbreviation_stays_whole() {
        let tokens = tokenize("the U.S. army");
        assert_eq!(surfaces(&tokens), vec!["the", "U.S.", "army"]);
        let plain = tokenize_with("the U.S. army", &Abbreviations::empty());
        assert_eq!(surfaces(&plain), vec!["the", "U", ".", "S", ".", "army"]);
    }

    #[test]
    fn apostrophes_hyphens_digits_and_punctuation() {
        let tokens = tokenize("L'État-providence, 42 ans!");
        assert_eq!(
            surfaces(&tokens),
            vec!["L'État-providence", ",", "42", "ans", "!"]
        );
        assert_eq!(tokens[1].pos, PosTag::Punct);
        assert_eq!(tokens[2].pos, PosTag::Num);
        // trailing hyphen is not internal
        assert_eq!(surfaces(&tokenize("anti- x")), vec!["anti", "-", "x"]);
    }

    #[test]
    fn mr_president_does_not_break() {
        let abbr = Abbreviations::new(["Mr."]);
        let tokens = tokenize_with("Mr. President spoke. He left.", &abbr);
        assert_eq!(segment_sentences(&tokens, &abbr).len(), 2);
        // same text tagged upstream with a detached period
        let detached = vec![
            Token::new("Mr", "mr", PosTag::Name),
            Token::new(".", ".", PosTag::Punct),
            Token::new("President", "president", PosTag::Noun),
            Token::new("spoke", "speak", PosTag::Verb),
            Token::new(".", ".", PosTag::Punct),
        ];
        assert_eq!(segment_sentences(&detached, &abbr), vec![5]);
    }

    #[test]
    fn forced_final_break() {
        let tokens = tokenize("bonjour");
        assert_eq!(
            segment_sentences(&tokens, &Abbreviations::default()),
            vec![1]
        );
    }

    #[test]
    fn initials_without_lexicon_break_three_times() {
        let abbr = Abbreviations::empty();
        let tokens = tokenize_with("A. B. C.", &abbr);
        assert_eq!(segment_sentences(&tokens, &abbr), vec![2, 4, 6]);
    }

    #[test]
    fn ellipsis_runs_and_closing_quotes() {
        let abbr = Abbreviations::default();
        let tokens = tokenize_with("Wait... \"Really?!\" Yes.", &abbr);
        let breaks = segment_sentences(&tokens, &abbr);
        // Wait . . . | " Really ? ! " | Yes .
        assert_eq!(breaks, vec![4, 9, 11]);
    }

    #[test]
    fn colons_and_semicolons_do_not_break() {
        let abbr = Abbreviations::default();
        let tokens = tokenize_with("one: two; three.", &abbr);
        assert_eq!(segment_sentences(&tokens, &abbr), vec![tokens.len()]);
    }
}
