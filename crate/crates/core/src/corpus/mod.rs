//! Tagged corpora: parsing, tokenization, partitioning and frequency indexes.

mod alias;
mod document;
mod index;
mod pos;
mod tagged;
mod text;

pub use alias::AliasMap;
pub use document::{Document, Partition, PartitionSelector, Token};
pub use index::{build_index, FrequencyIndex, TermKey, INDEX_MAGIC, INDEX_VERSION};
pub use pos::PosTag;
pub use tagged::{parse_tagged, write_tagged, ParseWarning, ParsedCorpus};
pub use text::{
    segment_sentences, tokenize, tokenize_with, Abbreviations, DEFAULT_ABBREVIATIONS, TERMINATORS,
};

/// Builds a document from plain text: tokenized, segmented, untagged.
pub fn document_from_text(
    id: impl Into<String>,
    author: impl Into<String>,
    period_label: impl Into<String>,
    text: &str,
    abbreviations: &Abbreviations,
) -> Document {
    let tokens = tokenize_with(text, abbreviations);
    let sentence_breaks = segment_sentences(&tokens, abbreviations);
    Document {
        id: id.into(),
        author: author.into(),
        period_label: period_label.into(),
        date: None,
        tokens,
        sentence_breaks,
    }
}
