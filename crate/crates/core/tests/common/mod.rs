//! Fixtures shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhetorica::corpus::{Document, FrequencyIndex, PosTag, Token};

/// Counts from the worked France example: whole corpus and one presidency.
pub const FRANCE_POPULATION: u64 = 18_413_088;
pub const FRANCE_SAMPLE: u64 = 1_038_899;
pub const FRANCE_TF0: u64 = 75_493;
pub const FRANCE_TF1: u64 = 2_897;

/// Two-term indexes carrying the France counts; every other token is one
/// filler noun, so the single-urn population is the whole corpus.
pub fn france_indexes() -> (FrequencyIndex, FrequencyIndex) {
    let make = |label: &str, n: u64, tf: u64| {
        FrequencyIndex::from_counts(
            label,
            [(PosTag::Name, tf), (PosTag::Noun, n - tf)],
            [
                (("France".to_string(), PosTag::Name), tf),
                (("filler".to_string(), PosTag::Noun), n - tf),
            ],
        )
        .unwrap()
    };
    (
        make("macron", FRANCE_SAMPLE, FRANCE_TF1),
        make("corpus", FRANCE_POPULATION, FRANCE_TF0),
    )
}

/// The hand-tagged sentence "The law is harsh but it is the law".
pub fn law_document() -> Document {
    use PosTag::*;
    let tagged = [
        ("The", "the", Det),
        ("law", "law", Noun),
        ("is", "be", Aux),
        ("harsh", "harsh", Adj),
        ("but", "but", Conj),
        ("it", "it", Pron),
        ("is", "be", Aux),
        ("the", "the", Det),
        ("law", "law", Noun),
    ];
    let tokens = tagged
        .iter()
        .map(|&(s, l, p)| Token::new(s, l, p))
        .collect();
    Document::new("law", "anon", "p1", None, tokens, vec![9]).unwrap()
}

/// One planted lemma with its counts in the sample and in the rest.
#[derive(Clone, Debug)]
pub struct Plant {
    pub lemma: String,
    pub pos: PosTag,
    pub sample: u64,
    pub others: u64,
}

impl Plant {
    /// Sample rate over the rest's rate (the sample is a quarter of the corpus).
    pub fn ratio(&self) -> f64 {
        self.sample as f64 / (self.others as f64 / 3.0)
    }
}

pub struct PlantedCorpus {
    pub documents: Vec<Document>,
    pub overused: Vec<Plant>,
    pub underused: Vec<Plant>,
    pub controls: Vec<Plant>,
    pub fillers: Vec<Plant>,
}

impl PlantedCorpus {
    pub fn sample_ids(&self) -> Vec<String> {
        self.documents
            .iter()
            .filter(|d| d.author == "sample")
            .map(|d| d.id.clone())
            .collect()
    }
}

/// (rate multiplier of the overused lemma, rate multiplier of the underused
/// lemma, shared tag). Each pair moves as many tokens into the sample urn as
/// it removes, so every urn keeps a 1:3 sample/rest split.
const PAIRS: [(u64, f64, PosTag); 5] = [
    (10, 0.10, PosTag::Noun),
    (7, 0.13, PosTag::Verb),
    (6, 0.15, PosTag::Adj),
    (8, 0.16, PosTag::Noun),
    (5, 0.20, PosTag::Verb),
];

/// Deterministic corpus of 100,000 word tokens: a 25,000-token sample and a
/// 75,000-token rest, with five lemmas planted at 5-10x the rest's rate,
/// five at 0.10-0.20x, fifty controls of count >= 200 split exactly 1:3, and
/// fifteen fillers split 1:3. Tokens are shuffled with a seeded RNG.
pub fn planted_corpus(seed: u64) -> PlantedCorpus {
    let mut overused = Vec::new();
    let mut underused = Vec::new();
    for (i, &(k, f, pos)) in PAIRS.iter().enumerate() {
        let under_others = 3000u64;
        let under_sample = (f * 1000.0).round() as u64;
        let over_others = ((1.0 - f) * 3000.0 / (k - 1) as f64).round() as u64;
        let over_sample = k * over_others / 3;
        assert_eq!((k - 1) * over_others, 3 * (1000 - under_sample));
        overused.push(Plant {
            lemma: format!("over{i}"),
            pos,
            sample: over_sample,
            others: over_others,
        });
        underused.push(Plant {
            lemma: format!("under{i}"),
            pos,
            sample: under_sample,
            others: under_others,
        });
    }
    let controls: Vec<Plant> = (0..50u64)
        .map(|i| {
            let total = 200 + 40 * i;
            Plant {
                lemma: format!("control{i}"),
                pos: PosTag::URNS[i as usize % 9],
                sample: total / 4,
                others: total * 3 / 4,
            }
        })
        .collect();

    let planted_total: u64 = overused
        .iter()
        .chain(&underused)
        .chain(&controls)
        .map(|p| p.sample + p.others)
        .sum();
    let remaining = 100_000 - planted_total;
    assert_eq!(remaining % 60, 0, "fillers split evenly 1:3");
    let per_filler = remaining / 15;
    let fillers: Vec<Plant> = (0..15)
        .map(|i| Plant {
            lemma: format!("filler{i}"),
            pos: PosTag::URNS[(i + 3) % 9],
            sample: per_filler / 4,
            others: per_filler * 3 / 4,
        })
        .collect();

    let all: Vec<&Plant> = overused
        .iter()
        .chain(&underused)
        .chain(&controls)
        .chain(&fillers)
        .collect();
    let mut sample_tokens = Vec::new();
    let mut other_tokens = Vec::new();
    for p in &all {
        for _ in 0..p.sample {
            sample_tokens.push(Token::new(p.lemma.clone(), p.lemma.clone(), p.pos));
        }
        for _ in 0..p.others {
            other_tokens.push(Token::new(p.lemma.clone(), p.lemma.clone(), p.pos));
        }
    }
    assert_eq!(sample_tokens.len(), 25_000);
    assert_eq!(other_tokens.len(), 75_000);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_tokens.shuffle(&mut rng);
    other_tokens.shuffle(&mut rng);
    let mut documents = split_documents("s", "sample", sample_tokens, 5_000, &mut rng);
    documents.extend(split_documents("r", "rest", other_tokens, 5_000, &mut rng));

    PlantedCorpus {
        documents,
        overused,
        underused,
        controls,
        fillers,
    }
}

/// Cuts a token stream into documents of `size` tokens with sentences of
/// 5 to 40 tokens.
pub fn split_documents(
    prefix: &str,
    author: &str,
    tokens: Vec<Token>,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Document> {
    tokens
        .chunks(size)
        .enumerate()
        .map(|(i, chunk)| {
            let mut breaks = Vec::new();
            let mut at = 0;
            while at < chunk.len() {
                at = (at + rng.gen_range(5..=40)).min(chunk.len());
                breaks.push(at);
            }
            Document::new(
                format!("{prefix}{i:04}"),
                author,
                author,
                None,
                chunk.to_vec(),
                breaks,
            )
            .unwrap()
        })
        .collect()
}

const SYLLABLES: [&str; 12] = [
    "ba", "ri", "to", "mel", "que", "dan", "sor", "lie", "pa", "vin", "cre", "tu",
];

/// A pseudo-word built from the digits of `i` in base 12.
pub fn pseudo_word(mut i: usize) -> String {
    let mut w = String::new();
    loop {
        w.push_str(SYLLABLES[i % 12]);
        i /= 12;
        if i == 0 {
            break;
        }
    }
    w
}

/// Seeded random corpus with a Zipf-like vocabulary: `documents` documents
/// of `doc_len` tokens each (word tokens plus occasional punctuation),
/// alternating between `periods` periods.
pub fn random_corpus(
    seed: u64,
    documents: usize,
    doc_len: usize,
    vocab: usize,
    periods: usize,
) -> Vec<Document> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Cumulative Zipf weights 1/(r+1).
    let mut cumulative = Vec::with_capacity(vocab);
    let mut total = 0.0;
    for r in 0..vocab {
        total += 1.0 / (r + 1) as f64;
        cumulative.push(total);
    }
    let tags: Vec<PosTag> = (0..vocab)
        .map(|r| PosTag::WORD_TAGS[(r * 7 + r / 13) % PosTag::WORD_TAGS.len()])
        .collect();
    (0..documents)
        .map(|d| {
            let mut tokens = Vec::with_capacity(doc_len);
            let mut breaks = Vec::new();
            let mut sentence = 0;
            let mut target = rng.gen_range(3..=35);
            while tokens.len() < doc_len {
                if sentence == target {
                    tokens.push(Token::new(".", ".", PosTag::Punct));
                    breaks.push(tokens.len());
                    sentence = 0;
                    target = rng.gen_range(3..=35);
                    continue;
                }
                let u = rng.gen::<f64>() * total;
                let r = cumulative.partition_point(|&c| c < u).min(vocab - 1);
                let lemma = pseudo_word(r);
                let surface = if rng.gen_bool(0.1) {
                    format!("{lemma}s")
                } else {
                    lemma.clone()
                };
                tokens.push(Token::new(surface, lemma, tags[r]));
                sentence += 1;
            }
            if breaks.last() != Some(&tokens.len()) {
                breaks.push(tokens.len());
            }
            let period = format!("p{}", d % periods.max(1));
            Document::new(
                format!("d{d:05}"),
                format!("author{}", d % 3),
                period,
                None,
                tokens,
                breaks,
            )
            .unwrap()
        })
        .collect()
}
