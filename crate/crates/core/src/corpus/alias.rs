use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Spelling-variant normalization (`Abou Dhabi` -> `Abu Dabi`).
///
/// Chains are resolved on construction, so every stored target is a fixed
/// point and applying the map twice equals applying it once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AliasMap {
    canonical: HashMap<String, String>,
}

impl AliasMap {
    pub fn new<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut raw: HashMap<String, String> = HashMap::new();
        for (variant, canonical) in pairs {
            let (variant, canonical) = (variant.into(), canonical.into());
            if variant.is_empty() || canonical.is_empty() {
                return Err(Error::Alias("empty variant or canonical form".into()));
            }
            if variant == canonical {
                continue;
            }
            if let Some(prev) = raw.get(&variant) {
                if *prev != canonical {
                    return Err(Error::Alias(format!(
                        "`{variant}` maps to both `{prev}` and `{canonical}`"
                    )));
                }
            }
            raw.insert(variant, canonical);
        }

        let mut canonical = HashMap::with_capacity(raw.len());
        for variant in raw.keys() {
            let mut target = &raw[variant];
            let mut steps = 0;
            while let Some(next) = raw.get(target) {
                target = next;
                steps += 1;
                if steps > raw.len() {
                    return Err(Error::Alias(format!("cycle through `{variant}`")));
                }
            }
            canonical.insert(variant.clone(), target.clone());
        }
        Ok(AliasMap { canonical })
    }

    /// Reads `variant<TAB>canonical` lines; blank lines and `#` comments are skipped.
    pub fn read(reader: impl BufRead) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    i + 1,
                    format!(
                        "alias line needs 2 tab-separated fields, found {}",
                        fields.len()
                    ),
                ));
            }
            pairs.push((fields[0].to_string(), fields[1].to_string()));
        }
        AliasMap::new(pairs)
    }

    pub fn apply<'a>(&'a self, form: &'a str) -> &'a str {
        self.canonical.get(form).map_or(form, String::as_str)
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }
}
