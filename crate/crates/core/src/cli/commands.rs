use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::{CliError, Command, RunConfig};
use crate::charvocab::{characteristic_vocabulary, name_frequency_table, top_overused_lemmas};
use crate::corpus::{
    build_index, parse_tagged, Abbreviations, AliasMap, Document, FrequencyIndex, Partition,
    PartitionSelector, PosTag, INDEX_MAGIC,
};
use crate::metrics::{metrics_report, pronoun_profile, IndexMetrics, DEFAULT_WATCH_LIST};
use crate::output;

type CliResult<T> = Result<T, CliError>;

fn path_context(path: &Path) -> String {
    path.display().to_string()
}

fn warn(stderr: &mut dyn Write, kind: &str, message: &str) {
    let _ = writeln!(stderr, "warning\t{kind}\t{message}");
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::data(path_context(path), e.into()))
}

fn load_aliases(config: &RunConfig) -> CliResult<Option<AliasMap>> {
    config
        .aliases
        .as_deref()
        .map(|path| AliasMap::read(open(path)?).map_err(|e| CliError::data(path_context(path), e)))
        .transpose()
}

/// The abbreviation list is only consulted when segmenting raw text; tagged
/// corpora carry their own sentence breaks, but a bad path is still reported.
fn check_abbreviations(config: &RunConfig) -> CliResult<()> {
    if let Some(path) = config.abbrev.as_deref() {
        Abbreviations::read(open(path)?).map_err(|e| CliError::data(path_context(path), e))?;
    }
    Ok(())
}

fn read_corpora(
    paths: &[PathBuf],
    config: &RunConfig,
    stderr: &mut dyn Write,
) -> CliResult<Vec<Document>> {
    check_abbreviations(config)?;
    let aliases = load_aliases(config)?;
    let mut documents: Vec<Document> = Vec::new();
    let mut seen = BTreeSet::new();
    for path in paths {
        let parsed = parse_tagged(open(path)?, aliases.as_ref())
            .map_err(|e| CliError::data(path_context(path), e))?;
        for w in &parsed.warnings {
            warn(stderr, "parse", &format!("{}: {w}", path.display()));
        }
        for doc in parsed.documents {
            if !seen.insert(doc.id.clone()) {
                return Err(CliError::data(
                    path_context(path),
                    crate::Error::Domain(format!("duplicate document id `{}`", doc.id)),
                ));
            }
            documents.push(doc);
        }
    }
    Ok(documents)
}

fn load_index(path: &Path) -> CliResult<FrequencyIndex> {
    FrequencyIndex::load(path).map_err(|e| CliError::data(path_context(path), e))
}

fn is_index_file(path: &Path) -> CliResult<bool> {
    let mut first = String::new();
    open(path)?
        .read_line(&mut first)
        .map_err(|e| CliError::data(path_context(path), e.into()))?;
    Ok(first.starts_with(INDEX_MAGIC))
}

/// One selector per distinct period, in sorted order.
fn default_selectors(docs: &[Document]) -> Vec<PartitionSelector> {
    let periods: BTreeSet<&str> = docs.iter().map(|d| d.period_label.as_str()).collect();
    periods
        .into_iter()
        .map(|p| PartitionSelector {
            label: p.to_string(),
            period: Some(p.to_string()),
            ..Default::default()
        })
        .collect()
}

/// Builds the partitions, rejecting duplicate labels and overlaps and
/// warning about (and dropping) partitions that select nothing.
fn partitions(
    selectors: &[PartitionSelector],
    docs: &[Document],
    stderr: &mut dyn Write,
) -> CliResult<Vec<Partition>> {
    let selectors = if selectors.is_empty() {
        default_selectors(docs)
    } else {
        selectors.to_vec()
    };
    let mut labels = BTreeSet::new();
    for s in &selectors {
        if !labels.insert(s.label.as_str()) {
            return Err(CliError::Usage(format!(
                "partition label `{}` given twice",
                s.label
            )));
        }
    }
    let mut out: Vec<Partition> = Vec::new();
    for s in &selectors {
        let p = Partition::select(s, docs);
        if p.document_ids.is_empty() {
            warn(
                stderr,
                "empty-partition",
                &format!("partition `{}` selects no documents", s.label),
            );
            continue;
        }
        if let Some(other) = out.iter().find(|o| !o.is_disjoint(&p)) {
            return Err(CliError::data(
                "partitions",
                crate::Error::domain(format!(
                    "partitions `{}` and `{}` overlap",
                    other.label, p.label
                )),
            ));
        }
        out.push(p);
    }
    Ok(out)
}

fn file_stem(label: &str) -> String {
    let stem: String = label
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect();
    stem.trim_start_matches('.').to_string()
}

fn ingest(
    corpus: &[PathBuf],
    out: &Path,
    selectors: &[PartitionSelector],
    config: &RunConfig,
    stderr: &mut dyn Write,
) -> CliResult<String> {
    let docs = read_corpora(corpus, config, stderr)?;
    if docs.is_empty() {
        return Err(CliError::data(
            "corpus",
            crate::Error::undefined("no documents"),
        ));
    }
    let parts = partitions(selectors, &docs, stderr)?;

    let mut stems = BTreeSet::from(["corpus".to_string()]);
    let mut files = Vec::new();
    for p in &parts {
        let stem = file_stem(&p.label);
        if stem.is_empty() || !stems.insert(stem.clone()) {
            return Err(CliError::Usage(format!(
                "partition label `{}` does not give a unique file name",
                p.label
            )));
        }
        files.push(format!("{stem}.index"));
    }

    fs::create_dir_all(out).map_err(|e| CliError::data(path_context(out), e.into()))?;
    let mut manifest = String::from("partition\tfile\tdocuments\ttokens\ttypes\n");
    let whole = Partition::all("corpus", &docs);
    let entries = parts
        .iter()
        .zip(files)
        .chain(std::iter::once((&whole, "corpus.index".to_string())));
    for (p, file) in entries {
        let index = build_index(&docs, p).map_err(|e| CliError::data(p.label.clone(), e))?;
        let path = out.join(&file);
        index
            .save(&path)
            .map_err(|e| CliError::data(path_context(&path), e))?;
        manifest.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            p.label,
            file,
            p.document_ids.len(),
            index.n(),
            index.types()
        ));
    }
    let manifest_path = out.join("manifest.tsv");
    fs::write(&manifest_path, &manifest)
        .map_err(|e| CliError::data(path_context(&manifest_path), e.into()))?;
    Ok(manifest)
}

fn metrics(
    inputs: &[PathBuf],
    selectors: &[PartitionSelector],
    config: &RunConfig,
    stderr: &mut dyn Write,
) -> CliResult<String> {
    let kinds = inputs
        .iter()
        .map(|p| is_index_file(p))
        .collect::<CliResult<Vec<bool>>>()?;
    if kinds.iter().all(|&k| k) {
        if !selectors.is_empty() {
            return Err(CliError::Usage(
                "--partition applies to corpus input, not index files".into(),
            ));
        }
        let mut rows = inputs
            .iter()
            .map(|p| {
                let index = load_index(p)?;
                IndexMetrics::from_index(&index).map_err(|e| CliError::data(path_context(p), e))
            })
            .collect::<CliResult<Vec<_>>>()?;
        rows.sort_by(|a, b| a.label.cmp(&b.label));
        return Ok(output::render_index_metrics(&rows, config.format));
    }
    if kinds.iter().any(|&k| k) {
        return Err(CliError::Usage(
            "inputs mix index files and corpus files".into(),
        ));
    }

    let docs = read_corpora(inputs, config, stderr)?;
    let parts = partitions(selectors, &docs, stderr)?;
    let options = config.metrics_options();
    let mut reports = Vec::with_capacity(parts.len());
    for p in &parts {
        let index = build_index(&docs, p).map_err(|e| CliError::data(p.label.clone(), e))?;
        let selected: Vec<Document> = docs
            .iter()
            .filter(|d| p.document_ids.contains(&d.id))
            .cloned()
            .collect();
        let report = metrics_report(&selected, &index, &options)
            .map_err(|e| CliError::data(p.label.clone(), e))?;
        if report.sub_window() {
            warn(
                stderr,
                "sub-window",
                &format!(
                    "partition `{}` has {} tokens, fewer than the {}-token window; TTR is over the whole partition",
                    p.label, report.counts.tokens, report.window_size
                ),
            );
        }
        reports.push(report);
    }
    reports.sort_by(|a, b| a.counts.label.cmp(&b.counts.label));
    Ok(output::render_reports(&reports, config.format))
}

fn watch_list(watch: &Option<Vec<String>>) -> Vec<&str> {
    match watch {
        Some(list) => list.iter().map(String::as_str).collect(),
        None => DEFAULT_WATCH_LIST.to_vec(),
    }
}

pub(super) fn execute(
    command: &Command,
    config: &RunConfig,
    stderr: &mut dyn Write,
) -> CliResult<String> {
    let keyness = config.keyness();
    match command {
        Command::Ingest {
            corpus,
            out,
            partitions,
            ..
        } => ingest(corpus, out, partitions, config, stderr),
        Command::Metrics {
            inputs, partitions, ..
        } => metrics(inputs, partitions, config, stderr),
        Command::Charvocab {
            sample,
            reference_index,
            pos,
            top,
            names,
            ..
        } => {
            let s = load_index(sample)?;
            let r = load_index(reference_index)?;
            if let Some(limit) = names {
                let rows = name_frequency_table(&s, &r, *limit, config.reference)
                    .map_err(|e| CliError::data(path_context(sample), e))?;
                return Ok(output::render_keyness_rows(&rows, config.format));
            }
            let tests = match top {
                Some(limit) => {
                    let tags = pos.clone().unwrap_or_else(|| PosTag::ALL.to_vec());
                    top_overused_lemmas(&s, &r, &keyness, &tags, *limit)
                }
                None => characteristic_vocabulary(&s, &r, &keyness, pos.as_deref()),
            }
            .map_err(|e| CliError::data(path_context(sample), e))?;
            Ok(output::render_term_tests(&tests, config.format))
        }
        Command::Pronouns {
            sample,
            reference_index,
            watch,
            ..
        } => {
            let s = load_index(sample)?;
            let r = load_index(reference_index)?;
            let profile = pronoun_profile(&s, &r, &watch_list(watch), &keyness)
                .map_err(|e| CliError::data(path_context(sample), e))?;
            Ok(output::render_pronoun_profile(&profile, config.format))
        }
        Command::TopLemmas {
            sample,
            reference_index,
            top,
            pos,
            ..
        } => {
            let s = load_index(sample)?;
            let r = load_index(reference_index)?;
            let tests = top_overused_lemmas(&s, &r, &keyness, pos, *top)
                .map_err(|e| CliError::data(path_context(sample), e))?;
            Ok(output::render_term_tests(&tests, config.format))
        }
        Command::Compare {
            indexes,
            against,
            watch,
            ..
        } => {
            if indexes.len() < 2 {
                return Err(CliError::Usage(
                    "compare needs at least two index files".into(),
                ));
            }
            let loaded = indexes
                .iter()
                .map(|p| load_index(p))
                .collect::<CliResult<Vec<_>>>()?;
            let reference = match against {
                Some(path) => load_index(path)?,
                None => {
                    let mut pooled = FrequencyIndex::empty("pooled");
                    for index in &loaded {
                        pooled.merge(index);
                    }
                    pooled
                }
            };
            let watch = watch_list(watch);
            let rows = loaded
                .iter()
                .zip(indexes)
                .map(|(index, path)| {
                    let ctx = |e| CliError::data(path_context(path), e);
                    let m = IndexMetrics::from_index(index).map_err(ctx)?;
                    let profile =
                        pronoun_profile(index, &reference, &watch, &keyness).map_err(ctx)?;
                    Ok((m, profile))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(output::render_comparison(&rows, config.format))
        }
    }
}
