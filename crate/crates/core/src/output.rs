//! TSV and JSON renderings of reports.
//!
//! Ratios carry 4 decimals, lengths 2, probabilities 6, per-mille values 2.
//! JSON output is one object per line.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::charvocab::{KeynessRow, TermTest};
use crate::metrics::{IndexMetrics, MetricsReport, PronounProfile};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (tsv|json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Tsv => "tsv",
            OutputFormat::Json => "json",
        })
    }
}

fn round(x: f64, decimals: i32) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let scale = 10f64.powi(decimals);
    json!((x * scale).round() / scale)
}

fn fixed(x: f64, decimals: usize) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.decimals$}")
}

fn quantile_name(q: f64) -> String {
    format!("msl_q{q:.2}")
}

/// One `(name, value, unit)` triple per metric, in a fixed order.
fn index_metric_lines(m: &IndexMetrics) -> Vec<(String, String, &'static str)> {
    vec![
        ("tokens".into(), m.tokens.to_string(), "tokens"),
        ("types".into(), m.types.to_string(), "types"),
        ("ld".into(), fixed(m.ld, 4), "ratio"),
        ("hapax_density".into(), fixed(m.hapax_density, 4), "ratio"),
    ]
}

fn report_metric_lines(r: &MetricsReport) -> Vec<(String, String, &'static str)> {
    let mut lines = vec![
        ("documents".into(), r.documents.to_string(), "documents"),
        ("sentences".into(), r.sentences.to_string(), "sentences"),
    ];
    lines.extend(index_metric_lines(&r.counts));
    lines.extend([
        ("ttr".into(), fixed(r.ttr, 4), "ratio"),
        ("bw".into(), fixed(r.bw, 4), "ratio"),
        (
            "mean_word_length".into(),
            fixed(r.mean_word_length, 2),
            "letters",
        ),
        ("msl_mean".into(), fixed(r.msl_mean, 2), "tokens"),
        ("msl_median".into(), fixed(r.msl_median as f64, 2), "tokens"),
    ]);
    for &(q, len) in &r.msl_quantiles {
        lines.push((quantile_name(q), fixed(len as f64, 2), "tokens"));
    }
    lines.extend([
        ("window_size".into(), r.window_size.to_string(), "tokens"),
        ("windows_used".into(), r.windows_used.to_string(), "windows"),
        (
            "sub_window".into(),
            u8::from(r.sub_window()).to_string(),
            "flag",
        ),
        ("bw_threshold".into(), r.bw_threshold.to_string(), "letters"),
        ("ttr_basis".into(), r.ttr_basis.to_string(), "basis"),
    ]);
    lines
}

pub fn index_metrics_json(m: &IndexMetrics) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("partition".into(), json!(m.label));
    obj.insert("tokens".into(), json!(m.tokens));
    obj.insert("types".into(), json!(m.types));
    obj.insert("ld".into(), round(m.ld, 4));
    obj.insert("hapax_density".into(), round(m.hapax_density, 4));
    obj
}

fn report_json(r: &MetricsReport) -> Value {
    let mut obj = index_metrics_json(&r.counts);
    obj.insert("documents".into(), json!(r.documents));
    obj.insert("sentences".into(), json!(r.sentences));
    obj.insert("ttr".into(), round(r.ttr, 4));
    obj.insert("bw".into(), round(r.bw, 4));
    obj.insert("mean_word_length".into(), round(r.mean_word_length, 2));
    obj.insert("msl_mean".into(), round(r.msl_mean, 2));
    obj.insert("msl_median".into(), json!(r.msl_median));
    let quantiles: Map<String, Value> = r
        .msl_quantiles
        .iter()
        .map(|&(q, len)| (format!("{q:.2}"), json!(len)))
        .collect();
    obj.insert("msl_quantiles".into(), Value::Object(quantiles));
    obj.insert("window_size".into(), json!(r.window_size));
    obj.insert("windows_used".into(), json!(r.windows_used));
    obj.insert("sub_window".into(), json!(r.sub_window()));
    obj.insert("bw_threshold".into(), json!(r.bw_threshold));
    obj.insert("ttr_basis".into(), json!(r.ttr_basis.to_string()));
    Value::Object(obj)
}

fn metric_rows(label: &str, lines: Vec<(String, String, &'static str)>, out: &mut String) {
    for (name, value, unit) in lines {
        out.push_str(&format!("{label}\t{name}\t{value}\t{unit}\n"));
    }
}

const METRICS_HEADER: &str = "partition\tmetric\tvalue\tunit\n";

pub fn render_reports(reports: &[MetricsReport], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            out.push_str(METRICS_HEADER);
            for r in reports {
                metric_rows(&r.counts.label, report_metric_lines(r), &mut out);
            }
        }
        OutputFormat::Json => {
            for r in reports {
                out.push_str(&report_json(r).to_string());
                out.push('\n');
            }
        }
    }
    out
}

pub fn render_index_metrics(metrics: &[IndexMetrics], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            out.push_str(METRICS_HEADER);
            for m in metrics {
                metric_rows(&m.label, index_metric_lines(m), &mut out);
            }
        }
        OutputFormat::Json => {
            for m in metrics {
                out.push_str(&Value::Object(index_metrics_json(m)).to_string());
                out.push('\n');
            }
        }
    }
    out
}

fn term_test_json(t: &TermTest) -> Value {
    json!({
        "lemma": t.lemma,
        "pos": t.pos.as_str(),
        "tf1": t.tf1,
        "expected": round(t.expected, 2),
        "lower": t.lower,
        "upper": t.upper,
        "cdf": round(t.cdf, 6),
        "class": t.class.as_str(),
    })
}

pub fn render_term_tests(tests: &[TermTest], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            out.push_str("lemma\tpos\ttf1\texpected\tlower\tupper\tcdf\tclass\n");
            for t in tests {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    t.lemma,
                    t.pos,
                    t.tf1,
                    fixed(t.expected, 2),
                    t.lower,
                    t.upper,
                    fixed(t.cdf, 6),
                    t.class
                ));
            }
        }
        OutputFormat::Json => {
            for t in tests {
                out.push_str(&term_test_json(t).to_string());
                out.push('\n');
            }
        }
    }
    out
}

pub fn render_keyness_rows(rows: &[KeynessRow], format: OutputFormat) -> String {
    let mut out = String::new();
    let opt_rank = |r: Option<usize>| r.map_or_else(|| "-".to_string(), |r| r.to_string());
    match format {
        OutputFormat::Tsv => {
            out.push_str("rank_sample\trank_reference\tlemma\tfrequency_permille\treference_permille\tdifference_pct\n");
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.rank_sample,
                    opt_rank(r.rank_reference),
                    r.lemma,
                    fixed(r.relfreq_sample, 2),
                    fixed(r.relfreq_reference, 2),
                    r.difference_pct
                        .map_or_else(|| "-".to_string(), |d| fixed(d, 1)),
                ));
            }
        }
        OutputFormat::Json => {
            for r in rows {
                let v = json!({
                    "rank_sample": r.rank_sample,
                    "rank_reference": r.rank_reference,
                    "lemma": r.lemma,
                    "frequency_permille": round(r.relfreq_sample, 2),
                    "reference_permille": round(r.relfreq_reference, 2),
                    "difference_pct": r.difference_pct.map(|d| round(d, 1)),
                });
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    out
}

pub fn render_pronoun_profile(profile: &PronounProfile, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            out.push_str("partition\tlemma\tpercent\ttf1\texpected\tlower\tupper\tclass\n");
            for s in &profile.shares {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    profile.label,
                    s.lemma,
                    fixed(s.percent, 2),
                    s.test.tf1,
                    fixed(s.test.expected, 2),
                    s.test.lower,
                    s.test.upper,
                    s.test.class
                ));
            }
        }
        OutputFormat::Json => {
            for s in &profile.shares {
                let mut v = term_test_json(&s.test);
                v["partition"] = json!(profile.label);
                v["percent"] = round(s.percent, 2);
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    out
}

/// Side-by-side comparison: count metrics plus each watched pronoun's
/// share and class, one row per partition.
pub fn render_comparison(rows: &[(IndexMetrics, PronounProfile)], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            let mut header = vec![
                "partition".to_string(),
                "tokens".into(),
                "types".into(),
                "ld".into(),
                "hapax_density".into(),
            ];
            if let Some((_, profile)) = rows.first() {
                for s in &profile.shares {
                    header.push(format!("{}_pct", s.lemma));
                    header.push(format!("{}_flag", s.lemma));
                }
            }
            out.push_str(&header.join("\t"));
            out.push('\n');
            for (m, profile) in rows {
                let mut cells = vec![
                    m.label.clone(),
                    m.tokens.to_string(),
                    m.types.to_string(),
                    fixed(m.ld, 4),
                    fixed(m.hapax_density, 4),
                ];
                for s in &profile.shares {
                    cells.push(fixed(s.percent, 2));
                    cells.push(s.test.class.to_string());
                }
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            for (m, profile) in rows {
                let mut obj = index_metrics_json(m);
                let pronouns: Vec<Value> = profile
                    .shares
                    .iter()
                    .map(|s| json!({"lemma": s.lemma, "percent": round(s.percent, 2), "class": s.test.class.as_str()}))
                    .collect();
                obj.insert("pronouns".into(), Value::Array(pronouns));
                out.push_str(&Value::Object(obj).to_string());
                out.push('\n');
            }
        }
    }
    out
}
