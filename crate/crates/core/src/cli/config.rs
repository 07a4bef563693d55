use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{CliError, CommonArgs};
use crate::charvocab::{KeynessConfig, ReferenceMode, UrnModel};
use crate::metrics::{MetricsOptions, TtrBasis, DEFAULT_BW_THRESHOLD, DEFAULT_WINDOW};
use crate::output::OutputFormat;

/// Environment variable naming a TOML file of default settings.
pub const CONFIG_ENV: &str = "RHETORICA_CONFIG";

/// Defaults read from the config file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub window: Option<usize>,
    pub bw_threshold: Option<usize>,
    pub model: Option<String>,
    pub reference: Option<String>,
    pub format: Option<String>,
    pub ttr_basis: Option<String>,
    pub abbrev: Option<PathBuf>,
    pub aliases: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Settings for one run after merging flags over config-file defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub window_size: usize,
    pub bw_threshold: usize,
    pub model: UrnModel,
    pub reference: ReferenceMode,
    pub format: OutputFormat,
    pub ttr_basis: TtrBasis,
    pub abbrev: Option<PathBuf>,
    pub aliases: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alpha: 0.01,
            window_size: DEFAULT_WINDOW,
            bw_threshold: DEFAULT_BW_THRESHOLD,
            model: UrnModel::NineUrn,
            reference: ReferenceMode::Inclusive,
            format: OutputFormat::Tsv,
            ttr_basis: TtrBasis::Surface,
            abbrev: None,
            aliases: None,
        }
    }
}

fn parse_setting<T: std::str::FromStr<Err = String>>(
    raw: Option<&String>,
) -> Result<Option<T>, CliError> {
    raw.map(|s| s.parse().map_err(CliError::Usage)).transpose()
}

impl RunConfig {
    pub fn resolve(flags: &CommonArgs, file: &FileConfig) -> Result<Self, CliError> {
        let defaults = RunConfig::default();
        let config = RunConfig {
            alpha: flags.alpha.or(file.alpha).unwrap_or(defaults.alpha),
            window_size: flags.window.or(file.window).unwrap_or(defaults.window_size),
            bw_threshold: flags
                .bw_threshold
                .or(file.bw_threshold)
                .unwrap_or(defaults.bw_threshold),
            model: match flags.model {
                Some(m) => m,
                None => parse_setting(file.model.as_ref())?.unwrap_or(defaults.model),
            },
            reference: match flags.reference {
                Some(r) => r,
                None => parse_setting(file.reference.as_ref())?.unwrap_or(defaults.reference),
            },
            format: match flags.format {
                Some(f) => f,
                None => parse_setting(file.format.as_ref())?.unwrap_or(defaults.format),
            },
            ttr_basis: match flags.ttr_basis {
                Some(b) => b,
                None => parse_setting(file.ttr_basis.as_ref())?.unwrap_or(defaults.ttr_basis),
            },
            abbrev: flags.abbrev.clone().or_else(|| file.abbrev.clone()),
            aliases: flags.aliases.clone().or_else(|| file.aliases.clone()),
        };
        if !(config.alpha > 0.0 && config.alpha < 1.0) {
            return Err(CliError::Usage(format!(
                "--alpha must lie in (0, 1), got {}",
                config.alpha
            )));
        }
        if config.window_size == 0 {
            return Err(CliError::Usage("--window must be positive".into()));
        }
        Ok(config)
    }

    pub fn keyness(&self) -> KeynessConfig {
        KeynessConfig {
            alpha: self.alpha,
            model: self.model,
            reference: self.reference,
        }
    }

    pub fn metrics_options(&self) -> MetricsOptions {
        MetricsOptions {
            window_size: self.window_size,
            bw_threshold: self.bw_threshold,
            ttr_basis: self.ttr_basis,
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(&CommonArgs::default(), &FileConfig::default()).unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.alpha, 0.01);
        assert_eq!(c.model, UrnModel::NineUrn);
        assert_eq!(c.reference, ReferenceMode::Inclusive);
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig =
            toml::from_str("alpha = 0.05\nmodel = \"single\"\nwindow = 500\n").unwrap();
        let flags = CommonArgs {
            alpha: Some(0.02),
            ..Default::default()
        };
        let c = RunConfig::resolve(&flags, &file).unwrap();
        assert_eq!(c.alpha, 0.02);
        assert_eq!(c.model, UrnModel::SingleUrn);
        assert_eq!(c.window_size, 500);
    }

    #[test]
    fn bad_values_are_usage_errors() {
        let file: FileConfig = toml::from_str("model = \"three-urn\"\n").unwrap();
        assert!(RunConfig::resolve(&CommonArgs::default(), &file).is_err());
        assert!(toml::from_str::<FileConfig>("colour = 1\n").is_err());
        let flags = CommonArgs {
            alpha: Some(1.5),
            ..Default::default()
        };
        assert!(RunConfig::resolve(&flags, &FileConfig::default()).is_err());
    }
}
