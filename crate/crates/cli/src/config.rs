use std::fs;
use std::path::{Path, PathBuf};

use ggsp::graphon::GraphonSpec;
use serde::Deserialize;

use crate::CliError;

/// Settings file for `experiment s3`. Every field is optional; command-line
/// flags take precedence.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Option<GraphonSpec>,
    pub n: Option<usize>,
    pub num_samples: Option<usize>,
    pub master_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub block: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative radius band reported for the scatter experiment.
    pub radius_rel: Option<f64>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: Self = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
        if let Some(t) = cfg.tolerances.radius_rel {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("radius_rel tolerance {t} must be positive")));
            }
        }
        Ok(cfg)
    }
}

/// Reads a model given either inline (`{...}`) or as a path to a JSON file.
pub fn load_model(arg: &str) -> Result<GraphonSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Config(format!("cannot read model file {arg}: {e}")))?
    };
    let spec =
        GraphonSpec::from_json(&text).map_err(|e| CliError::Config(format!("invalid model JSON: {e}")))?;
    spec.build().map_err(|e| CliError::Config(format!("invalid model: {e}")))?;
    Ok(spec)
}
