//! Declarative model files.
//!
//! ```toml
//! model = "cartan"
//! degree = 2
//!
//! [parameters]
//! type = 4
//! n = 3
//! scale = "1/2"
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

use super::ModelSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub spec: ModelSpec,
    pub degree: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    model: String,
    degree: Option<u32>,
    #[serde(default)]
    parameters: BTreeMap<String, toml::Value>,
}

pub fn parse_config(text: &str) -> Result<ModelConfig> {
    let raw: Raw = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut spec = ModelSpec::new(&raw.model);
    for (k, v) in raw.parameters {
        let s = match v {
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            other => {
                return Err(Error::Parse(format!(
                    "parameter {k}: expected an integer or a \"p/q\" string, got {other}"
                )))
            }
        };
        spec.parameters.insert(k, s);
    }
    Ok(ModelConfig {
        spec,
        degree: raw.degree,
    })
}

pub fn load_config(path: &Path) -> Result<ModelConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
