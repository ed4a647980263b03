use std::collections::BTreeMap;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tracecode::Limits;

use crate::Failure;

/// Environment variable overriding the default enumeration ceiling.
pub const CEILING_ENV: &str = "TRACECODE_CEILING";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    ceiling: Option<u64>,
    planar_ceiling: Option<u64>,
}

/// Resolves ceilings: built-in defaults, then the environment variable, then
/// the config file, then command-line flags.
pub fn resolve_limits(
    config: Option<&Path>,
    ceiling: Option<u64>,
    planar_ceiling: Option<u64>,
) -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var(CEILING_ENV) {
        limits.enumeration = raw
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CEILING_ENV} must be an integer, got {raw:?}")))?;
    }
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|err| Failure::usage(format!("cannot read config {}: {err}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|err| Failure::usage(format!("bad config {}: {err}", path.display())))?;
        if let Some(c) = file.ceiling {
            limits.enumeration = c;
        }
        if let Some(c) = file.planar_ceiling {
            limits.planar = c;
        }
    }
    if let Some(c) = ceiling {
        limits.enumeration = c;
    }
    if let Some(c) = planar_ceiling {
        limits.planar = c;
    }
    Ok(limits)
}

/// Embedded in every JSON result.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub limits: Limits,
    pub version: &'static str,
    pub wall_time_ms: f64,
}

impl RunManifest {
    pub fn new(command: &str, parameters: &impl Serialize, limits: Limits) -> Self {
        let parameters = match serde_json::to_value(parameters) {
            Ok(Value::Object(map)) => map.into_iter().filter(|(_, v)| !v.is_null()).collect(),
            _ => BTreeMap::new(),
        };
        RunManifest {
            command: command.to_string(),
            parameters,
            modulus: None,
            limits,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: 0.0,
        }
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.wall_time_ms = elapsed.as_secs_f64() * 1e3;
    }
}
