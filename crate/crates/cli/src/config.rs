//! Session settings merged from defaults, the file named by
//! `SEMIDUALIZE_CONFIG`, the input file and command-line flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CONFIG_ENV: &str = "SEMIDUALIZE_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionConfig {
    pub prime: u64,
    pub bound: usize,
    pub seed: u64,
    pub format: Format,
    pub cap: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            prime: semidual_core::DEFAULT_PRIME as u64,
            bound: 8,
            seed: 0,
            format: Format::Text,
            cap: 512,
        }
    }
}

/// Every field optional; used for the config file and for flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub prime: Option<u64>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub cap: Option<usize>,
}

impl PartialConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        toml::from_str(&text).map_err(|e| CliError::Input {
            field: format!("{CONFIG_ENV} ({})", path.display()),
            message: e.to_string(),
        })
    }

    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    fn apply(&self, cfg: &mut SessionConfig) {
        if let Some(p) = self.prime {
            cfg.prime = p;
        }
        if let Some(n) = self.bound {
            cfg.bound = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(c) = self.cap {
            cfg.cap = c;
        }
    }
}

impl SessionConfig {
    /// Defaults, then the config file, then the prime of the input file,
    /// then flags.
    pub fn resolve(
        env: &PartialConfig,
        file_prime: Option<u64>,
        flags: &PartialConfig,
    ) -> Result<Self, CliError> {
        let mut cfg = SessionConfig::default();
        env.apply(&mut cfg);
        if let Some(p) = file_prime {
            cfg.prime = p;
        }
        flags.apply(&mut cfg);
        if cfg.bound == 0 {
            return Err(CliError::Input {
                field: "bound".into(),
                message: "must be at least 1".into(),
            });
        }
        Ok(cfg)
    }

    pub fn check_cap(&self, what: &str, dim: usize) -> Result<(), CliError> {
        if dim > self.cap {
            return Err(CliError::Core {
                context: what.into(),
                source: semidual_core::Error::CapExceeded { dim, cap: self.cap },
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_and_env() {
        let env = PartialConfig {
            prime: Some(7),
            bound: Some(3),
            ..Default::default()
        };
        let flags = PartialConfig {
            prime: Some(11),
            ..Default::default()
        };
        let cfg = SessionConfig::resolve(&env, Some(5), &flags).unwrap();
        assert_eq!((cfg.prime, cfg.bound, cfg.cap), (11, 3, 512));
        let cfg = SessionConfig::resolve(&env, Some(5), &PartialConfig::default()).unwrap();
        assert_eq!(cfg.prime, 5);
    }

    #[test]
    fn zero_bound_is_rejected() {
        let flags = PartialConfig {
            bound: Some(0),
            ..Default::default()
        };
        assert!(SessionConfig::resolve(&PartialConfig::default(), None, &flags).is_err());
    }
}
