//! Run configuration: defaults, then the file named by `EICHLERKIT_CONFIG`,
//! then command-line flags.

use std::path::{Path, PathBuf};

use eichler_core::info::Caps;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONFIG_ENV: &str = "EICHLERKIT_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub order_cap: u64,
    pub class_cap: u64,
    pub backtrack_budget: u64,
    pub catalog_paths: Vec<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let c = Caps::default();
        Config {
            order_cap: c.order_cap,
            class_cap: c.enumeration_cap,
            backtrack_budget: c.backtrack_budget,
            catalog_paths: Vec::new(),
            output_format: OutputFormat::Table,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        let c: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e))?;
        Config::from_toml(&text)
    }

    /// Defaults, overridden by the file in `EICHLERKIT_CONFIG` if set.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Config::from_file(Path::new(&p)),
            None => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order_cap == 0 || self.class_cap == 0 || self.backtrack_budget == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps { order_cap: self.order_cap, enumeration_cap: self.class_cap, backtrack_budget: self.backtrack_budget }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_overrides() {
        let c = Config::from_toml("order_cap = 500\noutput_format = \"json\"\n").unwrap();
        assert_eq!(c.order_cap, 500);
        assert_eq!(c.output_format, OutputFormat::Json);
        assert_eq!(c.class_cap, Config::default().class_cap);
        assert!(Config::from_toml("order_cap = 0").is_err());
        assert!(Config::from_toml("colour = 1").is_err());
    }
}
