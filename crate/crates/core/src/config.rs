//! Size limits for the exhaustive procedures.

use std::sync::OnceLock;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

pub const CAP_ENV: &str = "STONEWORK_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest carrier accepted by the relation computations.
    pub cap: usize,
    /// Largest carrier for the auxiliary-relation enumeration.
    pub minimal_aux_cap: usize,
    /// Largest carrier for the all-subsets ultrafilter oracle.
    pub oracle_cap: usize,
}

static GLOBAL: OnceLock<Config> = OnceLock::new();

impl Default for Config {
    fn default() -> Self {
        Config {
            cap: 64,
            minimal_aux_cap: 6,
            oracle_cap: 16,
        }
    }
}

impl Config {
    /// Defaults, with `STONEWORK_CAP` overriding the carrier cap.
    pub fn from_env() -> Config {
        let mut cfg = Config::default();
        if let Some(cap) = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.cap = cap;
        }
        cfg.cap = cfg.cap.min(ElemSet::CAPACITY);
        cfg
    }

    /// Process-wide configuration, read once from the environment unless
    /// [`Config::install`] ran first.
    pub fn global() -> &'static Config {
        GLOBAL.get_or_init(Config::from_env)
    }

    /// Sets the process-wide configuration. Fails once it has been read.
    pub fn install(cfg: Config) -> std::result::Result<(), Config> {
        GLOBAL.set(cfg)
    }

    pub fn check_cap(&self, size: usize) -> Result<()> {
        if size > self.cap {
            Err(Error::CarrierTooLarge { size, cap: self.cap })
        } else {
            Ok(())
        }
    }
}
