//! Computation budgets and run configuration.

use serde::{Deserialize, Serialize};
use std::time::Duration;

/// Caps for a single Groebner-basis computation. Exceeding a cap is a
/// reported failure, never a wrong answer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Budget {
    pub degree_cap: u32,
    pub time_cap_seconds: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            degree_cap: 30,
            time_cap_seconds: 300,
        }
    }
}

impl Budget {
    pub fn time_cap(&self) -> Duration {
        Duration::from_secs(self.time_cap_seconds)
    }
}

/// Run-level configuration: seeds, retry and search limits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub budget: Budget,
    pub seed: u64,
    /// Cap for the reduction-number search; `None` derives l - e + 2.
    pub r_max: Option<u32>,
    /// Retries for unlucky random specializations.
    pub specialization_retries: u32,
    /// Seed retries for the reduction-number minimum.
    pub reduction_seed_retries: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: Budget::default(),
            seed: 42,
            r_max: None,
            specialization_retries: 5,
            reduction_seed_retries: 3,
        }
    }
}
