//! Run-time budgets and switches shared by the command line and the
//! acceptance runner.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::hypergraph::{OrderingMode, SearchConfig, DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET};
use crate::terms::DEFAULT_BUDGET;

/// Environment variable consulted when no `--budget-ms` flag is given.
pub const BUDGET_ENV: &str = "SEMIRING_LAB_BUDGET_MS";

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Wall-clock budget per search, in milliseconds.
    pub budget_ms: u64,
    /// Node budget per homomorphism search.
    pub node_budget: u64,
    /// Element-operation budget for exhaustive identity checks.
    pub eval_budget: u64,
    pub seed: u64,
    pub json: bool,
    pub orderings: OrderingMode,
    pub symmetry: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            budget_ms: DEFAULT_TIME_BUDGET.as_millis() as u64,
            node_budget: DEFAULT_NODE_BUDGET,
            eval_budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            json: false,
            orderings: OrderingMode::Single,
            symmetry: true,
        }
    }
}

impl RunConfig {
    /// Flag value, else the environment variable, else the default.
    pub fn resolve_budget_ms(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
        let ms = match (flag, env) {
            (Some(ms), _) => ms,
            (None, Some(text)) => text
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("{BUDGET_ENV} must be a positive integer, got `{text}`")))?,
            (None, None) => DEFAULT_TIME_BUDGET.as_millis() as u64,
        };
        if ms == 0 {
            return Err(Error::input("budget must be positive"));
        }
        Ok(ms)
    }

    pub fn budget_from_env(flag: Option<u64>) -> Result<u64> {
        let env = std::env::var(BUDGET_ENV).ok();
        Self::resolve_budget_ms(flag, env.as_deref())
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget_ms == 0 || self.node_budget == 0 || self.eval_budget == 0 {
            return Err(Error::input("budgets must be positive"));
        }
        Ok(())
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            time_budget: Duration::from_millis(self.budget_ms),
            node_budget: self.node_budget,
            symmetry: self.symmetry,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_precedence() {
        assert_eq!(RunConfig::resolve_budget_ms(Some(5), Some("7")).unwrap(), 5);
        assert_eq!(RunConfig::resolve_budget_ms(None, Some(" 7 ")).unwrap(), 7);
        assert_eq!(RunConfig::resolve_budget_ms(None, None).unwrap(), 600_000);
        assert!(RunConfig::resolve_budget_ms(None, Some("soon")).is_err());
        assert!(RunConfig::resolve_budget_ms(Some(0), None).is_err());
    }

    #[test]
    fn defaults_are_positive() {
        let c = RunConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.search().node_budget, 1_000_000_000);
        assert!(RunConfig { node_budget: 0, ..c }.validate().is_err());
    }
}
