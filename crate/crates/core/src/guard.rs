//! Size limits for materialized operators and permutation enumeration.

use crate::error::{Error, Result};

pub const DEFAULT_ENTRY_LIMIT: usize = 20_000;
pub const DEFAULT_MAX_ARITY: usize = 3;
pub const DEFAULT_SKEW_ARITY: usize = 4;
pub const ENV_VAR: &str = "TDHOM_GUARD_LIMIT";

/// Refuses materializations with more than `entry_limit` argument tuples
/// `(dim L · dim C)^n` or arity above `max_arity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub entry_limit: usize,
    pub max_arity: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self { entry_limit: DEFAULT_ENTRY_LIMIT, max_arity: DEFAULT_MAX_ARITY }
    }
}

impl Guard {
    /// Default limits, with the entry limit taken from `TDHOM_GUARD_LIMIT`
    /// when set.
    pub fn from_env() -> Result<Self> {
        let mut g = Self::default();
        if let Ok(v) = std::env::var(ENV_VAR) {
            g.entry_limit = v
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("{ENV_VAR}={v:?} is not a nonnegative integer")))?;
        }
        Ok(g)
    }

    pub fn with_entry_limit(mut self, limit: usize) -> Self {
        self.entry_limit = limit;
        self
    }

    pub fn with_max_arity(mut self, arity: usize) -> Self {
        self.max_arity = arity;
        self
    }

    /// No limits at all.
    pub fn unlimited() -> Self {
        Self { entry_limit: usize::MAX, max_arity: usize::MAX }
    }

    pub fn check(&self, hom_dim: usize, arity: usize, what: &str) -> Result<()> {
        if arity > self.max_arity {
            return Err(Error::Guard(format!("{what}: arity {arity} exceeds the limit {}", self.max_arity)));
        }
        let entries = (hom_dim as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if self.entry_limit != usize::MAX && entries > self.entry_limit as u128 {
            return Err(Error::Guard(format!(
                "{what}: {hom_dim}^{arity} = {entries} argument tuples exceed the limit {}",
                self.entry_limit
            )));
        }
        Ok(())
    }
}
