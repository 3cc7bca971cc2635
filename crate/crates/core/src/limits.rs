use crate::error::{Error, Result};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "XMODKIT_BUDGET";

/// Size limits applied to exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted from input documents.
    pub max_order: usize,
    /// Largest group order for automorphism search.
    pub max_aut_order: usize,
    /// Largest search space for brute-force enumeration.
    pub budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 64,
            max_aut_order: 16,
            budget: 1 << 20,
        }
    }
}

impl Limits {
    /// Defaults, with the budget taken from `XMODKIT_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            limits.budget = raw
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("{BUDGET_ENV}={raw:?} is not an integer")))?;
        }
        Ok(limits)
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub(crate) fn check_budget(&self, what: &str, size: u128) -> Result<()> {
        if size > self.budget {
            return Err(Error::size(what, size, self.budget));
        }
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
