use serde::{Deserialize, Serialize};

/// Limits for seed closures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeedBudget {
    pub max_seeds: usize,
    pub max_depth: usize,
    /// Cap on the summed term count of all stored variables, and on any
    /// single exchange numerator.
    pub max_terms: usize,
}

impl Default for SeedBudget {
    fn default() -> Self {
        SeedBudget { max_seeds: 32_000, max_depth: 24, max_terms: 2_000_000 }
    }
}

/// Limits for mutation-class exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassBudget {
    pub max_members: usize,
    pub max_depth: usize,
}

impl Default for ClassBudget {
    fn default() -> Self {
        ClassBudget { max_members: 20_000, max_depth: 64 }
    }
}
