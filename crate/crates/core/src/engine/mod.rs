//! Semi-algebraic solving, rational points in open sets, and quantifier
//! elimination, by cylindrical algebraic decomposition.

mod cad;
mod field;
mod projection;
mod qe;
mod solve;

pub(crate) mod internal {
    pub(crate) use super::cad::Sample;
    pub(crate) use super::field::Field;
}

pub use qe::quantifier_elimination;
pub use solve::{rational_open_solve, semialgebraic_solve};

use crate::error::{Error, Result};

/// Resource limits; exceeding any of them is an error, never a wrong answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_cells: u64,
    pub max_degree: u32,
    pub max_vars: usize,
    /// Largest polynomial the projection may build, in terms.
    pub max_terms: usize,
    /// Word multiplications the projection may spend, gcds and determinants
    /// together.
    pub max_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cells: 1_000_000, max_degree: 64, max_vars: 8, max_terms: 5_000, max_work: 20_000_000 }
    }
}

pub const BUDGET_CELLS_ENV: &str = "RATPOINT_BUDGET_CELLS";

impl Budget {
    /// Defaults, with the cell limit taken from `RATPOINT_BUDGET_CELLS` when set.
    pub fn from_env() -> Result<Self> {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var(BUDGET_CELLS_ENV) {
            b.max_cells = v
                .trim()
                .parse()
                .map_err(|_| Error::Shape(format!("{BUDGET_CELLS_ENV} must be a non-negative integer, got '{v}'")))?;
        }
        Ok(b)
    }

    pub(crate) fn check_vars(&self, n: usize) -> Result<()> {
        if n > self.max_vars {
            return Err(Error::BudgetExhausted(format!("{n} variables exceed the budget of {}", self.max_vars)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub budget: Budget,
    /// Lift sibling cells on the rayon pool; ignored without the `parallel` feature.
    pub parallel: bool,
}

// not derivable: `parallel` follows the feature
#[allow(clippy::derivable_impls)]
impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { budget: Budget::default(), parallel: cfg!(feature = "parallel") }
    }
}

pub(crate) fn par_map<T, R, F>(parallel: bool, items: Vec<T>, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

/// First item, in input order, for which `f` yields `Some` or an error.
pub(crate) fn par_find_first<T, R, F>(parallel: bool, items: Vec<T>, f: F) -> Result<Option<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<Option<R>> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).find_first(|r| !matches!(r, Ok(None))).unwrap_or(Ok(None));
    }
    let _ = parallel;
    for it in items {
        if let Some(r) = f(it)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
