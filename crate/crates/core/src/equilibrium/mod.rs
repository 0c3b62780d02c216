//! Strong Nash equilibria: verification, construction, search and dynamics.

mod construct;
mod dynamics;
mod search;

pub use construct::{
    construct_1strong_ne, construct_2strong_ne_amax1, find_safe_multiple_team_slot,
    find_safe_single_team_slot, Construction, ConstructionCase, ConstructionMethod,
    SafeSingleSlot, TwoStrongConstruction,
};
pub use dynamics::{run_dynamics, DynamicsStatus, DynamicsTrace, Transition};
pub use search::{exhaustive_ne_search, truth_raise_step, under_declaration_at_winner};

use crate::error::Result;
use crate::matrix::AvailabilityMatrix;
use crate::solver::{find_improvement_any, ImprovementStep, SearchConfig};

/// Outcome of a `t`-strong equilibrium check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeVerdict {
    /// First (smallest, then lexicographic) coalition with an improvement
    /// step, if any.
    pub witness: Option<ImprovementStep>,
}

impl NeVerdict {
    pub fn is_equilibrium(&self) -> bool {
        self.witness.is_none()
    }
}

/// Is `b` a `t`-strong Nash equilibrium, i.e. no coalition of at most `t`
/// teams has an improvement step?
pub fn is_t_strong_ne(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    t: usize,
    config: &SearchConfig,
) -> Result<NeVerdict> {
    Ok(NeVerdict {
        witness: find_improvement_any(a, b, t, config)?,
    })
}
