use std::collections::HashMap;

use crate::error::Result;
use crate::game::ensure_profile;
use crate::matrix::AvailabilityMatrix;
use crate::solver::{find_improvement_any, ImprovementStep, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicsStatus {
    EquilibriumReached,
    /// The last profile equals the one reached after `first_seen` steps
    /// (0 is the start).
    CycleDetected { first_seen: usize },
    StepBudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub before: AvailabilityMatrix,
    pub step: ImprovementStep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub start: AvailabilityMatrix,
    pub transitions: Vec<Transition>,
    pub status: DynamicsStatus,
}

impl DynamicsTrace {
    pub fn final_profile(&self) -> &AvailabilityMatrix {
        self.transitions.last().map_or(&self.start, |t| &t.step.profile)
    }
}

/// Repeatedly applies the first improvement step of any coalition of at
/// most `t` teams, starting from `b0`.
pub fn run_dynamics(
    a: &AvailabilityMatrix,
    b0: &AvailabilityMatrix,
    t: usize,
    max_steps: usize,
    config: &SearchConfig,
) -> Result<DynamicsTrace> {
    ensure_profile(a, b0)?;
    let mut seen = HashMap::from([(b0.clone(), 0usize)]);
    let mut transitions: Vec<Transition> = Vec::new();
    let mut cur = b0.clone();
    let status = loop {
        let Some(step) = find_improvement_any(a, &cur, t, config)? else {
            break DynamicsStatus::EquilibriumReached;
        };
        if transitions.len() == max_steps {
            break DynamicsStatus::StepBudgetExhausted;
        }
        let next = step.profile.clone();
        transitions.push(Transition { before: cur, step });
        if let Some(&first_seen) = seen.get(&next) {
            cur = next;
            break DynamicsStatus::CycleDetected { first_seen };
        }
        seen.insert(next.clone(), transitions.len());
        cur = next;
    };
    debug_assert_eq!(&cur, transitions.last().map_or(b0, |t| &t.step.profile));
    Ok(DynamicsTrace {
        start: b0.clone(),
        transitions,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u64]]) -> AvailabilityMatrix {
        AvailabilityMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn equilibrium_start_has_empty_trace() {
        let a = m(&[&[2, 2], &[1, 2], &[3, 2]]);
        let b = m(&[&[2, 2], &[1, 2], &[3, 0]]);
        let tr = run_dynamics(&a, &b, 1, 10, &SearchConfig::default()).unwrap();
        assert!(tr.transitions.is_empty());
        assert_eq!(tr.status, DynamicsStatus::EquilibriumReached);
    }

    #[test]
    fn no_pair_ne_cycles_for_pairs() {
        let a = m(&[&[2, 0], &[2, 2], &[0, 2]]);
        let tr = run_dynamics(&a, &a, 2, 100, &SearchConfig::default()).unwrap();
        assert!(matches!(tr.status, DynamicsStatus::CycleDetected { .. }));
        let tr = run_dynamics(&a, &a, 2, 0, &SearchConfig::default()).unwrap();
        assert_eq!(tr.status, DynamicsStatus::StepBudgetExhausted);
        assert_eq!(tr.final_profile(), &a);
    }
}
