//! Improvement steps for coalitions.
//!
//! A coalition that can improve at all can do so with every member declaring
//! zero everywhere except one common slot, which then wins alone. The search
//! therefore tries each slot in turn and solves a small threshold problem
//! there ([`threshold`]). [`brute_force_improvement`] enumerates every joint
//! deviation instead and serves as ground truth in tests.

mod brute;
pub mod threshold;

use itertools::Itertools;
use rayon::prelude::*;

pub use brute::brute_force_improvement;
pub use threshold::{solve_threshold_unary, ThresholdInstance, ThresholdSolution};

use crate::error::{Error, Result};
use crate::game::{ensure_profile, payoff_share, payoff_shares, winners_of_sums};
use crate::matrix::{AvailabilityMatrix, Coalition};
use crate::rational::{Rational, Share};

/// Inputs whose total availability exceeds this are rejected by the solver.
pub const MAX_TOTAL_AVAILABILITY: u64 = 1_000_000;
/// Default cap on joint deviations enumerated by [`brute_force_improvement`].
pub const DEFAULT_IMPROVEMENT_BUDGET: u64 = 10_000_000;
/// Default cap on profiles enumerated by exhaustive equilibrium search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Knobs shared by the enumerating searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Evaluate independent candidates on the rayon pool. Results are the
    /// same either way: the lexicographically first witness is reported.
    pub parallel: bool,
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            parallel: false,
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// A joint deviation of a coalition and its effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementStep {
    pub coalition: Coalition,
    /// The slot that wins alone after the step, if one does. Always set for
    /// steps produced by [`find_improvement_step`].
    pub target_slot: Option<usize>,
    /// Replacement declared row for each member, in coalition order.
    pub new_rows: Vec<Vec<u64>>,
    /// The whole profile after the step.
    pub profile: AvailabilityMatrix,
    /// Pay-off of each member before and after, in coalition order.
    pub old_payoffs: Vec<Rational>,
    pub new_payoffs: Vec<Rational>,
}

impl ImprovementStep {
    /// Describes the move from `before` to `after` for `coalition`.
    pub fn between(
        before: &AvailabilityMatrix,
        after: AvailabilityMatrix,
        coalition: Coalition,
    ) -> Self {
        let old = payoff_shares(before);
        let new = payoff_shares(&after);
        let sums = after.column_sums();
        let win = winners_of_sums(&sums);
        let target_slot = match win[..] {
            [k] => Some(k),
            _ => None,
        };
        let members = coalition.members();
        ImprovementStep {
            new_rows: members.iter().map(|&i| after.row(i).to_vec()).collect(),
            old_payoffs: members.iter().map(|&i| old[i].to_rational()).collect(),
            new_payoffs: members.iter().map(|&i| new[i].to_rational()).collect(),
            target_slot,
            profile: after,
            coalition,
        }
    }
}

/// Slots where every member has positive true availability, ascending.
pub fn candidate_slots(a: &AvailabilityMatrix, coalition: &Coalition) -> Vec<usize> {
    (0..a.slots())
        .filter(|&k| coalition.members().iter().all(|&i| a.get(i, k) >= 1))
        .collect()
}

/// Column sums of `b` with the coalition's rows zeroed.
fn outsider_sums(b: &AvailabilityMatrix, coalition: &Coalition) -> Vec<u64> {
    let mut sums = b.column_sums();
    for &i in coalition.members() {
        for (s, &x) in sums.iter_mut().zip(b.row(i)) {
            *s -= x;
        }
    }
    sums
}

fn threshold_instance(
    a: &AvailabilityMatrix,
    coalition: &Coalition,
    slot: usize,
    outsiders: &[u64],
    thresholds: Vec<Rational>,
) -> Result<ThresholdInstance> {
    let winner_margin = outsiders
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != slot)
        .map(|(_, &s)| s)
        .max()
        .unwrap_or(0);
    ThresholdInstance::new(
        coalition.members().iter().map(|&i| a.get(i, slot)).collect(),
        thresholds,
        outsiders[slot],
        winner_margin,
    )
}

/// Threshold problem for moving `coalition` onto `slot`.
pub fn build_threshold_instance(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    coalition: &Coalition,
    slot: usize,
) -> Result<ThresholdInstance> {
    ensure_profile(a, b)?;
    coalition.check_against(a.teams())?;
    if !candidate_slots(a, coalition).contains(&slot) {
        return Err(Error::InvalidParameters(format!(
            "slot {} is not available to every member of coalition {{{coalition}}}",
            slot + 1
        )));
    }
    let shares = payoff_shares(b);
    let thresholds = coalition
        .members()
        .iter()
        .map(|&i| shares[i].to_rational())
        .collect();
    threshold_instance(a, coalition, slot, &outsider_sums(b, coalition), thresholds)
}

/// Checks that `step` is a legal joint deviation from `b` under which every
/// coalition member strictly gains.
pub fn verify_improvement(a: &AvailabilityMatrix, b: &AvailabilityMatrix, step: &ImprovementStep) -> bool {
    let after = &step.profile;
    let members = step.coalition.members();
    if a.shape() != b.shape() || after.shape() != b.shape() {
        return false;
    }
    if members.last().is_none_or(|&i| i >= a.teams()) {
        return false;
    }
    if !crate::game::validate_profile(a, after).is_empty() {
        return false;
    }
    if step.new_rows.len() != members.len()
        || members
            .iter()
            .zip(&step.new_rows)
            .any(|(&i, row)| after.row(i) != row.as_slice())
    {
        return false;
    }
    if (0..b.teams()).any(|i| !step.coalition.contains(i) && after.row(i) != b.row(i)) {
        return false;
    }
    let before_sums = b.column_sums();
    let before_win = winners_of_sums(&before_sums);
    let after_sums = after.column_sums();
    let after_win = winners_of_sums(&after_sums);
    members.iter().all(|&i| {
        payoff_share(after, &after_sums, &after_win, i) > payoff_share(b, &before_sums, &before_win, i)
    })
}

/// Per-profile data reused across coalitions.
struct Context<'a> {
    a: &'a AvailabilityMatrix,
    b: &'a AvailabilityMatrix,
    shares: Vec<Share>,
}

impl<'a> Context<'a> {
    fn new(a: &'a AvailabilityMatrix, b: &'a AvailabilityMatrix) -> Result<Self> {
        ensure_profile(a, b)?;
        if a.total() > MAX_TOTAL_AVAILABILITY {
            return Err(Error::Unsupported(format!(
                "total availability {} exceeds the unary solver cap {MAX_TOTAL_AVAILABILITY}",
                a.total()
            )));
        }
        Ok(Context {
            a,
            b,
            shares: payoff_shares(b),
        })
    }

    fn step_for(&self, coalition: &Coalition) -> Result<Option<ImprovementStep>> {
        let (a, b) = (self.a, self.b);
        let members = coalition.members();
        // a member already at pay-off 1 cannot strictly improve
        if members.iter().any(|&i| self.shares[i] >= Share::new(1, 1)) {
            return Ok(None);
        }
        let outsiders = outsider_sums(b, coalition);
        for slot in candidate_slots(a, coalition) {
            let thresholds = members.iter().map(|&i| self.shares[i].to_rational()).collect();
            let inst = threshold_instance(a, coalition, slot, &outsiders, thresholds)?;
            let Some(sol) = solve_threshold_unary(&inst) else {
                continue;
            };
            let mut after = b.clone();
            for (&i, &x) in members.iter().zip(&sol.values) {
                let row = after.row_mut(i);
                row.fill(0);
                row[slot] = x;
            }
            let step = ImprovementStep::between(b, after, coalition.clone());
            if step.target_slot != Some(slot) || !verify_improvement(a, b, &step) {
                return Err(Error::Internal(format!(
                    "threshold solution {:?} for coalition {{{coalition}}} at slot {} does not verify \
                     (instance {a:?}, profile {b:?})",
                    sol.values,
                    slot + 1
                )));
            }
            return Ok(Some(step));
        }
        Ok(None)
    }
}

/// Improvement step for a fixed coalition, in single-slot normal form.
///
/// Slots are tried in ascending order and the smallest feasible total is
/// used, so the answer is deterministic. Returns `None` iff the coalition has
/// no improvement step at all.
pub fn find_improvement_step(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    coalition: &Coalition,
) -> Result<Option<ImprovementStep>> {
    coalition.check_against(a.teams())?;
    Context::new(a, b)?.step_for(coalition)
}

/// All coalitions of size `1..=max_size`, by size and then lexicographically.
pub fn coalitions_up_to(teams: usize, max_size: usize) -> impl Iterator<Item = Coalition> {
    (1..=max_size.min(teams)).flat_map(move |size| {
        (0..teams)
            .combinations(size)
            .map(Coalition::from_sorted)
    })
}

/// First coalition of at most `max_size` teams (by size, then members) that
/// has an improvement step, together with that step.
pub fn find_improvement_any(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    max_size: usize,
    config: &SearchConfig,
) -> Result<Option<ImprovementStep>> {
    if max_size == 0 || max_size > a.teams() {
        return Err(Error::InvalidParameters(format!(
            "coalition size bound must be in 1..={}, got {max_size}",
            a.teams()
        )));
    }
    let ctx = Context::new(a, b)?;
    let probe = |c: Coalition| ctx.step_for(&c).transpose();
    if config.parallel {
        let all: Vec<Coalition> = coalitions_up_to(a.teams(), max_size).collect();
        all.into_par_iter().find_map_first(probe).transpose()
    } else {
        coalitions_up_to(a.teams(), max_size)
            .find_map(probe)
            .transpose()
    }
}
