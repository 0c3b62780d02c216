use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{ensure_profile, payoff_shares, winners};
use crate::matrix::{AvailabilityMatrix, Coalition};
use crate::rational::Share;
use crate::solver::{find_improvement_any, ImprovementStep, SearchConfig};

/// First `(team, slot)` in row-major order where `slot` is a winner and the
/// team declares less than its availability there.
pub fn under_declaration_at_winner(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
) -> Option<(usize, usize)> {
    let win = winners(b);
    (0..a.teams())
        .flat_map(|i| win.iter().map(move |&j| (i, j)))
        .find(|&(i, j)| b.get(i, j) < a.get(i, j))
}

/// The move where `team` alone raises its declaration at `slot` to the
/// truth, if that strictly raises its pay-off.
///
/// When `slot` is a winner and the team is below its availability there,
/// this fails only if the team's pay-off is already 1.
pub fn truth_raise_step(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    team: usize,
    slot: usize,
) -> Result<Option<ImprovementStep>> {
    ensure_profile(a, b)?;
    if team >= a.teams() {
        return Err(Error::IndexOutOfRange { what: "team", index: team, bound: a.teams() });
    }
    if slot >= a.slots() {
        return Err(Error::IndexOutOfRange { what: "slot", index: slot, bound: a.slots() });
    }
    if b.get(team, slot) == a.get(team, slot) {
        return Ok(None);
    }
    let mut after = b.clone();
    after.set(team, slot, a.get(team, slot));
    let better = payoff_shares(&after)[team] > payoff_shares(b)[team];
    Ok(better.then(|| ImprovementStep::between(b, after, Coalition::singleton(team))))
}

/// Some team under-declares at a winner and gains by raising to the truth
/// there, so the profile cannot be an equilibrium.
fn prunable(a: &AvailabilityMatrix, b: &AvailabilityMatrix) -> bool {
    let shares = payoff_shares(b);
    let win = winners(b);
    (0..a.teams()).any(|i| {
        shares[i] < Share::ONE
            && win.iter().any(|&j| b.get(i, j) < a.get(i, j))
    })
}

fn decode(a: &AvailabilityMatrix, mut index: u64) -> AvailabilityMatrix {
    let mut data = vec![0u64; a.entries().len()];
    for (k, &cap) in a.entries().iter().enumerate().rev() {
        let radix = cap + 1;
        data[k] = index % radix;
        index /= radix;
    }
    AvailabilityMatrix::new(a.teams(), a.slots(), data).expect("dominated by a")
}

/// Lexicographically first `t`-strong Nash equilibrium of `a`.
///
/// Profiles are enumerated over the row-major entries, first entry most
/// significant, smallest values first. Profiles where a team below pay-off 1
/// under-declares at a winning slot are skipped without running the solver.
/// Fails with [`Error::BudgetExceeded`] when there are more than
/// `config.budget` profiles.
pub fn exhaustive_ne_search(
    a: &AvailabilityMatrix,
    t: usize,
    config: &SearchConfig,
) -> Result<Option<AvailabilityMatrix>> {
    if t == 0 || t > a.teams() {
        return Err(Error::InvalidParameters(format!(
            "coalition size bound must be in 1..={}, got {t}",
            a.teams()
        )));
    }
    let count = a.profile_count();
    if count > config.budget as u128 {
        return Err(Error::BudgetExceeded { needed: count, budget: config.budget });
    }
    let inner = SearchConfig { parallel: false, ..*config };
    let probe = |index: u64| -> Option<Result<AvailabilityMatrix>> {
        let b = decode(a, index);
        if prunable(a, &b) {
            return None;
        }
        match find_improvement_any(a, &b, t, &inner) {
            Ok(None) => Some(Ok(b)),
            Ok(Some(_)) => None,
            Err(e) => Some(Err(e)),
        }
    };
    let count = count as u64;
    if config.parallel {
        (0..count).into_par_iter().find_map_first(probe).transpose()
    } else {
        (0..count).find_map(probe).transpose()
    }
}
