use crate::error::{Error, Result};
use crate::game::{ensure_profile, payoff_share, payoff_shares, winners_of_sums};
use crate::matrix::{AvailabilityMatrix, Coalition};

use super::ImprovementStep;

/// Exhaustive improvement-step search for one coalition.
///
/// Enumerates every joint replacement of the members' rows, not only the
/// single-slot ones, in lexicographic order over the flattened member rows
/// (first member's first slot most significant, smallest first). Returns the
/// first strict improvement for every member. Fails with
/// [`Error::BudgetExceeded`] instead of answering when the deviation space is
/// larger than `budget`.
pub fn brute_force_improvement(
    a: &AvailabilityMatrix,
    b: &AvailabilityMatrix,
    coalition: &Coalition,
    budget: u64,
) -> Result<Option<ImprovementStep>> {
    ensure_profile(a, b)?;
    coalition.check_against(a.teams())?;
    let members = coalition.members();

    let positions: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&i| (0..a.slots()).map(move |j| (i, j)))
        .collect();
    let space = positions
        .iter()
        .fold(1u128, |acc, &(i, j)| acc.saturating_mul(a.get(i, j) as u128 + 1));
    if space > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: space,
            budget,
        });
    }

    let before = payoff_shares(b);
    let mut cur = b.clone();
    for &i in members {
        cur.row_mut(i).fill(0);
    }
    let mut sums = cur.column_sums();

    loop {
        let win = winners_of_sums(&sums);
        if members
            .iter()
            .all(|&i| payoff_share(&cur, &sums, &win, i) > before[i])
        {
            return Ok(Some(ImprovementStep::between(b, cur, coalition.clone())));
        }
        // odometer: last position turns fastest
        let mut k = positions.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            let (i, j) = positions[k];
            let v = cur.get(i, j);
            if v < a.get(i, j) {
                cur.set(i, j, v + 1);
                sums[j] += 1;
                break;
            }
            cur.set(i, j, 0);
            sums[j] -= v;
        }
    }
}
