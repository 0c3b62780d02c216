//! Winners, relative power and maximin pay-offs of a declared profile.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::AvailabilityMatrix;
use crate::rational::{Rational, Share};

/// One reason a declared profile is not admissible for an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `declared > available` at (team, slot), 0-based.
    ExceedsAvailability {
        team: usize,
        slot: usize,
        declared: u64,
        available: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ShapeMismatch { expected, found } => write!(
                f,
                "profile is {}x{}, instance is {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::ExceedsAvailability {
                team,
                slot,
                declared,
                available,
            } => write!(
                f,
                "team {} declares {declared} at slot {} but is only available {available}",
                team + 1,
                slot + 1
            ),
        }
    }
}

/// Every violation of `0 <= b <= a` (elementwise, same shape).
pub fn validate_profile(a: &AvailabilityMatrix, b: &AvailabilityMatrix) -> Vec<Violation> {
    if a.shape() != b.shape() {
        return vec![Violation::ShapeMismatch {
            expected: a.shape(),
            found: b.shape(),
        }];
    }
    let mut out = Vec::new();
    for i in 0..a.teams() {
        for j in 0..a.slots() {
            let (declared, available) = (b.get(i, j), a.get(i, j));
            if declared > available {
                out.push(Violation::ExceedsAvailability {
                    team: i,
                    slot: j,
                    declared,
                    available,
                });
            }
        }
    }
    out
}

pub(crate) fn ensure_profile(a: &AvailabilityMatrix, b: &AvailabilityMatrix) -> Result<()> {
    let v = validate_profile(a, b);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidProfile(v))
    }
}

/// All slots attaining the maximum declared column sum, ascending.
///
/// When every column sums to zero every slot is returned.
pub fn winners(b: &AvailabilityMatrix) -> Vec<usize> {
    winners_of_sums(&b.column_sums())
}

pub(crate) fn winners_of_sums(sums: &[u64]) -> Vec<usize> {
    let best = sums.iter().copied().max().unwrap_or(0);
    (0..sums.len()).filter(|&j| sums[j] == best).collect()
}

fn check_team(b: &AvailabilityMatrix, team: usize) -> Result<()> {
    if team >= b.teams() {
        return Err(Error::IndexOutOfRange {
            what: "team",
            index: team,
            bound: b.teams(),
        });
    }
    Ok(())
}

/// `b[i][j]` divided by the declared total at `j`; zero for an empty column.
pub fn team_power(b: &AvailabilityMatrix, team: usize, slot: usize) -> Result<Rational> {
    check_team(b, team)?;
    if slot >= b.slots() {
        return Err(Error::IndexOutOfRange {
            what: "slot",
            index: slot,
            bound: b.slots(),
        });
    }
    Ok(Rational::share(b.get(team, slot), b.column_sum(slot)))
}

/// Minimum relative power of `team` over all co-winning slots.
pub fn payoff(b: &AvailabilityMatrix, team: usize) -> Result<Rational> {
    check_team(b, team)?;
    let sums = b.column_sums();
    Ok(payoff_share(b, &sums, &winners_of_sums(&sums), team).to_rational())
}

/// Pay-off of every team, in team order.
pub fn payoffs(b: &AvailabilityMatrix) -> Vec<Rational> {
    payoff_shares(b)
        .into_iter()
        .map(Share::to_rational)
        .collect()
}

pub(crate) fn payoff_shares(b: &AvailabilityMatrix) -> Vec<Share> {
    let sums = b.column_sums();
    let win = winners_of_sums(&sums);
    (0..b.teams())
        .map(|i| payoff_share(b, &sums, &win, i))
        .collect()
}

#[inline]
pub(crate) fn payoff_share(
    b: &AvailabilityMatrix,
    sums: &[u64],
    winners: &[usize],
    team: usize,
) -> Share {
    winners
        .iter()
        .map(|&j| Share::new(b.get(team, j), sums[j]))
        .min()
        .unwrap_or(Share::ZERO)
}
