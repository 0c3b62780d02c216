use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Single-slot subproblem of an improvement-step search.
///
/// Find integers `1 <= x_i <= capacities[i]` with
/// `x_i / (outsider_mass + sum(x)) > thresholds[i]` for every member and
/// `outsider_mass + sum(x) > winner_margin`, so that the slot wins alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdInstance {
    /// True availability of each coalition member at the slot.
    pub capacities: Vec<u64>,
    /// Current pay-off of each member; the new share must beat it strictly.
    pub thresholds: Vec<Rational>,
    /// Declared total of the non-members at the slot.
    pub outsider_mass: u64,
    /// Largest declared total among the other slots once members withdraw.
    pub winner_margin: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSolution {
    pub values: Vec<u64>,
    pub total: u64,
}

impl ThresholdInstance {
    pub fn new(
        capacities: Vec<u64>,
        thresholds: Vec<Rational>,
        outsider_mass: u64,
        winner_margin: u64,
    ) -> Result<Self> {
        if capacities.is_empty() {
            return Err(Error::InvalidParameters("threshold instance needs at least one member".into()));
        }
        if capacities.len() != thresholds.len() {
            return Err(Error::InvalidParameters(format!(
                "{} capacities but {} thresholds",
                capacities.len(),
                thresholds.len()
            )));
        }
        if capacities.contains(&0) {
            return Err(Error::InvalidParameters("capacities must be positive".into()));
        }
        let one = Rational::one();
        if thresholds.iter().any(|p| p.is_negative() || *p > one) {
            return Err(Error::InvalidParameters("thresholds must lie in [0, 1]".into()));
        }
        if thresholds.iter().sum::<Rational>() > one {
            return Err(Error::InvalidParameters("thresholds sum above 1".into()));
        }
        capacities
            .iter()
            .try_fold(outsider_mass, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| Error::InvalidParameters("slot total does not fit in 64 bits".into()))?;
        Ok(ThresholdInstance {
            capacities,
            thresholds,
            outsider_mass,
            winner_margin,
        })
    }

    pub fn members(&self) -> usize {
        self.capacities.len()
    }

    /// Checks a candidate vector against every constraint directly.
    pub fn is_certificate(&self, x: &[u64]) -> bool {
        if x.len() != self.members() {
            return false;
        }
        if x.iter().zip(&self.capacities).any(|(&v, &c)| v < 1 || v > c) {
            return false;
        }
        let denom = self.outsider_mass + x.iter().sum::<u64>();
        if denom <= self.winner_margin {
            return false;
        }
        x.iter()
            .zip(&self.thresholds)
            .all(|(&v, p)| Rational::new(v, denom) > *p)
    }
}

/// Guess-the-total algorithm, `O(t * sum(capacities))`.
///
/// For each candidate total `w` (ascending), every member takes the smallest
/// integer strictly above `threshold * (outsider_mass + w)`. If those minima
/// fit their capacities, sum to at most `w`, and `outsider_mass + w` beats the
/// winner margin, the minima are topped up (lowest index first) until they
/// sum to exactly `w`, which keeps the guessed denominator honest.
pub fn solve_threshold_unary(inst: &ThresholdInstance) -> Option<ThresholdSolution> {
    let t = inst.members() as u64;
    let max_total: u64 = inst.capacities.iter().sum();
    let p = inst.outsider_mass;
    let first = t.max(inst.winner_margin.saturating_sub(p).saturating_add(1));

    let mut minima = vec![0u64; inst.members()];
    'guess: for w in first..=max_total {
        let denom = BigInt::from(p + w);
        let mut need = 0u64;
        for (i, threshold) in inst.thresholds.iter().enumerate() {
            let bound = threshold * &Rational::from_integer(denom.clone());
            let min_x = match bound.next_integer_above().to_u64() {
                Some(v) if v <= inst.capacities[i] => v.max(1),
                _ => continue 'guess,
            };
            minima[i] = min_x;
            need += min_x;
            if need > w {
                continue 'guess;
            }
        }
        let mut values = minima.clone();
        let mut slack = w - need;
        for (v, &cap) in values.iter_mut().zip(&inst.capacities) {
            if slack == 0 {
                break;
            }
            let add = (cap - *v).min(slack);
            *v += add;
            slack -= add;
        }
        debug_assert_eq!(slack, 0);
        return Some(ThresholdSolution { values, total: w });
    }
    None
}
