use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{AvailabilityMatrix, Coalition};
use crate::solver::ImprovementStep;

use super::binomial;

/// Restricted exact cover by 3-sets: `3n` sets of three elements over `3n`
/// elements, every element in exactly three sets, `n >= 2`. Elements are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCoverInstance {
    n: usize,
    sets: Vec<[usize; 3]>,
}

impl ExactCoverInstance {
    pub fn new(n: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!("n = {n}, need n >= 2")));
        }
        let size = 3 * n;
        if sets.len() != size {
            return Err(Error::InvalidParameters(format!(
                "need exactly {size} sets, got {}",
                sets.len()
            )));
        }
        let mut freq = vec![0usize; size];
        let mut sorted = Vec::with_capacity(size);
        for (idx, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::InvalidParameters(format!("set {} repeats an element", idx + 1)));
            }
            if s[2] >= size {
                return Err(Error::InvalidParameters(format!(
                    "set {} contains element {} outside 1..={size}",
                    idx + 1,
                    s[2] + 1
                )));
            }
            for e in s {
                freq[e] += 1;
            }
            sorted.push(s);
        }
        if let Some(e) = (0..size).find(|&e| freq[e] != 3) {
            return Err(Error::InvalidParameters(format!(
                "element {} appears in {} sets, need exactly 3",
                e + 1,
                freq[e]
            )));
        }
        Ok(ExactCoverInstance { n, sets: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }
}

/// Game generated from an exact-cover instance: slots are the `3n` elements
/// then `alpha`; team `j` stands for set `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cReduction {
    pub matrix: AvailabilityMatrix,
    /// Coalition size bound `2n`.
    pub t: usize,
    pub alpha: usize,
}

impl X3cReduction {
    /// Every team declares its full availability at its elements and 0 at
    /// `alpha`, so all element slots tie.
    pub fn canonical_profile(&self) -> AvailabilityMatrix {
        let mut b = self.matrix.clone();
        for i in 0..b.teams() {
            b.set(i, self.alpha, 0);
        }
        b
    }
}

pub fn x3c_to_tpg(xc: &ExactCoverInstance) -> Result<X3cReduction> {
    let size = 3 * xc.n;
    let alpha = size;
    let rows: Vec<Vec<u64>> = xc
        .sets
        .iter()
        .map(|s| {
            let mut row = vec![0u64; size + 1];
            for &e in s {
                row[e] = xc.n as u64;
            }
            row[alpha] = 1;
            row
        })
        .collect();
    Ok(X3cReduction {
        matrix: AvailabilityMatrix::from_rows(&rows)?,
        t: 2 * xc.n,
        alpha,
    })
}

/// The teams outside `cover` drop every element slot and declare 1 at
/// `alpha`. Not verified here.
pub fn case1c_deviation(
    red: &X3cReduction,
    before: &AvailabilityMatrix,
    cover: &[usize],
) -> Result<ImprovementStep> {
    let teams = red.matrix.teams();
    let outside: Vec<usize> = (0..teams).filter(|j| !cover.contains(j)).collect();
    let coalition = Coalition::new(outside, teams)?;
    let mut after = before.clone();
    for &i in coalition.members() {
        for j in 0..after.slots() {
            after.set(i, j, 0);
        }
        after.set(i, red.alpha, 1);
    }
    Ok(ImprovementStep::between(before, after, coalition))
}

/// First `n` pairwise disjoint sets (lexicographic by set index).
pub fn brute_force_exact_cover(xc: &ExactCoverInstance, budget: u64) -> Result<Option<Vec<usize>>> {
    let m = xc.sets.len();
    let needed = binomial(m, xc.n);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok((0..m).combinations(xc.n).find(|c| {
        let mut hit = vec![false; 3 * xc.n];
        c.iter()
            .flat_map(|&s| xc.sets[s])
            .all(|e| !std::mem::replace(&mut hit[e], true))
    }))
}
