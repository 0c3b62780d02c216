use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{AvailabilityMatrix, Coalition};

use super::binomial;

/// Set Cover: is there a choice of `k` sets whose union is the universe?
/// Elements are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe: usize,
    sets: Vec<Vec<usize>>,
    k: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidParameters("universe must be nonempty".into()));
        }
        if sets.is_empty() {
            return Err(Error::InvalidParameters("family must contain at least one set".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParameters("cover size k must be at least 1".into()));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (idx, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidParameters(format!("set {} is empty", idx + 1)));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters(format!("set {} repeats an element", idx + 1)));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::InvalidParameters(format!(
                    "set {} contains element {} outside 1..={universe}",
                    idx + 1,
                    e + 1
                )));
            }
            sorted.push(s);
        }
        Ok(SetCoverInstance { universe, sets: sorted, k })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of sets containing `element`.
    pub fn frequency(&self, element: usize) -> usize {
        self.sets.iter().filter(|s| s.binary_search(&element).is_ok()).count()
    }

    /// Checks the regime of the hardness proof: every element in at most 3
    /// sets and `k >= 3`.
    pub fn check_hardness_regime(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidParameters(format!("k = {} < 3", self.k)));
        }
        match (0..self.universe).find(|&e| self.frequency(e) > 3) {
            Some(e) => Err(Error::InvalidParameters(format!(
                "element {} appears in {} sets",
                e + 1,
                self.frequency(e)
            ))),
            None => Ok(()),
        }
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.universe];
        for &s in chosen {
            for &e in &self.sets[s] {
                hit[e] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Game generated from a Set Cover instance.
///
/// Slots: one per element (in element order), then `alpha`, then `beta`.
/// Teams: one per set, then the element dummies grouped by element, then
/// the `alpha` dummies, then the `beta` dummies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverReduction {
    pub matrix: AvailabilityMatrix,
    /// Everyone truthful except the set teams, who declare 0 at `beta`.
    pub profile: AvailabilityMatrix,
    /// Coalition size bound, equal to `k`.
    pub t: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl SetCoverReduction {
    /// The team standing for set `index`.
    pub fn set_team(&self, index: usize) -> usize {
        index
    }

    /// The chosen sets' teams move all their weight to a single unit at
    /// `beta`.
    pub fn cover_deviation(&self, chosen: &[usize]) -> Result<(Coalition, AvailabilityMatrix)> {
        let c = Coalition::new(chosen.iter().map(|&s| self.set_team(s)).collect(), self.matrix.teams())?;
        let mut b = self.profile.clone();
        for &i in c.members() {
            for j in 0..b.slots() {
                b.set(i, j, 0);
            }
            b.set(i, self.beta, 1);
        }
        Ok((c, b))
    }
}

pub fn setcover_to_tpg(sc: &SetCoverInstance) -> Result<SetCoverReduction> {
    let m = sc.sets.len();
    let n_u = sc.universe;
    let width = 2 * m - 1;
    let freq: Vec<usize> = (0..n_u).map(|e| sc.frequency(e)).collect();
    if let Some(e) = (0..n_u).find(|&e| freq[e] > width) {
        return Err(Error::InvalidParameters(format!(
            "element {} appears in {} sets, more than 2m-1 = {width}",
            e + 1,
            freq[e]
        )));
    }
    if sc.k > width {
        return Err(Error::InvalidParameters(format!("k = {} exceeds 2m-1 = {width}", sc.k)));
    }
    let (alpha, beta) = (n_u, n_u + 1);
    let slots = n_u + 2;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for s in &sc.sets {
        let mut row = vec![0u64; slots];
        for &e in s {
            row[e] = 1;
        }
        row[alpha] = 1;
        row[beta] = 1;
        rows.push(row);
    }
    let unit = |slot: usize| {
        let mut row = vec![0u64; slots];
        row[slot] = 1;
        row
    };
    for (e, &f) in freq.iter().enumerate() {
        rows.extend((0..width - f).map(|_| unit(e)));
    }
    rows.extend((0..m).map(|_| unit(alpha)));
    rows.extend((0..width - sc.k).map(|_| unit(beta)));

    let matrix = AvailabilityMatrix::from_rows(&rows)?;
    let mut profile = matrix.clone();
    for i in 0..m {
        profile.set(i, beta, 0);
    }
    Ok(SetCoverReduction {
        matrix,
        profile,
        t: sc.k,
        alpha,
        beta,
    })
}

/// First cover using at most `k` sets: the lexicographically first
/// `k`-subset of the family covering the universe, or the whole family when
/// it has fewer than `k` sets and covers.
pub fn brute_force_set_cover(sc: &SetCoverInstance, budget: u64) -> Result<Option<Vec<usize>>> {
    let m = sc.sets.len();
    let size = sc.k.min(m);
    let needed = binomial(m, size);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok((0..m).combinations(size).find(|c| sc.is_cover(c)))
}
