use std::fmt;

use crate::error::{Error, Result};

/// Non-negative `n x m` integer matrix: row `i` is team `i`, column `j` is slot `j`.
///
/// Used both for true availabilities and for declared profiles. Construction
/// guarantees `n >= 1`, `m >= 1` and that the sum of all entries fits in a
/// `u64`, so every column sum does too.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AvailabilityMatrix {
    n: usize,
    m: usize,
    data: Vec<u64>,
}

impl AvailabilityMatrix {
    /// Row-major constructor.
    pub fn new(n: usize, m: usize, data: Vec<u64>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameters(format!(
                "matrix must have at least one team and one slot, got {n}x{m}"
            )));
        }
        if data.len() != n * m {
            return Err(Error::InvalidParameters(format!(
                "{n}x{m} matrix needs {} entries, got {}",
                n * m,
                data.len()
            )));
        }
        data.iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| {
                Error::InvalidParameters("total availability does not fit in 64 bits".into())
            })?;
        Ok(AvailabilityMatrix { n, m, data })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.as_ref().len() != m) {
            return Err(Error::InvalidParameters(format!(
                "row {} has {} entries, expected {m}",
                i + 1,
                r.as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(n, m, data)
    }

    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, vec![0; n * m])
    }

    pub fn teams(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    #[inline]
    pub fn get(&self, team: usize, slot: usize) -> u64 {
        self.data[team * self.m + slot]
    }

    /// Overwrites one entry. Callers keep the total within `u64`.
    #[inline]
    pub fn set(&mut self, team: usize, slot: usize, value: u64) {
        self.data[team * self.m + slot] = value;
    }

    pub fn row(&self, team: usize) -> &[u64] {
        &self.data[team * self.m..(team + 1) * self.m]
    }

    pub(crate) fn row_mut(&mut self, team: usize) -> &mut [u64] {
        &mut self.data[team * self.m..(team + 1) * self.m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.data.chunks(self.m)
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn column_sum(&self, slot: usize) -> u64 {
        (0..self.n).map(|i| self.get(i, slot)).sum()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.m];
        for row in self.rows() {
            for (s, &x) in sums.iter_mut().zip(row) {
                *s += x;
            }
        }
        sums
    }

    /// `s`: sum of all entries.
    pub fn total(&self) -> u64 {
        self.data.iter().sum()
    }

    /// Largest single entry.
    pub fn a_max(&self) -> u64 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// `x`: largest column sum.
    pub fn max_column_sum(&self) -> u64 {
        self.column_sums().into_iter().max().unwrap_or(0)
    }

    /// Number of profiles `B` with `0 <= B <= self`, saturating at `u128::MAX`.
    pub fn profile_count(&self) -> u128 {
        self.data
            .iter()
            .fold(1u128, |acc, &x| acc.saturating_mul(x as u128 + 1))
    }
}

impl fmt::Debug for AvailabilityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

/// Non-empty set of distinct team indices, stored in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Coalition(Vec<usize>);

impl Coalition {
    pub fn new(mut members: Vec<usize>, teams: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidCoalition("coalition is empty".into()));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidCoalition(format!(
                "team {} listed twice",
                w[0] + 1
            )));
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= teams) {
            return Err(Error::InvalidCoalition(format!(
                "team {} does not exist (instance has {teams} teams)",
                bad + 1
            )));
        }
        Ok(Coalition(members))
    }

    pub fn singleton(team: usize) -> Self {
        Coalition(vec![team])
    }

    /// Members must already be strictly increasing; used by enumerators.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Coalition(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, team: usize) -> bool {
        self.0.binary_search(&team).is_ok()
    }

    pub(crate) fn check_against(&self, teams: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last < teams => Ok(()),
            _ => Err(Error::InvalidCoalition(format!(
                "coalition {self} does not fit an instance with {teams} teams"
            ))),
        }
    }
}

/// 1-based, space separated.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}
