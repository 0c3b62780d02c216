use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::AvailabilityMatrix;
use crate::solver::SearchConfig;

use super::{exhaustive_ne_search, is_t_strong_ne};

/// A slot where a single team is available, at least as much as any other
/// team is anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SafeSingleSlot {
    pub slot: usize,
    pub team: usize,
    pub availability: u64,
}

pub fn find_safe_single_team_slot(a: &AvailabilityMatrix) -> Option<SafeSingleSlot> {
    // largest entry of each team, computed once
    let row_max: Vec<u64> = a.rows().map(|r| r.iter().copied().max().unwrap_or(0)).collect();
    (0..a.slots()).find_map(|j| {
        let mut present = (0..a.teams()).filter(|&i| a.get(i, j) > 0);
        let team = present.next()?;
        if present.next().is_some() {
            return None;
        }
        let availability = a.get(team, j);
        (0..a.teams())
            .all(|i| i == team || row_max[i] <= availability)
            .then_some(SafeSingleSlot {
                slot: j,
                team,
                availability,
            })
    })
}

/// First slot with at least two available teams such that no team's
/// availability at any other slot exceeds what the rest of the teams can
/// muster at this one.
pub fn find_safe_multiple_team_slot(a: &AvailabilityMatrix) -> Option<usize> {
    let sums = a.column_sums();
    (0..a.slots()).find(|&j| {
        let present = (0..a.teams()).filter(|&i| a.get(i, j) > 0).count();
        present >= 2
            && (0..a.teams()).all(|i| {
                let others = sums[j] - a.get(i, j);
                (0..a.slots()).all(|jj| jj == j || a.get(i, jj) <= others)
            })
    })
}

/// Which branch of the construction produced a profile. Slots and teams are
/// 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionCase {
    AllZero,
    SafeSingleTeam { slot: usize, team: usize },
    SafeMultipleTeam { slot: usize },
    /// Maximum entry 2, maximum column sum 3, slot holding a 2 and a 1.
    TwoOne { slot: usize },
    /// Maximum entry 3, slot holding a 3 and a 1 only.
    ThreeOne { slot: usize },
    /// Maximum entry 3, slot holding a 3 and a 2 only.
    ThreeTwo { slot: usize },
    /// Maximum entry 3, slot holding a 3 and two 1s.
    ThreeOneOne { slot: usize },
}

impl fmt::Display for ConstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionCase::*;
        match *self {
            AllZero => write!(f, "all-zero"),
            SafeSingleTeam { slot, team } => {
                write!(f, "safe single-team slot {} (team {})", slot + 1, team + 1)
            }
            SafeMultipleTeam { slot } => write!(f, "safe multiple-team slot {}", slot + 1),
            TwoOne { slot } => write!(f, "slot {} with availabilities 2,1", slot + 1),
            ThreeOne { slot } => write!(f, "slot {} with availabilities 3,1", slot + 1),
            ThreeTwo { slot } => write!(f, "slot {} with availabilities 3,2", slot + 1),
            ThreeOneOne { slot } => write!(f, "slot {} with availabilities 3,1,1", slot + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub profile: AvailabilityMatrix,
    /// The branch that applied to the instance.
    pub case: ConstructionCase,
    /// The branch's profile failed verification and `profile` came from
    /// exhaustive search instead.
    pub fallback: bool,
}

/// Everyone declares zero except at `slot`, where everyone tells the truth.
fn truth_at(a: &AvailabilityMatrix, slot: usize) -> AvailabilityMatrix {
    let mut b = AvailabilityMatrix::zeros(a.teams(), a.slots()).expect("same shape as a");
    for i in 0..a.teams() {
        b.set(i, slot, a.get(i, slot));
    }
    b
}

/// Teams with positive availability at `slot`, as `(team, availability)`.
fn support(a: &AvailabilityMatrix, slot: usize) -> Vec<(usize, u64)> {
    (0..a.teams())
        .filter_map(|i| Some((i, a.get(i, slot))).filter(|&(_, x)| x > 0))
        .collect()
}

/// First slot whose positive entries are exactly `pattern` (descending),
/// returned with the owning teams in pattern order (ties by team index).
fn slot_with_pattern(a: &AvailabilityMatrix, pattern: &[u64]) -> Option<(usize, Vec<usize>)> {
    (0..a.slots()).find_map(|j| {
        let mut sup = support(a, j);
        if sup.len() != pattern.len() {
            return None;
        }
        sup.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
        sup.iter()
            .zip(pattern)
            .all(|(&(_, x), &p)| x == p)
            .then(|| (j, sup.iter().map(|&(i, _)| i).collect()))
    })
}

fn first_team(
    a: &AvailabilityMatrix,
    slot: usize,
    exclude: &[usize],
    pred: impl Fn(u64) -> bool,
) -> Option<usize> {
    (0..a.teams()).find(|&l| !exclude.contains(&l) && pred(a.get(l, slot)))
}

fn declare_truth(b: &mut AvailabilityMatrix, a: &AvailabilityMatrix, team: usize, slot: usize) {
    b.set(team, slot, a.get(team, slot));
}

/// 2 and 1 at `slot` (teams `big`, `small`); one unit of blocking at every
/// other slot, from `small` if it can, else from the lowest other team.
fn build_two_one(a: &AvailabilityMatrix, slot: usize, big: usize, small: usize) -> AvailabilityMatrix {
    let mut b = truth_at(a, slot);
    for j in (0..a.slots()).filter(|&j| j != slot) {
        if a.get(small, j) > 0 {
            b.set(small, j, 1);
        } else if let Some(k) = first_team(a, j, &[big], |x| x > 0) {
            b.set(k, j, 1);
        }
    }
    b
}

/// 3 and 1 at `slot` (teams `big`, `small`).
fn build_three_one(a: &AvailabilityMatrix, slot: usize, big: usize, small: usize) -> AvailabilityMatrix {
    let mut b = truth_at(a, slot);
    for j in (0..a.slots()).filter(|&j| j != slot) {
        if let Some(l) = first_team(a, j, &[big, small], |x| x == 3) {
            declare_truth(&mut b, a, l, j);
        } else if a.get(small, j) > 0 {
            declare_truth(&mut b, a, small, j);
        } else if let Some(l) = first_team(a, j, &[big, small], |x| x > 0) {
            declare_truth(&mut b, a, l, j);
        }
    }
    b
}

/// 3 and 2 at `slot` (teams `big`, `mid`). At every other slot where `big`
/// has 3, the other teams declare a total of (at least) two.
fn build_three_two(a: &AvailabilityMatrix, slot: usize, big: usize, mid: usize) -> AvailabilityMatrix {
    let mut b = truth_at(a, slot);
    for j in (0..a.slots()).filter(|&j| j != slot && a.get(big, j) == 3) {
        match a.get(mid, j) {
            x if x >= 2 => declare_truth(&mut b, a, mid, j),
            1 => {
                declare_truth(&mut b, a, mid, j);
                if let Some(l) = first_team(a, j, &[big, mid], |x| x > 0 && x < 3) {
                    declare_truth(&mut b, a, l, j);
                }
            }
            _ => {
                if let Some(l) = first_team(a, j, &[big, mid], |x| x > 1) {
                    declare_truth(&mut b, a, l, j);
                } else {
                    let ones: Vec<usize> = (0..a.teams())
                        .filter(|&l| l != big && l != mid && a.get(l, j) == 1)
                        .take(2)
                        .collect();
                    for l in ones {
                        declare_truth(&mut b, a, l, j);
                    }
                }
            }
        }
    }
    b
}

/// 3, 1, 1 at `slot` (teams `big`, `s1`, `s2` with `s1 < s2`).
fn build_three_one_one(
    a: &AvailabilityMatrix,
    slot: usize,
    big: usize,
    s1: usize,
    s2: usize,
) -> AvailabilityMatrix {
    let mut b = truth_at(a, slot);
    for j in (0..a.slots()).filter(|&j| j != slot && a.get(big, j) == 3) {
        let (u, v) = (a.get(s1, j), a.get(s2, j));
        if u > 0 && v > 0 {
            b.set(s1, j, 1);
            b.set(s2, j, 1);
            continue;
        }
        // exactly one of the two small teams, or neither, is present here
        let present = if u > 0 {
            Some(s1)
        } else if v > 0 {
            Some(s2)
        } else {
            None
        };
        match present {
            Some(p) if a.get(p, j) > 1 => declare_truth(&mut b, a, p, j),
            Some(p) => {
                declare_truth(&mut b, a, p, j);
                if let Some(l) = first_team(a, j, &[big, p], |x| x > 0 && x < 3) {
                    declare_truth(&mut b, a, l, j);
                }
            }
            None => {
                let ones: Vec<usize> = (0..a.teams())
                    .filter(|&l| a.get(l, j) == 1)
                    .take(2)
                    .collect();
                for l in ones {
                    declare_truth(&mut b, a, l, j);
                }
            }
        }
    }
    b
}

fn candidate_1strong(a: &AvailabilityMatrix) -> Option<Construction> {
    let done = |profile, case| Some(Construction { profile, case, fallback: false });
    if a.a_max() == 0 {
        return done(a.clone(), ConstructionCase::AllZero);
    }
    if let Some(s) = find_safe_single_team_slot(a) {
        return done(
            truth_at(a, s.slot),
            ConstructionCase::SafeSingleTeam {
                slot: s.slot,
                team: s.team,
            },
        );
    }
    if let Some(slot) = find_safe_multiple_team_slot(a) {
        return done(truth_at(a, slot), ConstructionCase::SafeMultipleTeam { slot });
    }
    match a.a_max() {
        2 => {
            let (slot, t) = slot_with_pattern(a, &[2, 1])?;
            done(build_two_one(a, slot, t[0], t[1]), ConstructionCase::TwoOne { slot })
        }
        3 => {
            if let Some((slot, t)) = slot_with_pattern(a, &[3, 1]) {
                return done(build_three_one(a, slot, t[0], t[1]), ConstructionCase::ThreeOne { slot });
            }
            if let Some((slot, t)) = slot_with_pattern(a, &[3, 2]) {
                return done(build_three_two(a, slot, t[0], t[1]), ConstructionCase::ThreeTwo { slot });
            }
            let (slot, t) = slot_with_pattern(a, &[3, 1, 1])?;
            done(
                build_three_one_one(a, slot, t[0], t[1], t[2]),
                ConstructionCase::ThreeOneOne { slot },
            )
        }
        _ => None,
    }
}

/// Builds a 1-strong Nash equilibrium for instances with maximum entry at
/// most 3, walking the case ladder (all-zero, safe single-team slot, safe
/// multiple-team slot, then the small-pattern slots with blocking
/// declarations).
///
/// The ladder's profile is re-checked by the verifier. The 3,1 branch can
/// leave a blocked slot that an idle team tops up into a new single winner;
/// when that happens the lexicographically first equilibrium is found by
/// exhaustive search within `config.budget` and `fallback` is set.
pub fn construct_1strong_ne(a: &AvailabilityMatrix, config: &SearchConfig) -> Result<Construction> {
    if a.a_max() >= 4 {
        return Err(Error::Unsupported(format!(
            "maximum availability {} >= 4: existence of a 1-strong equilibrium is an open problem",
            a.a_max()
        )));
    }
    let c = candidate_1strong(a).ok_or_else(|| {
        Error::Internal(format!("no construction case applies to instance {a:?}"))
    })?;
    if is_t_strong_ne(a, &c.profile, 1, config)?.is_equilibrium() {
        return Ok(c);
    }
    match exhaustive_ne_search(a, 1, config)? {
        Some(profile) => Ok(Construction {
            profile,
            case: c.case,
            fallback: true,
        }),
        None => Err(Error::Internal(format!(
            "instance {a:?} has no 1-strong equilibrium"
        ))),
    }
}

/// How a 2-strong profile was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionMethod {
    /// A structured candidate passed verification.
    Direct(String),
    /// Every structured candidate failed; exhaustive search found one.
    ExhaustiveFallback,
}

impl fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionMethod::Direct(desc) => write!(f, "direct ({desc})"),
            ConstructionMethod::ExhaustiveFallback => write!(f, "exhaustive fallback"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStrongConstruction {
    pub profile: AvailabilityMatrix,
    pub method: ConstructionMethod,
}

/// One unit at every slot other than `slot`, preferring teams absent from
/// `slot`, lowest index first.
fn with_unit_blocking(a: &AvailabilityMatrix, slot: usize) -> AvailabilityMatrix {
    let mut b = truth_at(a, slot);
    for j in (0..a.slots()).filter(|&j| j != slot) {
        let outsider = (0..a.teams()).find(|&l| a.get(l, j) > 0 && a.get(l, slot) == 0);
        if let Some(l) = outsider.or_else(|| first_team(a, j, &[], |x| x > 0)) {
            b.set(l, j, 1);
        }
    }
    b
}

/// Structured 2-strong candidates for 0/1 instances, in the order tried.
fn candidates_2strong(a: &AvailabilityMatrix) -> Vec<(String, AvailabilityMatrix)> {
    let mut out = Vec::new();
    if a.a_max() == 0 {
        out.push(("all-zero".to_string(), a.clone()));
        return out;
    }
    if let Some(s) = find_safe_single_team_slot(a) {
        out.push((
            format!("safe single-team slot {}", s.slot + 1),
            truth_at(a, s.slot),
        ));
    }
    let sums = a.column_sums();
    let mut order: Vec<usize> = (0..a.slots()).filter(|&j| sums[j] > 0).collect();
    order.sort_by(|&x, &y| sums[y].cmp(&sums[x]).then(x.cmp(&y)));
    for &j in &order {
        out.push((format!("truth at slot {}", j + 1), truth_at(a, j)));
        out.push((
            format!("truth at slot {} with unit blocking", j + 1),
            with_unit_blocking(a, j),
        ));
    }
    let top: Vec<usize> = order.iter().copied().filter(|&j| sums[j] == sums[order[0]]).collect();
    if top.len() > 1 {
        out.push((format!("truth at slots {}", one_based(&top)), truth_at_slots(a, &top)));
    }
    for &j in &order {
        let twins: Vec<usize> = (0..a.slots())
            .filter(|&jj| (0..a.teams()).all(|i| a.get(i, jj) == a.get(i, j)))
            .collect();
        if twins.len() > 1 && twins[0] == j && twins != top {
            out.push((format!("truth at slots {}", one_based(&twins)), truth_at_slots(a, &twins)));
        }
    }
    out
}

fn one_based(slots: &[usize]) -> String {
    slots.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Truthful at every slot in `slots`, zero elsewhere; the slots tie.
fn truth_at_slots(a: &AvailabilityMatrix, slots: &[usize]) -> AvailabilityMatrix {
    let mut b = truth_at(a, slots[0]);
    for &j in &slots[1..] {
        for i in 0..a.teams() {
            b.set(i, j, a.get(i, j));
        }
    }
    b
}

/// Builds a 2-strong Nash equilibrium for 0/1 instances.
///
/// Structured candidates (safe single-team slot, then each slot by
/// decreasing total with and without one unit of blocking per rival slot,
/// then tied groups of maximum or identical slots) are verified in turn; if all fail, exhaustive search within
/// `config.budget` is used and the result says so.
pub fn construct_2strong_ne_amax1(
    a: &AvailabilityMatrix,
    config: &SearchConfig,
) -> Result<TwoStrongConstruction> {
    if a.a_max() > 1 {
        return Err(Error::Unsupported(format!(
            "2-strong construction needs maximum availability at most 1, got {}",
            a.a_max()
        )));
    }
    let t = 2.min(a.teams());
    for (desc, profile) in candidates_2strong(a) {
        if is_t_strong_ne(a, &profile, t, config)?.is_equilibrium() {
            return Ok(TwoStrongConstruction {
                profile,
                method: ConstructionMethod::Direct(desc),
            });
        }
    }
    match exhaustive_ne_search(a, t, config)? {
        Some(profile) => Ok(TwoStrongConstruction {
            profile,
            method: ConstructionMethod::ExhaustiveFallback,
        }),
        None => Err(Error::Internal(format!(
            "no 2-strong equilibrium exists for 0/1 instance {a:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u64]]) -> AvailabilityMatrix {
        AvailabilityMatrix::from_rows(rows).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn three_one_gap_falls_back_to_search() {
        let a = m(&[&[0, 2, 3], &[3, 3, 1], &[2, 0, 0]]);
        let c = construct_1strong_ne(&a, &cfg()).unwrap();
        assert_eq!(c.case, ConstructionCase::ThreeOne { slot: 2 });
        assert!(c.fallback);
        assert!(is_t_strong_ne(&a, &c.profile, 1, &cfg()).unwrap().is_equilibrium());
    }

    fn two_safe_slots_matrix() -> AvailabilityMatrix {
        m(&[&[1, 2, 0, 0], &[2, 0, 2, 0], &[1, 0, 0, 1], &[0, 1, 1, 3]])
    }

    #[test]
    fn safe_single_examples() {
        assert_eq!(
            find_safe_single_team_slot(&m(&[&[0, 2], &[1, 0]])),
            Some(SafeSingleSlot { slot: 1, team: 0, availability: 2 })
        );
        assert_eq!(
            find_safe_single_team_slot(&m(&[&[2, 0], &[0, 3]])),
            Some(SafeSingleSlot { slot: 1, team: 1, availability: 3 })
        );
        assert_eq!(find_safe_single_team_slot(&m(&[&[1, 1], &[1, 1]])), None);
    }

    #[test]
    fn safe_multiple_examples() {
        assert_eq!(find_safe_multiple_team_slot(&two_safe_slots_matrix()), Some(0));
        // column 4 qualifies as well
        let mut shifted = two_safe_slots_matrix();
        for i in 0..4 {
            shifted.set(i, 0, 0);
        }
        assert_eq!(find_safe_multiple_team_slot(&shifted), Some(3));
        // both columns of the two-slot example qualify; the first is reported
        assert_eq!(find_safe_multiple_team_slot(&m(&[&[2, 0], &[2, 2], &[0, 2]])), Some(0));
        // column sum 6 >= 2 * a_max with two teams present
        assert_eq!(find_safe_multiple_team_slot(&m(&[&[3, 3], &[3, 0]])), Some(0));
        assert_eq!(find_safe_multiple_team_slot(&m(&[&[2, 2], &[1, 0], &[0, 1]])), None);
    }

    #[test]
    fn two_safe_slots_matrix_uses_first_safe_slot() {
        let a = two_safe_slots_matrix();
        let c = construct_1strong_ne(&a, &cfg()).unwrap();
        assert_eq!(c.case, ConstructionCase::SafeMultipleTeam { slot: 0 });
        assert_eq!(c.profile, m(&[&[1, 0, 0, 0], &[2, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]));
    }

    #[test]
    fn small_examples() {
        let c = construct_1strong_ne(&m(&[&[2, 0], &[2, 2], &[0, 2]]), &cfg()).unwrap();
        assert_eq!(c.profile, m(&[&[2, 0], &[2, 0], &[0, 0]]));
        assert_eq!(construct_1strong_ne(&m(&[&[3]]), &cfg()).unwrap().profile, m(&[&[3]]));
        let z = AvailabilityMatrix::zeros(2, 3).unwrap();
        assert_eq!(construct_1strong_ne(&z, &cfg()).unwrap().case, ConstructionCase::AllZero);
        assert!(matches!(construct_1strong_ne(&m(&[&[4]]), &cfg()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pattern_cases_fire() {
        let c = construct_1strong_ne(&m(&[&[2, 2], &[1, 0], &[0, 1]]), &cfg()).unwrap();
        assert_eq!(c.case, ConstructionCase::TwoOne { slot: 0 });
        let c = construct_1strong_ne(&m(&[&[3, 3], &[1, 0], &[0, 1]]), &cfg()).unwrap();
        assert_eq!(c.case, ConstructionCase::ThreeOne { slot: 0 });
    }

    #[test]
    fn two_strong_examples() {
        let cfg = SearchConfig::default();
        for a in [
            m(&[&[1, 1], &[1, 1]]),
            m(&[&[1]]),
            m(&[&[1, 0], &[0, 1]]),
            m(&[&[1, 1], &[1, 1], &[1, 0]]),
        ] {
            let c = construct_2strong_ne_amax1(&a, &cfg).unwrap();
            assert!(is_t_strong_ne(&a, &c.profile, 2.min(a.teams()), &cfg)
                .unwrap()
                .is_equilibrium());
        }
        assert_eq!(construct_2strong_ne_amax1(&m(&[&[1]]), &cfg).unwrap().profile, m(&[&[1]]));
        assert!(construct_2strong_ne_amax1(&m(&[&[2]]), &cfg).is_err());
    }
}
