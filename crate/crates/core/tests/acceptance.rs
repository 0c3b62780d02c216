//! Acceptance criteria, one result line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{golden_cases, m};
use tpg::equilibrium::{
    construct_1strong_ne, construct_2strong_ne_amax1, exhaustive_ne_search, is_t_strong_ne,
    truth_raise_step, ConstructionMethod,
};
use tpg::reductions::{
    brute_force_exact_cover, brute_force_set_cover, case1c_deviation, random_instance,
    setcover_to_tpg, x3c_to_tpg, ExactCoverInstance, SetCoverInstance,
};
use tpg::solver::{coalitions_up_to, ImprovementStep, SearchConfig};
use tpg::{
    brute_force_improvement, find_improvement_any, find_improvement_step, payoff, payoffs,
    verify_improvement, winners, AvailabilityMatrix, Coalition, Rational,
};

struct Report {
    pass: bool,
    detail: String,
}

fn report(pass: bool, detail: impl Into<String>) -> Report {
    Report { pass, detail: detail.into() }
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn coalition(members: &[usize], teams: usize) -> Coalition {
    Coalition::new(members.to_vec(), teams).unwrap()
}

fn step_to(before: &AvailabilityMatrix, after: AvailabilityMatrix, members: &[usize]) -> ImprovementStep {
    ImprovementStep::between(before, after, coalition(members, before.teams()))
}

/// Every matrix of the given shape with entries in `0..=a_max`.
fn all_matrices(n: usize, m: usize, a_max: u64) -> impl Iterator<Item = AvailabilityMatrix> {
    let cells = (n * m) as u32;
    let radix = a_max + 1;
    (0..radix.pow(cells)).map(move |mut code| {
        let data = (0..cells)
            .map(|_| {
                let v = code % radix;
                code /= radix;
                v
            })
            .collect();
        AvailabilityMatrix::new(n, m, data).unwrap()
    })
}

/// Every profile below `a`.
fn all_profiles(a: &AvailabilityMatrix) -> impl Iterator<Item = AvailabilityMatrix> + '_ {
    let total = a.profile_count() as u64;
    (0..total).map(move |mut code| {
        let data = a
            .entries()
            .iter()
            .map(|&x| {
                let v = code % (x + 1);
                code /= x + 1;
                v
            })
            .collect();
        AvailabilityMatrix::new(a.teams(), a.slots(), data).unwrap()
    })
}

fn random_profile(a: &AvailabilityMatrix, rng: &mut ChaCha8Rng) -> AvailabilityMatrix {
    let data = a.entries().iter().map(|&x| rng.gen_range(0..=x)).collect();
    AvailabilityMatrix::new(a.teams(), a.slots(), data).unwrap()
}

fn criterion_1() -> Report {
    let a = m(&[&[2, 2], &[1, 2], &[3, 2]]);
    let cfg = SearchConfig::default();
    let mut problems = Vec::new();

    if payoffs(&a) != vec![r("1/3"), r("1/6"), r("1/3")] {
        problems.push(format!("truthful pay-offs {:?}", payoffs(&a)));
    }
    let step = find_improvement_step(&a, &a, &coalition(&[1], 3)).unwrap();
    match &step {
        Some(s) if s.new_rows == vec![vec![0, 2]] && s.new_payoffs == vec![r("1/3")] => {}
        other => problems.push(format!("t2 step {other:?}")),
    }
    let b1 = m(&[&[2, 2], &[0, 2], &[3, 2]]);
    let b2 = m(&[&[2, 0], &[0, 2], &[3, 0]]);
    let follow = step_to(&b1, b2.clone(), &[0, 2]);
    if !verify_improvement(&a, &b1, &follow) || follow.new_payoffs != vec![r("2/5"), r("3/5")] {
        problems.push(format!("{{t1,t3}} follow-up {:?}", follow.new_payoffs));
    }
    let bp = m(&[&[2, 2], &[1, 2], &[3, 0]]);
    if !is_t_strong_ne(&a, &bp, 1, &cfg).unwrap().is_equilibrium() {
        problems.push("B' is not 1-strong".into());
    }
    match is_t_strong_ne(&a, &bp, 2, &cfg).unwrap().witness {
        Some(w)
            if w.coalition == coalition(&[0, 1], 3)
                && w.new_rows == vec![vec![0, 2], vec![0, 2]]
                && w.new_payoffs == vec![r("1/2"), r("1/2")] => {}
        other => problems.push(format!("B' 2-strong witness {other:?}")),
    }
    if problems.is_empty() {
        report(true, "pay-offs 1/3,1/6,1/3; t2 -> (0,2) at 1/3; {t1,t3} -> 2/5,3/5; B' 1-strong, pair {1,2} -> (0,2) at 1/2 each")
    } else {
        report(false, problems.join("; "))
    }
}

/// One listed deviation line: `from(x, y) ->coalition to(x, y)` over the
/// admissible `(x, y)`.
struct Line {
    label: &'static str,
    members: &'static [usize],
    from: fn(u64, u64) -> [[u64; 2]; 3],
    to: fn(u64, u64) -> [[u64; 2]; 3],
    xs: std::ops::RangeInclusive<u64>,
    ys: std::ops::RangeInclusive<u64>,
    when: fn(u64, u64) -> bool,
}

fn deviation_lines() -> Vec<Line> {
    let any = |_: u64, _: u64| true;
    vec![
        Line { label: "[x0,01,0y] ->{t3} [x0,01,02]", members: &[2], from: |x, y| [[x, 0], [0, 1], [0, y]], to: |x, _| [[x, 0], [0, 1], [0, 2]], xs: 0..=2, ys: 0..=1, when: any },
        Line { label: "[x0,01,02] ->{t2} [x0,02,02]", members: &[1], from: |x, _| [[x, 0], [0, 1], [0, 2]], to: |x, _| [[x, 0], [0, 2], [0, 2]], xs: 0..=2, ys: 0..=0, when: any },
        Line { label: "[x0,02,0y] ->{t3} [x0,02,02]", members: &[2], from: |x, y| [[x, 0], [0, 2], [0, y]], to: |x, _| [[x, 0], [0, 2], [0, 2]], xs: 0..=2, ys: 0..=1, when: any },
        Line { label: "[x0,02,02] ->{t1,t2} [10,20,02]", members: &[0, 1], from: |x, _| [[x, 0], [0, 2], [0, 2]], to: |_, _| [[1, 0], [2, 0], [0, 2]], xs: 0..=2, ys: 0..=0, when: any },
        Line { label: "[x0,11,0y] ->{t2} [x0,20,0y] (x>y)", members: &[1], from: |x, y| [[x, 0], [1, 1], [0, y]], to: |x, y| [[x, 0], [2, 0], [0, y]], xs: 0..=2, ys: 0..=2, when: |x, y| x > y },
        Line { label: "[x0,11,0y] ->{t2} [x0,20,0y] (x=y)", members: &[1], from: |x, y| [[x, 0], [1, 1], [0, y]], to: |x, y| [[x, 0], [2, 0], [0, y]], xs: 0..=2, ys: 0..=2, when: |x, y| x == y },
        Line { label: "[x0,11,0y] ->{t2} [x0,02,0y] (x<y)", members: &[1], from: |x, y| [[x, 0], [1, 1], [0, y]], to: |x, y| [[x, 0], [0, 2], [0, y]], xs: 0..=2, ys: 0..=2, when: |x, y| x < y },
        Line { label: "[x0,12,0y] ->{t3} [x0,12,02]", members: &[2], from: |x, y| [[x, 0], [1, 2], [0, y]], to: |x, _| [[x, 0], [1, 2], [0, 2]], xs: 0..=2, ys: 0..=1, when: any },
        Line { label: "[x0,12,02] ->{t2} [x0,20,02]", members: &[1], from: |x, _| [[x, 0], [1, 2], [0, 2]], to: |x, _| [[x, 0], [2, 0], [0, 2]], xs: 0..=1, ys: 0..=0, when: any },
        Line { label: "[20,12,02] ->{t1,t2} [10,20,02]", members: &[0, 1], from: |_, _| [[2, 0], [1, 2], [0, 2]], to: |_, _| [[1, 0], [2, 0], [0, 2]], xs: 0..=0, ys: 0..=0, when: any },
        Line { label: "[x0,22,0y] ->{t1} [20,22,0y]", members: &[0], from: |x, y| [[x, 0], [2, 2], [0, y]], to: |_, y| [[2, 0], [2, 2], [0, y]], xs: 0..=1, ys: 0..=1, when: any },
        Line { label: "[20,22,02] ->{t1,t2} [10,20,02]", members: &[0, 1], from: |_, _| [[2, 0], [2, 2], [0, 2]], to: |_, _| [[1, 0], [2, 0], [0, 2]], xs: 0..=0, ys: 0..=0, when: any },
        Line { label: "[20,22,01] ->{t2} [20,02,01]", members: &[1], from: |_, _| [[2, 0], [2, 2], [0, 1]], to: |_, _| [[2, 0], [0, 2], [0, 1]], xs: 0..=0, ys: 0..=0, when: any },
        Line { label: "[10,22,02] ->{t2} [10,20,02]", members: &[1], from: |_, _| [[1, 0], [2, 2], [0, 2]], to: |_, _| [[1, 0], [2, 0], [0, 2]], xs: 0..=0, ys: 0..=0, when: any },
    ]
}

fn criterion_2() -> Report {
    let a = m(&[&[2, 0], &[2, 2], &[0, 2]]);
    let cfg = SearchConfig::default();
    let mut problems = Vec::new();
    let profiles = a.profile_count();
    let found = exhaustive_ne_search(&a, 2, &cfg).unwrap();
    if let Some(b) = &found {
        problems.push(format!("search found {b:?}"));
    }
    let mut checked = 0;
    for line in deviation_lines() {
        for x in line.xs.clone() {
            for y in line.ys.clone() {
                if !(line.when)(x, y) {
                    continue;
                }
                checked += 1;
                let before = m(&(line.from)(x, y).iter().map(|r| &r[..]).collect::<Vec<_>>());
                let after = m(&(line.to)(x, y).iter().map(|r| &r[..]).collect::<Vec<_>>());
                let step = step_to(&before, after, line.members);
                if !verify_improvement(&a, &before, &step) {
                    problems.push(format!(
                        "{} at x={x}, y={y}: pay-offs {} -> {}",
                        line.label,
                        step.old_payoffs.iter().join(","),
                        step.new_payoffs.iter().join(",")
                    ));
                }
            }
        }
    }
    let summary = format!(
        "search over all {profiles} profiles (the criterion says 243) finds {}; {checked} deviation instances checked",
        if found.is_none() { "none" } else { "one" }
    );
    if problems.is_empty() {
        report(true, summary)
    } else {
        report(false, format!("{summary}; failing: {}", problems.join("; ")))
    }
}

fn oracle_agrees(a: &AvailabilityMatrix, b: &AvailabilityMatrix) -> Result<usize, String> {
    let mut n = 0;
    for c in coalitions_up_to(a.teams(), a.teams()) {
        let fast = find_improvement_step(a, b, &c).unwrap();
        let slow = brute_force_improvement(a, b, &c, u64::MAX).unwrap();
        if fast.is_some() != slow.is_some() {
            return Err(format!("A={a:?} B={b:?} coalition {{{c}}}: solver {} oracle {}", fast.is_some(), slow.is_some()));
        }
        if let Some(s) = &fast {
            if !verify_improvement(a, b, s) {
                return Err(format!("A={a:?} B={b:?} coalition {{{c}}}: solver step fails verification"));
            }
        }
        n += 1;
    }
    Ok(n)
}

fn criterion_3() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut games, mut probes) = (0usize, 0usize);
    let mut check = |a: &AvailabilityMatrix, b: &AvailabilityMatrix| -> Result<(), String> {
        probes += oracle_agrees(a, b)?;
        games += 1;
        Ok(())
    };
    for n in 1..=3 {
        for mm in 1..=3 {
            for a in all_matrices(n, mm, 2) {
                if n * mm <= 4 {
                    for b in all_profiles(&a) {
                        if let Err(e) = check(&a, &b) {
                            return report(false, e);
                        }
                    }
                } else {
                    let zero = AvailabilityMatrix::zeros(n, mm).unwrap();
                    let extra = [random_profile(&a, &mut rng), random_profile(&a, &mut rng)];
                    for b in [&a, &zero, &extra[0], &extra[1]] {
                        if let Err(e) = check(&a, b) {
                            return report(false, e);
                        }
                    }
                }
            }
        }
    }
    let mut random = 0;
    while random < 1000 {
        let (n, mm) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a_max = rng.gen_range(1..=4);
        let a = random_instance(n, mm, a_max, rng.gen()).unwrap();
        if a.total() > 20 {
            continue;
        }
        let b = random_profile(&a, &mut rng);
        if let Err(e) = check(&a, &b) {
            return report(false, e);
        }
        random += 1;
    }
    report(
        true,
        format!("{games} games ({random} random with s <= 20), {probes} coalition probes, zero mismatches"),
    )
}

fn criterion_4() -> Report {
    let cfg = SearchConfig::default();
    let (mut count, mut fallback) = (0usize, 0usize);
    // Ok(true) when the search fallback was needed.
    let check = |a: &AvailabilityMatrix| -> Result<bool, String> {
        let c = construct_1strong_ne(a, &cfg).map_err(|e| format!("{a:?}: {e}"))?;
        if !is_t_strong_ne(a, &c.profile, 1, &cfg).unwrap().is_equilibrium() {
            return Err(format!("{a:?}: profile {:?} not 1-strong", c.profile));
        }
        Ok(c.fallback)
    };
    for n in 1..=3 {
        for mm in 1..=3 {
            for a in all_matrices(n, mm, 3) {
                match check(&a) {
                    Ok(f) => {
                        count += 1;
                        fallback += f as usize;
                    }
                    Err(e) => return report(false, e),
                }
            }
        }
    }
    let exhaustive_fallback = fallback;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut random = 0;
    while random < 1000 {
        let (n, mm) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let a = random_instance(n, mm, 3, rng.gen()).unwrap();
        if a.a_max() != 3 {
            continue;
        }
        match check(&a) {
            Ok(f) => {
                count += 1;
                fallback += f as usize;
            }
            Err(e) => return report(false, e),
        }
        random += 1;
    }
    report(
        true,
        format!(
            "{count} instances verified ({exhaustive_fallback} exhaustive and {} random needed the search fallback)",
            fallback - exhaustive_fallback
        ),
    )
}

fn criterion_5() -> Report {
    let cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fallback = 0;
    for _ in 0..500 {
        let (n, mm) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_instance(n, mm, 1, rng.gen()).unwrap();
        let c = match construct_2strong_ne_amax1(&a, &cfg) {
            Ok(c) => c,
            Err(e) => return report(false, format!("{a:?}: {e}")),
        };
        let t = 2.min(a.teams());
        if !is_t_strong_ne(&a, &c.profile, t, &cfg).unwrap().is_equilibrium() {
            return report(false, format!("{a:?}: {:?} not {t}-strong", c.profile));
        }
        fallback += (c.method == ConstructionMethod::ExhaustiveFallback) as usize;
    }
    report(true, format!("500 instances verified; exhaustive fallback rate {fallback}/500"))
}

/// Calls `f` on every instance with `n, m <= 3`, `n * m <= 6` and total
/// at most `s_max`, paired with every profile below it.
fn for_small_games(s_max: u64, mut f: impl FnMut(&AvailabilityMatrix, &AvailabilityMatrix)) -> usize {
    fn fill(a: &mut Vec<u64>, k: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if k == a.len() {
            out.push(a.clone());
            return;
        }
        for v in 0..=left {
            a[k] = v;
            fill(a, k + 1, left - v, out);
        }
        a[k] = 0;
    }
    let mut games = 0;
    for n in 1..=3usize {
        for mm in 1..=3usize {
            if n * mm > 6 {
                continue;
            }
            let mut all = Vec::new();
            fill(&mut vec![0; n * mm], 0, s_max, &mut all);
            for data in all {
                let a = AvailabilityMatrix::new(n, mm, data).unwrap();
                for b in all_profiles(&a) {
                    f(&a, &b);
                    games += 1;
                }
            }
        }
    }
    games
}

fn criterion_6() -> Report {
    let (mut cases, mut counter) = (0usize, Vec::new());
    let (mut count_bad, mut at_one) = (0usize, 0usize);
    let games = for_small_games(12, |a, b| {
        for j in winners(b) {
            for i in 0..a.teams() {
                if b.get(i, j) < a.get(i, j) {
                    cases += 1;
                    let ok = truth_raise_step(a, b, i, j)
                        .unwrap()
                        .is_some_and(|s| verify_improvement(a, b, &s));
                    if !ok {
                        count_bad += 1;
                        at_one += (payoff(b, i).unwrap() == Rational::one()) as usize;
                        if counter.len() < 3 {
                            counter.push(format!(
                                "A={a:?} B={b:?} team {} slot {} (pay-off {})",
                                i + 1,
                                j + 1,
                                payoff(b, i).unwrap()
                            ));
                        }
                    }
                }
            }
        }
    });
    let summary = format!("{games} games with s <= 12 and n*m <= 6, {cases} under-declarations at winners");
    if count_bad == 0 {
        report(true, summary)
    } else {
        report(
            false,
            format!(
                "{summary}; {count_bad} admit no improving raise ({at_one} by teams already at pay-off 1), e.g. {}",
                counter.join("; ")
            ),
        )
    }
}

fn criterion_6_corrected() -> Report {
    let mut bad = 0usize;
    let games = for_small_games(12, |a, b| {
        let pays = payoffs(b);
        for j in winners(b) {
            for i in 0..a.teams() {
                if b.get(i, j) < a.get(i, j) {
                    let step = truth_raise_step(a, b, i, j).unwrap();
                    let ok = match step {
                        Some(s) => pays[i] < Rational::one() && verify_improvement(a, b, &s),
                        None => pays[i] == Rational::one(),
                    };
                    bad += (!ok) as usize;
                }
            }
        }
    });
    report(bad == 0, format!("{games} games: a raise improves exactly when the team's pay-off is below 1 ({bad} exceptions)"))
}

fn criterion_7() -> Report {
    let cfg = SearchConfig::default();
    let (mut instances, mut with_cover) = (0usize, 0usize);
    for nu in 1..=4usize {
        let subsets: Vec<Vec<usize>> = (1u32..(1 << nu))
            .map(|mask| (0..nu).filter(|e| mask >> e & 1 == 1).collect())
            .collect();
        for mf in 1..=4usize {
            for fam in subsets.iter().cloned().combinations(mf) {
                for k in [2usize, 3] {
                    // k sets must be available for a size-k coalition of set teams.
                    if k > mf {
                        continue;
                    }
                    let sc = SetCoverInstance::new(nu, fam.clone(), k).unwrap();
                    let Ok(red) = setcover_to_tpg(&sc) else { continue };
                    instances += 1;
                    let mm = mf as u64;
                    let declared = red.profile.column_sums();
                    let totals_ok = declared[..nu].iter().all(|&s| s == 2 * mm - 1)
                        && declared[red.alpha] == 2 * mm
                        && declared[red.beta] == 2 * mm - 1 - k as u64
                        && (0..mf).all(|s| payoff(&red.profile, red.set_team(s)).unwrap() == Rational::new(1, 2 * mm));
                    if !totals_ok {
                        return report(false, format!("{fam:?} k={k}: declared totals {declared:?}"));
                    }
                    let cover = brute_force_set_cover(&sc, u64::MAX).unwrap();
                    let step = find_improvement_any(&red.matrix, &red.profile, k, &cfg).unwrap();
                    if cover.is_some() != step.is_some() {
                        return report(
                            false,
                            format!("universe {nu} family {fam:?} k={k}: cover {cover:?}, step {}", step.is_some()),
                        );
                    }
                    with_cover += cover.is_some() as usize;
                }
            }
        }
    }
    report(true, format!("{instances} instances ({with_cover} with a cover), equivalence and declared totals hold"))
}

fn criterion_8() -> Report {
    let cfg = SearchConfig::default();
    let triples: Vec<[usize; 3]> = (0..6).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
    let (mut instances, mut covers) = (0usize, 0usize);
    let mut mismatches = Vec::new();
    let mut canonical_payoffs = std::collections::BTreeSet::new();
    let mut truthful_payoffs = std::collections::BTreeSet::new();
    let mut unverified = 0usize;
    for fam in triples.iter().copied().combinations(6) {
        let Ok(xc) = ExactCoverInstance::new(2, fam) else { continue };
        instances += 1;
        let red = x3c_to_tpg(&xc).unwrap();
        let b = red.canonical_profile();
        let cover = brute_force_exact_cover(&xc, u64::MAX).unwrap();
        let verdict = is_t_strong_ne(&red.matrix, &b, red.t, &cfg).unwrap();
        if verdict.is_equilibrium() == cover.is_some() {
            let w = verdict
                .witness
                .map(|w| match w.target_slot {
                    Some(k) => format!(", coalition {{{}}} makes slot {} win alone", w.coalition, k + 1),
                    None => format!(", coalition {{{}}} improves", w.coalition),
                })
                .unwrap_or_default();
            let sets = xc.sets().iter().map(|t| t.iter().map(|e| e + 1).join("")).join(",");
            let has = if cover.is_some() { "has" } else { "no" };
            mismatches.push(format!("sets {{{sets}}}: {has} exact cover{w}"));
        }
        if let Some(cover) = cover {
            covers += 1;
            let step = case1c_deviation(&red, &b, &cover).unwrap();
            unverified += !verify_improvement(&red.matrix, &b, &step) as usize;
            canonical_payoffs.extend(step.new_payoffs.iter().cloned());
            let step = case1c_deviation(&red, &red.matrix, &cover).unwrap();
            unverified += !verify_improvement(&red.matrix, &red.matrix, &step) as usize;
            truthful_payoffs.extend(step.new_payoffs.iter().cloned());
        }
    }
    let want = Rational::new(1, 6);
    let fmt_set = |s: &std::collections::BTreeSet<Rational>| s.iter().join(",");
    let summary = format!(
        "{instances} instances ({covers} with an exact cover); deviation from the canonical profile pays {{{}}}, from the truthful profile {{{}}}",
        fmt_set(&canonical_payoffs),
        fmt_set(&truthful_payoffs)
    );
    let pass = mismatches.is_empty()
        && unverified == 0
        && canonical_payoffs.iter().all(|p| *p == want);
    if pass {
        report(true, summary)
    } else {
        let mut parts = vec![summary];
        if !mismatches.is_empty() {
            parts.push(format!(
                "{} instances break 'equilibrium iff no cover', e.g. {}",
                mismatches.len(),
                mismatches[0]
            ));
        }
        if canonical_payoffs.iter().any(|p| *p != want) {
            parts.push(format!("expected pay-off {want} after the deviation"));
        }
        if unverified > 0 {
            parts.push(format!("{unverified} deviations fail verification"));
        }
        report(false, parts.join("; "))
    }
}

fn criterion_9() -> Report {
    let cases = golden_cases();
    for case in &cases {
        let want = case.expected_stdout();
        let runs = [
            case.run(&[]),
            case.run(&[]),
            case.run(&["--workers", "1"]),
            case.run(&["--workers", "4"]),
        ];
        for (code, out) in &runs {
            if *code != case.exit || *out != want {
                return report(false, format!("{}: exit {code}, output differs: {}", case.name, *out != want));
            }
        }
    }
    report(true, format!("{} golden fixtures byte-identical over repeated, 1-worker and 4-worker runs", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Report, Duration); 10] = [
        ("1", criterion_1, Duration::from_secs(1)),
        ("2", criterion_2, Duration::from_secs(10)),
        ("3", criterion_3, Duration::from_secs(300)),
        ("4", criterion_4, Duration::from_secs(300)),
        ("5", criterion_5, Duration::from_secs(300)),
        ("6", criterion_6, Duration::from_secs(300)),
        ("6*", criterion_6_corrected, Duration::from_secs(300)),
        ("7", criterion_7, Duration::from_secs(300)),
        ("8", criterion_8, Duration::from_secs(120)),
        ("9", criterion_9, Duration::from_secs(60)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, f, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == id) {
            continue;
        }
        let start = Instant::now();
        let mut rep = f();
        let took = start.elapsed();
        if took > limit {
            rep.pass = false;
            rep.detail.push_str(&format!("; over the {limit:?} limit"));
        }
        failed += !rep.pass as usize;
        println!(
            "[{}] criterion {id}: {} ({:.2?})",
            if rep.pass { "PASS" } else { "FAIL" },
            rep.detail,
            took
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
