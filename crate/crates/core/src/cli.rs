//! Command-line front end. `run` is the whole program; the binary only
//! forwards the process arguments and standard streams.
//!
//! Exit codes: 0 found/true, 1 not found/false, 2 usage or input error,
//! 3 budget exceeded. Team and slot numbers are 1-based in all text.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::equilibrium::{
    construct_1strong_ne, construct_2strong_ne_amax1, exhaustive_ne_search, is_t_strong_ne,
    run_dynamics, DynamicsStatus,
};
use crate::error::Error;
use crate::format::{parse_instance, serialize};
use crate::game::{ensure_profile, payoffs, winners};
use crate::matrix::{AvailabilityMatrix, Coalition};
use crate::reductions::{parse_cover, random_instance, setcover_to_tpg, x3c_to_tpg, CoverInstance};
use crate::solver::{
    brute_force_improvement, coalitions_up_to, find_improvement_any, find_improvement_step,
    ImprovementStep, SearchConfig, DEFAULT_IMPROVEMENT_BUDGET, DEFAULT_SEARCH_BUDGET,
};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tpg", version, about = "Team power game analysis")]
struct Cli {
    /// Cap on enumerated profiles or deviations for exhaustive modes.
    #[arg(long, global = true, env = "TPG_BUDGET")]
    budget: Option<u64>,

    /// Worker threads for searches; 1 runs sequentially. Output does not
    /// depend on this.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Winning slots and every team's pay-off.
    Payoff { instance: PathBuf, profile: PathBuf },
    /// Look for an improvement step.
    Improve(ImproveArgs),
    /// Strong Nash equilibria.
    #[command(subcommand)]
    Ne(NeCommand),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Follow improvement steps until an equilibrium, a cycle or the step cap.
    Dynamics {
        instance: PathBuf,
        /// Starting profile; defaults to the truthful one.
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        max_coalition: usize,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["coalition", "any"]))]
struct ImproveArgs {
    instance: PathBuf,
    profile: PathBuf,
    /// Comma-separated team numbers.
    #[arg(long, value_delimiter = ',')]
    coalition: Vec<usize>,
    /// Try every coalition up to --max-coalition teams.
    #[arg(long)]
    any: bool,
    #[arg(long, default_value_t = 1)]
    max_coalition: usize,
    /// Enumerate all joint deviations instead of using the solver.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum NeCommand {
    /// Check a profile.
    Verify {
        instance: PathBuf,
        profile: PathBuf,
        #[arg(short = 't', default_value_t = 1)]
        strength: usize,
    },
    /// Build an equilibrium (strength 1 needs entries <= 3, strength 2 needs 0/1).
    Construct {
        instance: PathBuf,
        #[arg(short = 't', default_value_t = 1)]
        strength: usize,
    },
    /// Lexicographically first equilibrium by exhaustive search.
    Search {
        instance: PathBuf,
        #[arg(short = 't', default_value_t = 1)]
        strength: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Instance,
    Profile,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Improvement-step instance from a `setcover v1` file.
    Setcover {
        cover: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "instance")]
        emit: Vec<Emit>,
    },
    /// Equilibrium-existence instance from an `x3c v1` file; the profile is
    /// the canonical one.
    X3c {
        cover: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "instance")]
        emit: Vec<Emit>,
    },
    /// Uniform random entries from a seeded generator.
    Random {
        #[arg(long)]
        teams: usize,
        #[arg(long)]
        slots: usize,
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// Failure of a command: exit code plus a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

struct Env {
    budget: Option<u64>,
    config: SearchConfig,
}

impl Env {
    fn search_budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_SEARCH_BUDGET)
    }

    fn improvement_budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_IMPROVEMENT_BUDGET)
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_FOUND
            };
            return code;
        }
    };
    let env = Env {
        budget: cli.budget,
        config: SearchConfig {
            parallel: cli.workers > 1,
            budget: cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        },
    };
    let result = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers as usize)
        .build()
    {
        Ok(pool) => pool.install(|| dispatch(&cli.command, &env)),
        Err(e) => Err(input_error(format!("cannot start worker pool: {e}"))),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: &Command, env: &Env) -> Outcome {
    match cmd {
        Command::Payoff { instance, profile } => cmd_payoff(instance, profile),
        Command::Improve(args) => cmd_improve(args, env),
        Command::Ne(ne) => cmd_ne(ne, env),
        Command::Gen(gen) => cmd_gen(gen),
        Command::Dynamics {
            instance,
            profile,
            max_coalition,
            max_steps,
        } => cmd_dynamics(instance, profile.as_deref(), *max_coalition, *max_steps, env),
    }
}

fn read(path: &Path) -> std::result::Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> std::result::Result<AvailabilityMatrix, Failure> {
    parse_instance(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_pair(
    instance: &Path,
    profile: &Path,
) -> std::result::Result<(AvailabilityMatrix, AvailabilityMatrix), Failure> {
    let a = load_matrix(instance)?;
    let b = load_matrix(profile)?;
    ensure_profile(&a, &b)?;
    Ok((a, b))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn one_based(items: &[usize]) -> String {
    join(items.iter().map(|x| x + 1))
}

fn write_step(out: &mut String, step: &ImprovementStep) {
    let _ = writeln!(out, "coalition: {}", step.coalition);
    match step.target_slot {
        Some(k) => {
            let _ = writeln!(out, "slot: {}", k + 1);
        }
        None => {
            let _ = writeln!(out, "slot: none (winners {})", one_based(&winners(&step.profile)));
        }
    }
    let members = step.coalition.members();
    for (&i, row) in members.iter().zip(&step.new_rows) {
        let _ = writeln!(out, "row[{}]: {}", i + 1, join(row));
    }
    for (k, &i) in members.iter().enumerate() {
        let _ = writeln!(
            out,
            "payoff[{}]: {} -> {}",
            i + 1,
            step.old_payoffs[k],
            step.new_payoffs[k]
        );
    }
}

fn cmd_payoff(instance: &Path, profile: &Path) -> Outcome {
    let (_, b) = load_pair(instance, profile)?;
    let mut out = String::new();
    let _ = writeln!(out, "winners: {}", one_based(&winners(&b)));
    let pays: Vec<String> = payoffs(&b)
        .iter()
        .enumerate()
        .map(|(i, p)| format!("payoff[{}]={p}", i + 1))
        .collect();
    let _ = writeln!(out, "{}", pays.join(" "));
    Ok((out, EXIT_FOUND))
}

fn step_outcome(step: Option<ImprovementStep>) -> Outcome {
    Ok(match step {
        Some(s) => {
            let mut out = String::new();
            write_step(&mut out, &s);
            (out, EXIT_FOUND)
        }
        None => ("none\n".to_string(), EXIT_NOT_FOUND),
    })
}

fn cmd_improve(args: &ImproveArgs, env: &Env) -> Outcome {
    let (a, b) = load_pair(&args.instance, &args.profile)?;
    if args.any {
        if args.max_coalition == 0 || args.max_coalition > a.teams() {
            return Err(input_error(format!(
                "--max-coalition must be in 1..={}",
                a.teams()
            )));
        }
        if args.oracle {
            for c in coalitions_up_to(a.teams(), args.max_coalition) {
                if let Some(s) = brute_force_improvement(&a, &b, &c, env.improvement_budget())? {
                    return step_outcome(Some(s));
                }
            }
            return step_outcome(None);
        }
        return step_outcome(find_improvement_any(&a, &b, args.max_coalition, &env.config)?);
    }
    if args.coalition.contains(&0) {
        return Err(input_error("team numbers are 1-based"));
    }
    let c = Coalition::new(args.coalition.iter().map(|i| i - 1).collect(), a.teams())?;
    let step = if args.oracle {
        brute_force_improvement(&a, &b, &c, env.improvement_budget())?
    } else {
        find_improvement_step(&a, &b, &c)?
    };
    step_outcome(step)
}

fn check_strength(t: usize, a: &AvailabilityMatrix) -> std::result::Result<(), Failure> {
    if t == 0 || t > a.teams() {
        return Err(input_error(format!("-t must be in 1..={}", a.teams())));
    }
    Ok(())
}

fn cmd_ne(cmd: &NeCommand, env: &Env) -> Outcome {
    match cmd {
        NeCommand::Verify {
            instance,
            profile,
            strength,
        } => {
            let (a, b) = load_pair(instance, profile)?;
            check_strength(*strength, &a)?;
            let verdict = is_t_strong_ne(&a, &b, *strength, &env.config)?;
            Ok(match verdict.witness {
                None => ("equilibrium\n".to_string(), EXIT_FOUND),
                Some(w) => {
                    let mut out = "not an equilibrium\n".to_string();
                    write_step(&mut out, &w);
                    (out, EXIT_NOT_FOUND)
                }
            })
        }
        NeCommand::Construct { instance, strength } => {
            let a = load_matrix(instance)?;
            let config = SearchConfig {
                budget: env.search_budget(),
                ..env.config
            };
            let (note, profile) = match strength {
                1 => {
                    let c = construct_1strong_ne(&a, &config)?;
                    let suffix = if c.fallback { ", found by search" } else { "" };
                    (format!("# case: {}{suffix}\n", c.case), c.profile)
                }
                2 => {
                    let c = construct_2strong_ne_amax1(&a, &config)?;
                    (format!("# method: {}\n", c.method), c.profile)
                }
                t => {
                    return Err(input_error(format!(
                        "construction is available for -t 1 and -t 2, not {t}"
                    )))
                }
            };
            Ok((note + &serialize(&profile), EXIT_FOUND))
        }
        NeCommand::Search { instance, strength } => {
            let a = load_matrix(instance)?;
            check_strength(*strength, &a)?;
            Ok(match exhaustive_ne_search(&a, *strength, &env.config)? {
                Some(b) => (serialize(&b), EXIT_FOUND),
                None => ("none\n".to_string(), EXIT_NOT_FOUND),
            })
        }
    }
}

fn load_cover(path: &Path) -> std::result::Result<CoverInstance, Failure> {
    parse_cover(&read(path)?).map_err(|e| match e {
        Error::Parse(p) => input_error(format!("{}: {p}", path.display())),
        other => other.into(),
    })
}

fn emit_docs(emit: &[Emit], instance: &AvailabilityMatrix, profile: &AvailabilityMatrix) -> String {
    let mut out = String::new();
    for e in emit {
        match e {
            Emit::Instance => {
                out.push_str("# instance\n");
                out.push_str(&serialize(instance));
            }
            Emit::Profile => {
                out.push_str("# profile\n");
                out.push_str(&serialize(profile));
            }
        }
    }
    out
}

fn cmd_gen(cmd: &GenCommand) -> Outcome {
    match cmd {
        GenCommand::Setcover { cover, emit } => {
            let CoverInstance::SetCover(sc) = load_cover(cover)? else {
                return Err(input_error(format!("{}: expected a setcover v1 file", cover.display())));
            };
            let r = setcover_to_tpg(&sc)?;
            Ok((emit_docs(emit, &r.matrix, &r.profile), EXIT_FOUND))
        }
        GenCommand::X3c { cover, emit } => {
            let CoverInstance::ExactCover(xc) = load_cover(cover)? else {
                return Err(input_error(format!("{}: expected an x3c v1 file", cover.display())));
            };
            let r = x3c_to_tpg(&xc)?;
            Ok((emit_docs(emit, &r.matrix, &r.canonical_profile()), EXIT_FOUND))
        }
        GenCommand::Random {
            teams,
            slots,
            a_max,
            seed,
        } => {
            let a = random_instance(*teams, *slots, *a_max, *seed)?;
            Ok((serialize(&a), EXIT_FOUND))
        }
    }
}

fn cmd_dynamics(
    instance: &Path,
    profile: Option<&Path>,
    max_coalition: usize,
    max_steps: usize,
    env: &Env,
) -> Outcome {
    let (a, b0) = match profile {
        Some(p) => load_pair(instance, p)?,
        None => {
            let a = load_matrix(instance)?;
            (a.clone(), a)
        }
    };
    check_strength(max_coalition, &a)?;
    let trace = run_dynamics(&a, &b0, max_coalition, max_steps, &env.config)?;
    let mut out = String::new();
    for (k, t) in trace.transitions.iter().enumerate() {
        let _ = writeln!(out, "step {}:", k + 1);
        write_step(&mut out, &t.step);
    }
    let (status, code) = match trace.status {
        DynamicsStatus::EquilibriumReached => ("equilibrium_reached".to_string(), EXIT_FOUND),
        DynamicsStatus::CycleDetected { first_seen } => (
            format!("cycle_detected (profile after step {first_seen} repeats)"),
            EXIT_NOT_FOUND,
        ),
        DynamicsStatus::StepBudgetExhausted => ("step_budget_exhausted".to_string(), EXIT_BUDGET),
    };
    let _ = writeln!(out, "status: {status}");
    let _ = writeln!(out, "final profile:");
    out.push_str(&serialize(trace.final_profile()));
    Ok((out, code))
}
