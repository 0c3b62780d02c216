//! Team power game: teams declare how many of their members can attend each
//! candidate meeting slot, the slots with the largest declared total win, and
//! each team's pay-off is its smallest share of attendees over the winners.
//!
//! The crate computes pay-offs exactly, finds coalition improvement steps,
//! verifies and constructs strong Nash equilibria, simulates improvement
//! dynamics, and generates the set-cover and exact-cover hardness instances.

pub mod error;
pub mod format;
pub mod game;
pub mod matrix;
pub mod rational;
pub mod solver;
pub mod equilibrium;
pub mod reductions;
pub mod cli;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use format::{parse_instance, serialize};
pub use game::{payoff, payoffs, team_power, validate_profile, winners, Violation};
pub use matrix::{AvailabilityMatrix, Coalition};
pub use rational::Rational;
pub use solver::{
    brute_force_improvement, build_threshold_instance, candidate_slots, find_improvement_any,
    find_improvement_step, solve_threshold_unary, verify_improvement, ImprovementStep,
    SearchConfig, ThresholdInstance, ThresholdSolution,
};
