use std::fmt;

use thiserror::Error;

use crate::game::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("profile does not fit the instance: {}", format_violations(.0))]
    InvalidProfile(Vec<Violation>),

    #[error("{what} index {index} out of range (< {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("search space of {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// A solver path and its verifier disagreed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Location-tagged failure while reading a `.tpg` or `.cov` document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidUtf8,
    MissingTrailingNewline,
    EmptyLine,
    BadHeader(String),
    BadDimensions(String),
    ZeroDimension,
    NonInteger(String),
    NegativeEntry(String),
    RowLength { expected: usize, found: usize },
    MissingRows { expected: usize, found: usize },
    TrailingContent,
    Overflow,
    InvalidSet(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            InvalidUtf8 => write!(f, "input is not valid UTF-8"),
            MissingTrailingNewline => write!(f, "missing trailing newline"),
            EmptyLine => write!(f, "empty line"),
            BadHeader(h) => write!(f, "malformed header {h:?}"),
            BadDimensions(d) => write!(f, "malformed dimensions {d:?}"),
            ZeroDimension => write!(f, "team and slot counts must be at least 1"),
            NonInteger(t) => write!(f, "non-integer token {t:?}"),
            NegativeEntry(t) => write!(f, "negative entry {t}"),
            RowLength { expected, found } => {
                write!(f, "row has {found} entries, expected {expected}")
            }
            MissingRows { expected, found } => {
                write!(f, "found {found} rows, expected {expected}")
            }
            TrailingContent => write!(f, "unexpected content after the last row"),
            Overflow => write!(f, "total availability does not fit in 64 bits"),
            InvalidSet(s) => write!(f, "invalid set: {s}"),
        }
    }
}
