//! The `tpg v1` text format for availability matrices and declared profiles.
//!
//! ```text
//! tpg v1
//! <n> <m>
//! <m space-separated entries>   (n rows, row i = team i)
//! ```
//!
//! UTF-8, LF line endings, trailing newline required. Lines starting with `#`
//! are comments and may appear anywhere. Blank lines are rejected.

use crate::error::{ParseError, ParseErrorKind};
use crate::matrix::AvailabilityMatrix;

pub const TPG_HEADER: &str = "tpg v1";

/// Splits a document into `(1-based line number, line)` pairs, skipping comments.
pub(crate) fn content_lines(text: &[u8]) -> Result<Vec<(usize, &str)>, ParseError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let line = text[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        ParseError::new(line, ParseErrorKind::InvalidUtf8)
    })?;
    let body = match text.strip_suffix('\n') {
        Some(body) => body,
        None => {
            let line = text.lines().count().max(1);
            return Err(ParseError::new(line, ParseErrorKind::MissingTrailingNewline));
        }
    };
    let mut out = Vec::new();
    for (idx, line) in body.split('\n').enumerate() {
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            return Err(ParseError::new(idx + 1, ParseErrorKind::EmptyLine));
        }
        out.push((idx + 1, line));
    }
    Ok(out)
}

/// Parses a single decimal token: digits only, no sign.
pub(crate) fn parse_count(token: &str, line: usize) -> Result<u64, ParseError> {
    if let Some(rest) = token.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::new(line, ParseErrorKind::NegativeEntry(token.into())));
        }
    }
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(line, ParseErrorKind::NonInteger(token.into())));
    }
    token
        .parse::<u64>()
        .map_err(|_| ParseError::new(line, ParseErrorKind::Overflow))
}

fn parse_row(line: &str, lineno: usize, expected: usize) -> Result<Vec<u64>, ParseError> {
    let row = line
        .split(' ')
        .map(|t| parse_count(t, lineno))
        .collect::<Result<Vec<_>, _>>()?;
    if row.len() != expected {
        return Err(ParseError::new(
            lineno,
            ParseErrorKind::RowLength {
                expected,
                found: row.len(),
            },
        ));
    }
    Ok(row)
}

/// Reads a `tpg v1` document.
pub fn parse_instance(text: &[u8]) -> Result<AvailabilityMatrix, ParseError> {
    let lines = content_lines(text)?;
    let mut it = lines.into_iter();

    let (hl, header) = it
        .next()
        .ok_or_else(|| ParseError::new(1, ParseErrorKind::BadHeader(String::new())))?;
    if header != TPG_HEADER {
        return Err(ParseError::new(hl, ParseErrorKind::BadHeader(header.into())));
    }

    let (dl, dims) = it
        .next()
        .ok_or_else(|| ParseError::new(hl + 1, ParseErrorKind::BadDimensions(String::new())))?;
    let parts: Vec<&str> = dims.split(' ').collect();
    if parts.len() != 2 {
        return Err(ParseError::new(dl, ParseErrorKind::BadDimensions(dims.into())));
    }
    let n = parse_count(parts[0], dl)?;
    let m = parse_count(parts[1], dl)?;
    if n == 0 || m == 0 {
        return Err(ParseError::new(dl, ParseErrorKind::ZeroDimension));
    }
    let (n, m) = (n as usize, m as usize);

    let mut data = Vec::with_capacity(n.saturating_mul(m).min(1 << 20));
    let mut total = 0u64;
    let mut rows = 0usize;
    let mut cur = dl;
    for (ln, line) in it.by_ref() {
        cur = ln;
        if rows == n {
            return Err(ParseError::new(ln, ParseErrorKind::TrailingContent));
        }
        let row = parse_row(line, ln, m)?;
        for &x in &row {
            total = total
                .checked_add(x)
                .ok_or_else(|| ParseError::new(ln, ParseErrorKind::Overflow))?;
        }
        data.extend(row);
        rows += 1;
    }
    if rows < n {
        return Err(ParseError::new(
            cur + 1,
            ParseErrorKind::MissingRows { expected: n, found: rows },
        ));
    }
    Ok(AvailabilityMatrix::new(n, m, data).expect("dimensions and total checked above"))
}

/// Writes a matrix in `tpg v1` form. `parse_instance(serialize(a)) == a`.
pub fn serialize(a: &AvailabilityMatrix) -> String {
    let mut out = String::new();
    write_tpg(&mut out, a);
    out
}

pub(crate) fn write_tpg(out: &mut String, a: &AvailabilityMatrix) {
    use std::fmt::Write;
    let _ = writeln!(out, "{TPG_HEADER}");
    let _ = writeln!(out, "{} {}", a.teams(), a.slots());
    for row in a.rows() {
        let line = row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{line}");
    }
}
