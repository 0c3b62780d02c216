//! The `.cov` text format for cover-problem inputs.
//!
//! ```text
//! setcover v1 <n_u> <m_f> <k>      x3c v1 <n>
//! <set 1 elements>                 <set 1 elements>
//! ...                              ...
//! ```
//!
//! Elements are 1-based and space-separated, one set per line (`m_f` lines,
//! or `3n` lines for x3c). Same line rules as the `tpg v1` format.

use std::fmt::Write;

use crate::error::{ParseError, ParseErrorKind, Result};
use crate::format::{content_lines, parse_count};

use super::{ExactCoverInstance, SetCoverInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverInstance {
    SetCover(SetCoverInstance),
    ExactCover(ExactCoverInstance),
}

fn to_usize(v: u64, line: usize) -> std::result::Result<usize, ParseError> {
    usize::try_from(v).map_err(|_| ParseError::new(line, ParseErrorKind::Overflow))
}

fn parse_set(line: &str, lineno: usize) -> std::result::Result<Vec<usize>, ParseError> {
    line.split(' ')
        .map(|tok| {
            let e = to_usize(parse_count(tok, lineno)?, lineno)?;
            if e == 0 {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::InvalidSet("elements are 1-based".into()),
                ));
            }
            Ok(e - 1)
        })
        .collect()
}

pub fn parse_cover(text: &[u8]) -> Result<CoverInstance> {
    let lines = content_lines(text)?;
    let Some(&(hline, header)) = lines.first() else {
        return Err(ParseError::new(1, ParseErrorKind::BadHeader(String::new())).into());
    };
    let words: Vec<&str> = header.split(' ').collect();
    let bad_header = || ParseError::new(hline, ParseErrorKind::BadHeader(header.into()));
    let params: Vec<usize> = match words.as_slice() {
        ["setcover", "v1", rest @ ..] if rest.len() == 3 => rest,
        ["x3c", "v1", rest @ ..] if rest.len() == 1 => rest,
        _ => return Err(bad_header().into()),
    }
    .iter()
    .map(|tok| parse_count(tok, hline).and_then(|v| to_usize(v, hline)))
    .collect::<std::result::Result<_, _>>()?;
    let expected = if words[0] == "setcover" {
        params[1]
    } else {
        params[0]
            .checked_mul(3)
            .ok_or_else(|| ParseError::new(hline, ParseErrorKind::Overflow))?
    };

    let body = &lines[1..];
    if body.len() < expected {
        let next = lines.last().map_or(1, |&(l, _)| l + 1);
        return Err(ParseError::new(
            next,
            ParseErrorKind::MissingRows { expected, found: body.len() },
        )
        .into());
    }
    if let Some(&(l, _)) = body.get(expected) {
        return Err(ParseError::new(l, ParseErrorKind::TrailingContent).into());
    }
    let sets = body
        .iter()
        .map(|&(l, s)| parse_set(s, l).map(|set| (l, set)))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    if words[0] == "setcover" {
        let sets = sets.into_iter().map(|(_, s)| s).collect();
        Ok(CoverInstance::SetCover(SetCoverInstance::new(params[0], sets, params[2])?))
    } else {
        let triples = sets
            .into_iter()
            .map(|(l, s)| {
                <[usize; 3]>::try_from(s).map_err(|s| {
                    ParseError::new(
                        l,
                        ParseErrorKind::InvalidSet(format!("expected 3 elements, found {}", s.len())),
                    )
                })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CoverInstance::ExactCover(ExactCoverInstance::new(params[0], triples)?))
    }
}

pub fn serialize_cover(inst: &CoverInstance) -> String {
    let mut out = String::new();
    let put_set = |out: &mut String, set: &[usize]| {
        let words: Vec<String> = set.iter().map(|e| (e + 1).to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    };
    match inst {
        CoverInstance::SetCover(sc) => {
            let _ = writeln!(out, "setcover v1 {} {} {}", sc.universe(), sc.sets().len(), sc.k());
            for s in sc.sets() {
                put_set(&mut out, s);
            }
        }
        CoverInstance::ExactCover(xc) => {
            let _ = writeln!(out, "x3c v1 {}", xc.n());
            for s in xc.sets() {
                put_set(&mut out, s);
            }
        }
    }
    out
}

impl From<SetCoverInstance> for CoverInstance {
    fn from(sc: SetCoverInstance) -> Self {
        CoverInstance::SetCover(sc)
    }
}

impl From<ExactCoverInstance> for CoverInstance {
    fn from(xc: ExactCoverInstance) -> Self {
        CoverInstance::ExactCover(xc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const TRIANGLE: &str = "setcover v1 3 3 2\n1 2\n2 3\n1 3\n";

    #[test]
    fn round_trips_setcover() {
        let inst = parse_cover(TRIANGLE.as_bytes()).unwrap();
        let CoverInstance::SetCover(sc) = &inst else { panic!() };
        assert_eq!(sc.sets(), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(serialize_cover(&inst), TRIANGLE);
    }

    #[test]
    fn round_trips_x3c() {
        let text = "x3c v1 2\n1 2 3\n4 5 6\n1 2 4\n3 5 6\n1 4 5\n2 3 6\n";
        let inst = parse_cover(text.as_bytes()).unwrap();
        assert!(matches!(inst, CoverInstance::ExactCover(_)));
        assert_eq!(serialize_cover(&inst), text);
    }

    #[test]
    fn reports_errors() {
        let line_of = |text: &str| match parse_cover(text.as_bytes()) {
            Err(Error::Parse(e)) => e.line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line_of("setcover v1 3 3\n1\n"), 1);
        assert_eq!(line_of("setcover v1 3 2 1\n1 2\n"), 3);
        assert_eq!(line_of("setcover v1 3 1 1\n1 2\n3\n"), 3);
        assert_eq!(line_of("setcover v1 3 1 1\n0 2\n"), 2);
        assert_eq!(line_of("x3c v1 2\n1 2 3\n4 5 6\n1 2 4\n3 5 6\n1 4 5\n2 3\n"), 7);
        assert!(matches!(
            parse_cover(b"setcover v1 3 1 1\n4\n"),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(parse_cover(b"x3c v1 1\n1 2 3\n1 2 3\n1 2 3\n"), Err(Error::InvalidParameters(_))));
    }
}
