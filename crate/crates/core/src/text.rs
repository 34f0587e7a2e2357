//! Shared helpers for the line-oriented text formats.

use crate::error::Error;
use crate::error::Result;
use crate::linalg::{parse_rvec, RVec};

pub(crate) fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = l.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

/// Parses `keyword v1 ... vk` with exactly `len` rationals.
pub(crate) fn rational_row(line: usize, toks: &[&str], len: usize) -> Result<RVec> {
    if toks.len() != len {
        return Err(err(line, format!("expected {len} values, found {}", toks.len())));
    }
    parse_rvec(toks.iter().copied()).map_err(|m| err(line, m))
}

pub(crate) fn expect_keyword<'a>(
    lines: &'a [(usize, Vec<&'a str>)],
    pos: usize,
    keyword: &str,
) -> Result<(usize, &'a [&'a str])> {
    match lines.get(pos) {
        None => Err(err(lines.last().map_or(0, |l| l.0), format!("unexpected end of input, expected '{keyword}'"))),
        Some((line, toks)) if toks[0] == keyword => Ok((*line, &toks[1..])),
        Some((line, toks)) => Err(err(*line, format!("expected '{keyword}', found '{}'", toks[0]))),
    }
}

pub(crate) fn parse_count(line: usize, toks: &[&str], what: &str) -> Result<usize> {
    match toks {
        [n] => n.parse().map_err(|_| err(line, format!("invalid {what} '{n}'"))),
        _ => Err(err(line, format!("expected a single {what}"))),
    }
}

