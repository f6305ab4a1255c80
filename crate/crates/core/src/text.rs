//! Line-oriented text helpers shared by the surface, curve and witness formats.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Header line carried by witness and certificate files.
pub const HEADER: &str = "mcg-lantern v1";

/// A non-empty, comment-stripped input line with its 1-based line number.
#[derive(Debug, Clone)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub words: Vec<&'a str>,
}

pub(crate) fn lines(input: &str) -> Vec<Line<'_>> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            if words.is_empty() {
                None
            } else {
                Some(Line { number: i + 1, words })
            }
        })
        .collect()
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub(crate) fn parse_usize(line: &Line<'_>, idx: usize) -> Result<usize> {
    let word = line
        .words
        .get(idx)
        .ok_or_else(|| parse_err(line.number, "missing integer"))?;
    word.parse()
        .map_err(|_| parse_err(line.number, format!("expected a nonnegative integer, got `{word}`")))
}

pub(crate) fn parse_ratio(line: &Line<'_>, idx: usize) -> Result<Ratio<i64>> {
    let word = line
        .words
        .get(idx)
        .ok_or_else(|| parse_err(line.number, "missing rational"))?;
    let bad = || parse_err(line.number, format!("expected a rational num/den, got `{word}`"));
    let (num, den) = match word.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().map_err(|_| bad())?, d.parse::<i64>().map_err(|_| bad())?),
        None => (word.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den <= 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

pub(crate) fn expect_arity(line: &Line<'_>, n: usize) -> Result<()> {
    if line.words.len() != n {
        return Err(parse_err(
            line.number,
            format!("`{}` takes {} argument(s)", line.words[0], n - 1),
        ));
    }
    Ok(())
}
