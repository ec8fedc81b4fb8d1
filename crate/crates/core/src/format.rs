//! Text file formats.
//!
//! Tournament file:
//!
//! ```text
//! n=4
//! 110100
//! ```
//!
//! The second line lists the pairs `i < j` in row-major order; `1` means the
//! larger index is chosen. Profile file: the same `n=` header, then one
//! `<multiplicity> <bitstring>` line per distinct ballot. Blank lines and
//! lines starting with `#` are ignored.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::synth::IntegerProfile;
use crate::tournament::{pair_count, Tournament};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn parse_header(line_no: usize, line: &str) -> Result<usize> {
    let rest = line
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(line_no, 1, "expected header `n=<int>`"))?;
    let n: usize = rest
        .parse()
        .map_err(|_| parse_err(line_no, 3, format!("invalid candidate count `{rest}`")))?;
    if n < 3 {
        return Err(parse_err(
            line_no,
            3,
            "a tournament needs at least 3 candidates",
        ));
    }
    Ok(n)
}

fn parse_bits(line_no: usize, column: usize, n: usize, field: &str) -> Result<Tournament> {
    let mut bits = Vec::with_capacity(field.len());
    for (k, ch) in field.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            other => {
                return Err(parse_err(
                    line_no,
                    column + k,
                    format!("unexpected character `{other}` in bitstring"),
                ))
            }
        }
    }
    let expected = pair_count(n);
    if bits.len() != expected {
        return Err(parse_err(
            line_no,
            column,
            format!("expected {expected} bits for n={n}, found {}", bits.len()),
        ));
    }
    Tournament::new(n, bits)
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty tournament file"))?;
    let n = parse_header(hl, header)?;
    let (bl, body) = lines
        .next()
        .ok_or_else(|| parse_err(hl + 1, 1, "missing bitstring line"))?;
    let t = parse_bits(bl, 1, n, body.trim())?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, 1, "unexpected trailing content"));
    }
    Ok(t)
}

pub fn write_tournament(t: &Tournament) -> String {
    format!("n={}\n{}\n", t.n(), t.to_bitstring())
}

pub fn parse_profile(text: &str) -> Result<IntegerProfile> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty profile file"))?;
    let n = parse_header(hl, header)?;
    let mut entries = Vec::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        let (Some(mult), Some(bits), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(
                line_no,
                1,
                "expected `<multiplicity> <bitstring>`",
            ));
        };
        let m: BigUint = mult
            .parse()
            .map_err(|_| parse_err(line_no, 1, format!("invalid multiplicity `{mult}`")))?;
        if m == BigUint::default() {
            return Err(parse_err(line_no, 1, "multiplicity must be positive"));
        }
        let column = line.find(bits).unwrap_or(0) + 1;
        entries.push((m, parse_bits(line_no, column, n, bits)?));
    }
    if entries.is_empty() {
        return Err(parse_err(hl + 1, 1, "profile has no ballots"));
    }
    IntegerProfile::new(entries)
}

pub fn write_profile(p: &IntegerProfile) -> String {
    p.to_string()
}
