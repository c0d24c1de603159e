//! Plain-text generator matrices.
//!
//! ```text
//! # comment
//! q p m c0 ... cm k n
//! <k rows of n integers in [0, q)>
//! ```
//!
//! The modulus coefficients are omitted for prime fields (`m = 1`), so the
//! header reads `q p 1 k n`; the explicit form `q p 1 c0 1 k n` is also read.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GeneratorMatrix;

struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(tok: &Token) -> Result<u64> {
    tok.text.parse::<u64>().map_err(|_| {
        parse_err(
            tok.line,
            tok.column,
            format!("expected a non-negative integer, found {:?}", tok.text),
        )
    })
}

/// Non-comment lines split into whitespace-separated tokens, with one-based
/// positions.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|(i, l)| {
            let mut out = Vec::new();
            let mut start = None;
            for (c, ch) in l.char_indices().chain(std::iter::once((l.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(c),
                    (true, Some(s)) => {
                        out.push(Token {
                            line: i + 1,
                            column: s + 1,
                            text: &l[s..c],
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            out
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix> {
    let lines = lines(text);
    let Some(header) = lines.first() else {
        return Err(parse_err(1, 1, "missing header line"));
    };
    let end = |toks: &[Token]| {
        toks.last()
            .map_or((1, 1), |t| (t.line, t.column + t.text.len()))
    };
    if header.len() < 5 {
        let (l, c) = end(header);
        return Err(parse_err(l, c, "header needs `q p m [c0 .. cm] k n`"));
    }
    let q = number(&header[0])?;
    let p = number(&header[1])?;
    let m = number(&header[2])?;
    if m == 0 || m > 64 {
        return Err(parse_err(
            header[2].line,
            header[2].column,
            "m must be at least 1",
        ));
    }
    let with_coeffs = 3 + (m as usize + 1) + 2;
    let expected = if m == 1 && header.len() == 5 {
        5
    } else {
        with_coeffs
    };
    if header.len() != expected {
        let (l, c) = end(header);
        return Err(parse_err(
            l,
            c,
            format!("header has {} fields, expected {expected}", header.len()),
        ));
    }
    let coeffs = header[3..expected - 2]
        .iter()
        .map(number)
        .collect::<Result<Vec<u64>>>()?;
    let field = if m == 1 {
        if !coeffs.is_empty() && coeffs[1] != 1 {
            let t = &header[4];
            return Err(parse_err(t.line, t.column, "modulus must be monic"));
        }
        Field::prime(p)?
    } else {
        Field::new(p, m as u32, Some(&coeffs))?
    };
    if field.q() != q {
        return Err(parse_err(
            header[0].line,
            header[0].column,
            format!("q = {q} but p^m = {}", field.q()),
        ));
    }
    let k = number(&header[expected - 2])? as usize;
    let n = number(&header[expected - 1])? as usize;
    let body = &lines[1..];
    if body.len() != k {
        let line = body
            .get(k)
            .or(body.last())
            .map_or(header[0].line, |r| r[0].line);
        return Err(parse_err(
            line,
            1,
            format!("expected {k} rows, found {}", body.len()),
        ));
    }
    let mut rows = Vec::with_capacity(k);
    for row in body {
        if row.len() != n {
            let (l, c) = end(row);
            return Err(parse_err(
                l,
                c,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        let mut values = Vec::with_capacity(n);
        for tok in row {
            let v = number(tok)?;
            if v >= q {
                return Err(parse_err(
                    tok.line,
                    tok.column,
                    format!("entry {v} is not below q = {q}"),
                ));
            }
            values.push(v as u32);
        }
        rows.push(values);
    }
    GeneratorMatrix::new(field, rows)
}

pub fn parse_matrix_file(path: &Path) -> Result<GeneratorMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Canonical text form; `parse_matrix(&write_matrix(g))` rebuilds `g`.
pub fn write_matrix(g: &GeneratorMatrix) -> String {
    let f = g.field();
    let mut out = format!("{} {} {}", f.q(), f.p(), f.m());
    if f.m() > 1 {
        for c in f.modulus() {
            write!(out, " {c}").unwrap();
        }
    }
    writeln!(out, " {} {}", g.k(), g.n()).unwrap();
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}
