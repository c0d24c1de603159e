use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::combinat::{to_decimal, ExactRational, RationalJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tsv,
}

/// A command result: a JSON document and a flat table for CSV/TSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, header: &[&str]) -> Report {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Csv | Format::Tsv => {
            let delim = if format == Format::Csv { b',' } else { b'\t' };
            let mut w = csv::WriterBuilder::new()
                .delimiter(delim)
                .from_writer(Vec::new());
            w.write_record(&report.header).expect("in-memory write");
            for row in &report.rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
        }
    }
}

pub fn rational(x: &ExactRational, precision: usize) -> Value {
    serde_json::to_value(RationalJson::new(x, precision)).expect("serializable rational")
}

/// `num`, `den` and rounded decimal cells.
pub fn rational_cells(x: &ExactRational, precision: usize) -> Vec<String> {
    vec![
        x.numer().to_string(),
        x.denom().to_string(),
        to_decimal(x, precision),
    ]
}

/// Exact value of `"5/6"`, `"0.834"`, `"-2"` or `"1e-10"`.
pub fn parse_rational(s: &str) -> Result<ExactRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if let Some((a, b)) = s.split_once('/') {
        let num = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(ExactRational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty()
        || !int_part
            .chars()
            .chain(frac.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("0{int_part}{frac}")).map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if shift >= 0 {
        ExactRational::from_integer(digits * ten.pow(shift as u32))
    } else {
        ExactRational::new(digits, ten.pow((-shift) as u32))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

pub fn parse_positive_rational(s: &str) -> Result<ExactRational, String> {
    let v = parse_rational(s)?;
    if !v.is_positive() {
        return Err(format!("{s:?} must be positive"));
    }
    Ok(v)
}

pub fn parse_nonnegative_rational(s: &str) -> Result<ExactRational, String> {
    let v = parse_rational(s)?;
    if v.is_negative() {
        return Err(format!("{s:?} must be non-negative"));
    }
    Ok(v)
}
