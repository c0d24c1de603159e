//! Published tables for five length-7 codes, recomputed exactly and compared
//! cell by cell.

use num_traits::Signed;
use serde_json::{json, Value};

use super::emit::{parse_rational, rational, rational_cells, Report};
use crate::combinat::{ratio, to_decimal, ExactRational};
use crate::error::Result;
use crate::families::{family_generator, FamilySpec};
use crate::moments::{expectation, moment, moment_tailsum, pmf, variance};
use crate::recovery::{alpha_bruteforce_with, AlphaProfile, EnumOptions};

pub const CODES: [(&str, FamilySpec); 5] = [
    ("MDS k=3", FamilySpec::Mds { q: 8, n: 7, k: 3 }),
    ("Simplex k=3", FamilySpec::Simplex { q: 2, k: 3 }),
    ("MDS k=4", FamilySpec::Mds { q: 8, n: 7, k: 4 }),
    ("Hamming k=4", FamilySpec::Hamming { q: 2, m: 3 }),
    ("Identity k=7", FamilySpec::Identity { n: 7 }),
];

/// Table of `P[tau = r]`, `r = 1..=7`, columns in [`CODES`] order.
pub const TABLE1: [[&str; 5]; 7] = [
    ["0.143", "0.143", "0.143", "0.143", "0.143"],
    ["0.122", "0.245", "0.122", "0.122", "0.122"],
    ["0.455", "0.315", "0.105", "0.175", "0.105"],
    ["0.190", "0.165", "0.240", "0.200", "0.090"],
    ["0.063", "0.075", "0.184", "0.147", "0.077"],
    ["0.019", "0.033", "0.106", "0.092", "0.066"],
    ["0.006", "0.014", "0.054", "0.053", "0.057"],
];

pub const TABLE2_ROWS: [&str; 5] = [
    "Variance",
    "1st Moment",
    "2nd Moment",
    "3rd Moment",
    "4th Moment",
];

pub const TABLE2: [[&str; 5]; 5] = [
    ["1.467", "2.167", "4.100", "5.033", "42.000"],
    ["3.000", "3.000", "4.000", "4.000", "7.000"],
    ["10.467", "11.167", "20.100", "21.033", "91.000"],
    ["31.293", "39.458", "96.245", "113.665", "1663.000"],
    ["90.423", "151.014", "472.261", "691.369", "40390.429"],
];

pub const INCONSISTENT_NOTE: &str = "cross-validated values; published values flagged inconsistent";

fn tolerance() -> ExactRational {
    ratio(5, 10_000)
}

fn tailsum_tolerance() -> ExactRational {
    ratio(1, 1_000_000_000_000i64)
}

fn close(computed: &ExactRational, printed: &str) -> bool {
    let printed = parse_rational(printed).expect("embedded table value");
    (computed - printed).abs() <= tolerance()
}

/// Closed-form profile of each code, checked against enumeration on every
/// strand.
fn profiles(threads: usize) -> Result<Vec<(AlphaProfile, bool)>> {
    let opts = EnumOptions {
        threads,
        ..EnumOptions::default()
    };
    CODES
        .iter()
        .map(|(_, spec)| {
            let closed = spec.alpha()?;
            let g = family_generator(spec)?;
            let mut ok = true;
            for i in 1..=g.k() {
                ok &= alpha_bruteforce_with(&g, i, opts)?.values() == closed.values();
            }
            Ok((closed, ok))
        })
        .collect()
}

fn header(first: &str) -> Vec<&str> {
    std::iter::once(first)
        .chain(CODES.iter().map(|(label, _)| *label))
        .collect()
}

/// Returns the report and the number of cells outside tolerance.
pub fn table1(precision: usize, threads: usize) -> Result<(Report, usize)> {
    let profiles = profiles(threads)?;
    let mut mismatches = profiles.iter().filter(|(_, ok)| !ok).count();
    let mut rows_json = Vec::new();
    let mut report = Report::new(Value::Null, &header("r"));
    for (r, printed_row) in TABLE1.iter().enumerate() {
        let r = r + 1;
        let mut cells = Vec::new();
        let mut csv_row = vec![r.to_string()];
        for (c, (label, _)) in CODES.iter().enumerate() {
            let value = pmf(&profiles[c].0, r);
            let ok = close(&value, printed_row[c]);
            mismatches += usize::from(!ok);
            csv_row.push(to_decimal(&value, precision));
            cells.push(json!({
                "code": label,
                "published": printed_row[c],
                "computed": rational(&value, precision),
                "within_tolerance": ok,
            }));
        }
        report.row(csv_row);
        rows_json.push(json!({ "r": r, "cells": cells }));
    }
    report.json = json!({
        "command": "reproduce",
        "target": "table1",
        "version": env!("CARGO_PKG_VERSION"),
        "tolerance": "0.0005",
        "alpha_verified_by_enumeration": profiles.iter().all(|(_, ok)| *ok),
        "rows": rows_json,
        "mismatches": mismatches,
    });
    Ok((report, mismatches))
}

pub fn table2(precision: usize, threads: usize) -> Result<(Report, usize)> {
    let profiles = profiles(threads)?;
    let mut mismatches = profiles.iter().filter(|(_, ok)| !ok).count();
    let eps = tailsum_tolerance();
    let mut cols = Vec::new();
    for (p, _) in &profiles {
        let mut values = vec![variance(p), expectation(p)];
        let mut agree = true;
        for order in 2..=4 {
            values.push(moment(p, order));
        }
        for order in 1..=4u32 {
            let tail = moment_tailsum(p, order, &eps);
            agree &= (&values[order as usize] - &tail.sum).abs() <= eps;
        }
        mismatches += usize::from(!agree);
        cols.push((values, agree));
    }
    let mut hdr = header("row");
    hdr.push("status");
    let mut report = Report::new(Value::Null, &hdr);
    let mut rows_json = Vec::new();
    for (row, label) in TABLE2_ROWS.iter().enumerate() {
        let checked = row < 3;
        let status = if checked {
            "reproduced"
        } else {
            INCONSISTENT_NOTE
        };
        let mut cells = Vec::new();
        let mut csv_row = vec![label.to_string()];
        for (c, (code, _)) in CODES.iter().enumerate() {
            let value = &cols[c].0[row];
            let ok = close(value, TABLE2[row][c]);
            if checked {
                mismatches += usize::from(!ok);
            }
            csv_row.push(to_decimal(value, precision));
            let mut cell = json!({
                "code": code,
                "published": TABLE2[row][c],
                "computed": rational(value, precision),
                "tailsum_agrees": cols[c].1,
            });
            if checked {
                cell["within_tolerance"] = json!(ok);
            }
            cells.push(cell);
        }
        csv_row.push(status.to_string());
        report.row(csv_row);
        rows_json.push(json!({ "row": label, "status": status, "cells": cells }));
    }
    report.json = json!({
        "command": "reproduce",
        "target": "table2",
        "version": env!("CARGO_PKG_VERSION"),
        "tolerance": "0.0005",
        "tailsum_tolerance": "1e-12",
        "alpha_verified_by_enumeration": profiles.iter().all(|(_, ok)| *ok),
        "rows": rows_json,
        "mismatches": mismatches,
    });
    Ok((report, mismatches))
}

/// Plot data: `(code, r, P[tau = r])` for `r = 1..=7`.
pub fn figure1(precision: usize, threads: usize) -> Result<(Report, usize)> {
    let profiles = profiles(threads)?;
    let mismatches = profiles.iter().filter(|(_, ok)| !ok).count();
    let mut report = Report::new(Value::Null, &["code", "r", "num", "den", "approx"]);
    let mut series = Vec::new();
    for ((label, _), (p, _)) in CODES.iter().zip(&profiles) {
        let mut points = Vec::new();
        for r in 1..=7 {
            let v = pmf(p, r);
            let mut row = vec![label.to_string(), r.to_string()];
            row.extend(rational_cells(&v, precision));
            report.row(row);
            points.push(json!({ "r": r, "pmf": rational(&v, precision) }));
        }
        series.push(json!({ "code": label, "points": points }));
    }
    report.json = json!({
        "command": "reproduce",
        "target": "figure1",
        "version": env!("CARGO_PKG_VERSION"),
        "alpha_verified_by_enumeration": mismatches == 0,
        "series": series,
    });
    Ok((report, mismatches))
}
