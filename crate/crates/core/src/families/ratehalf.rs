//! The `k x 2k` binary construction with columns `e_1..e_k` followed by
//! `e_1+e_2, e_2+e_3, ..., e_k+e_1`.

use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::combinat::{
    binom, binom_memo, binom_signed, int, ratio, uint_to_rational, ExactRational,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GeneratorMatrix;
use crate::recovery::AlphaProfile;

pub(super) fn generator(k: usize) -> Result<GeneratorMatrix> {
    let unit = |t: usize| {
        let mut v = vec![0u32; k];
        v[t] = 1;
        v
    };
    let mut cols: Vec<Vec<u32>> = (0..k).map(unit).collect();
    for t in 0..k {
        let mut v = unit(t);
        v[(t + 1) % k] = 1;
        cols.push(v);
    }
    GeneratorMatrix::from_columns(Field::prime(2)?, k, &cols)
}

fn check(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::FamilyPrecondition(format!(
            "ratehalf needs k >= 3, got {k}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMethod {
    Recurrence,
    Closed,
}

thread_local! {
    static B_TABLE: RefCell<Vec<Vec<BigInt>>> = const { RefCell::new(Vec::new()) };
}

fn b_base(k: usize, j: usize) -> BigInt {
    match (k, j) {
        (_, 0) | (1, 2) => BigInt::from(1),
        (_, 1) => BigInt::from(2 * k + 1),
        _ => BigInt::zero(),
    }
}

/// Rows `0..=k` of the recurrence table, each of width `width`.
fn grow_table(table: &mut Vec<Vec<BigInt>>, k: usize, width: usize) {
    if table.first().is_some_and(|row| row.len() < width) {
        table.clear();
    }
    while table.len() <= k {
        let kk = table.len();
        let row = if kk < 2 {
            (0..width).map(|j| b_base(kk, j)).collect()
        } else {
            let mut row = vec![BigInt::zero(); width];
            let top = 2 * kk as u64 - 1;
            let mut c = BigUint::from(1u32);
            for (j, slot) in row.iter_mut().enumerate() {
                if j < 2 {
                    *slot = b_base(kk, j);
                } else {
                    *slot =
                        BigInt::from(c.clone()) + 2 * &table[kk - 1][j - 1] - &table[kk - 2][j - 2];
                }
                // binom(top, j + 1) from binom(top, j)
                c = if j as u64 >= top {
                    BigUint::zero()
                } else {
                    c * (top - j as u64) / (j as u64 + 1)
                };
            }
            row
        };
        table.push(row);
    }
}

fn b_recurrence(k: usize, j: usize) -> BigInt {
    B_TABLE.with(|t| {
        let mut t = t.borrow_mut();
        let width = (2 * k + 4).max(j + 1).max(t.first().map_or(0, Vec::len));
        grow_table(&mut t, k, width);
        t[k][j].clone()
    })
}

fn b_closed(k: i64, j: i64) -> BigInt {
    if j == 0 {
        return BigInt::from(1);
    }
    let sigma = if j <= k {
        (2 * (k - j + 1) + 1) * j - (j - 1)
    } else if j == k + 1 {
        1
    } else {
        0
    };
    let mut acc = BigInt::from(sigma);
    for t in 1..=(k - 1).min(j - 1) {
        acc += BigInt::from(binom_memo(2 * (k - t + 1) - 1, j - t + 1)) * t;
    }
    acc
}

/// `B(k, j)` from the four-case recurrence or from its closed form.
pub fn ratehalf_b(k: u64, j: u64, method: BMethod) -> BigUint {
    let v = match method {
        BMethod::Recurrence => b_recurrence(k as usize, j as usize),
        BMethod::Closed => b_closed(k as i64, j as i64),
    };
    v.to_biguint().expect("B(k, j) is non-negative")
}

/// `1 + sum_{j=1}^{2k-3} B(k-1, j) 2k / ((2k-j) binom(2k, j))`.
pub fn ratehalf_expectation(k: usize) -> Result<ExactRational> {
    check(k)?;
    let k = k as u64;
    let mut total = int(1);
    for j in 1..=2 * k - 3 {
        let b = ratehalf_b(k - 1, j, BMethod::Closed);
        total += uint_to_rational(&(b * (2 * k)))
            / uint_to_rational(&(binom(2 * k, j as i64) * (2 * k - j)));
    }
    Ok(total)
}

/// Profile obtained by subtracting the non-recovering sets, grouped by the
/// smallest minimal recovery set they would contain, from `binom(2k, s)`.
pub fn ratehalf_alpha(k: usize) -> Result<AlphaProfile> {
    check(k)?;
    let k = k as i64;
    let bc = |a: i64, b: i64| BigInt::from(binom_signed(a, b));
    let alpha = (0..=2 * k)
        .map(|s| {
            let mut miss = bc(2 * k - 1, s);
            for l in 2..=k {
                miss -= 2 * bc(2 * k - 2 * l + 1, s - l);
            }
            for j in 4..=k + 1 {
                miss += (j - 3) * bc(2 * k - 2 * j + 3, s - j);
            }
            if s == k + 1 {
                miss += k - 1;
            }
            (bc(2 * k, s) - miss)
                .to_biguint()
                .expect("non-negative count")
        })
        .collect();
    Ok(AlphaProfile::from_counts(None, alpha))
}

/// `(8 sqrt(3) pi - 18) / 27`, the limit of `E[tau]/k`.
pub fn ratehalf_limit() -> f64 {
    (8.0 * 3f64.sqrt() * std::f64::consts::PI - 18.0) / 27.0
}

/// The best bound on the same limit known before the exact value.
pub fn ratehalf_prior_bound() -> ExactRational {
    ratio(70318847, 74364290)
}

/// `arctan(1/x)` scaled by `scale`, truncated.
fn arctan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = scale / BigInt::from(x);
    let mut sum = power.clone();
    let mut n = 1u64;
    let mut sign = -1;
    while !power.is_zero() {
        power /= &x2;
        let term = &power / BigInt::from(2 * n + 1);
        if sign < 0 {
            sum -= term;
        } else {
            sum += term;
        }
        sign = -sign;
        n += 1;
    }
    sum
}

/// The limit constant scaled by `10^digits`, truncated; the true value lies
/// in `[v, v + 1] / 10^digits`.
fn limit_scaled(digits: usize) -> BigInt {
    let guard = 20;
    let scale = BigInt::from(10).pow((digits + guard) as u32);
    let pi = 16 * arctan_inv(5, &scale) - 4 * arctan_inv(239, &scale);
    let sqrt3 = (BigInt::from(3) * &scale * &scale).sqrt();
    let value: BigInt = (8 * sqrt3 * pi / &scale - 18 * &scale) / 27;
    value / BigInt::from(10).pow(guard as u32)
}

/// Decimal digits of the limit constant, truncated after `digits`
/// fractional places.
pub fn ratehalf_limit_digits(digits: usize) -> String {
    let s = format!(
        "{:0>width$}",
        limit_scaled(digits).to_string(),
        width = digits + 1
    );
    let (int_part, frac) = s.split_at(s.len() - digits);
    format!("{int_part}.{frac}")
}

/// Rational bracket `(lo, hi)` around the limit constant of width
/// `2 * 10^-digits`.
pub fn ratehalf_limit_bounds(digits: usize) -> (ExactRational, ExactRational) {
    let v = limit_scaled(digits);
    let den = BigInt::from(10).pow(digits as u32);
    (
        ExactRational::new(&v - 1, den.clone()),
        ExactRational::new(v + 1, den),
    )
}
