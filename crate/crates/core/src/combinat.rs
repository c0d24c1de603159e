//! Exact integers, rationals and the combinatorial number families used by
//! every distribution formula.

use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type ExactRational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(v.into())
}

pub fn uint_to_rational(v: &BigUint) -> ExactRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * j)
}

/// `binom(a, b)`, zero when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for j in 0..b {
        acc *= a - j;
        acc /= j + 1;
    }
    acc
}

/// `binom(a, b)` for a possibly negative upper index, zero outside
/// `0 <= b <= a`.
pub fn binom_signed(a: i64, b: i64) -> BigUint {
    if a < 0 {
        return BigUint::zero();
    }
    binom(a as u64, b)
}

/// Gaussian binomial `[a choose b]_q`, zero for `b < 0` or `b > a`.
pub fn gauss_binom(a: u64, b: i64, q: u64) -> BigUint {
    assert!(q >= 2, "gauss_binom needs q >= 2");
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = b as u64;
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for t in 0..b {
        num *= q.pow((a - t) as u32) - 1u32;
        den *= q.pow((t + 1) as u32) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> ExactRational {
    (1..=n).fold(ExactRational::zero(), |acc, j| acc + ratio(1, j))
}

#[derive(Default)]
struct Triangle {
    rows: Vec<Vec<BigUint>>,
}

impl Triangle {
    /// Grows rows `0..=r` using `T(r, s) = w(r, s) T(r-1, s) + T(r-1, s-1)`
    /// and `T(r, 0) = edge` for `r > 0`.
    fn grow(&mut self, r: usize, edge: u32, weight: impl Fn(usize, usize) -> u64) {
        if self.rows.is_empty() {
            self.rows.push(vec![BigUint::one()]);
        }
        while self.rows.len() <= r {
            let n = self.rows.len();
            let prev = &self.rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            row[0] = BigUint::from(edge);
            for s in 1..=n {
                let mut v = if s < n {
                    prev[s].clone() * weight(n, s)
                } else {
                    BigUint::zero()
                };
                v += &prev[s - 1];
                row[s] = v;
            }
            self.rows.push(row);
        }
    }
}

thread_local! {
    static STIRLING2: RefCell<Triangle> = RefCell::new(Triangle::default());
    static STIRLING1: RefCell<Triangle> = RefCell::new(Triangle::default());
    static PASCAL: RefCell<Triangle> = RefCell::new(Triangle::default());
}

/// `binom(a, b)` from a memoized Pascal triangle; suited to many lookups
/// with moderate `a`.
pub fn binom_memo(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    PASCAL.with(|t| {
        let mut t = t.borrow_mut();
        t.grow(a as usize, 1, |_, _| 1);
        t.rows[a as usize][b as usize].clone()
    })
}

/// Stirling number of the second kind `{r brace s}`.
pub fn stirling2(r: u64, s: u64) -> BigUint {
    if s > r {
        return BigUint::zero();
    }
    STIRLING2.with(|t| {
        let mut t = t.borrow_mut();
        t.grow(r as usize, 0, |_, s| s as u64);
        t.rows[r as usize][s as usize].clone()
    })
}

/// Unsigned Stirling number of the first kind `[s brack r]`.
pub fn stirling1_unsigned(s: u64, r: u64) -> BigUint {
    if r > s {
        return BigUint::zero();
    }
    STIRLING1.with(|t| {
        let mut t = t.borrow_mut();
        t.grow(s as usize, 0, |n, _| n as u64 - 1);
        t.rows[s as usize][r as usize].clone()
    })
}

/// Rows `{r brace 0..=width}` for `r = 0, 1, 2, ...`, truncated to a fixed
/// width so that long tail sums stay cheap.
pub struct Stirling2Rows {
    row: Vec<BigUint>,
    started: bool,
}

impl Stirling2Rows {
    pub fn new(width: usize) -> Stirling2Rows {
        let mut row = vec![BigUint::zero(); width + 1];
        row[0] = BigUint::one();
        Stirling2Rows {
            row,
            started: false,
        }
    }

    /// Advances to the next row and returns it.
    pub fn next_row(&mut self) -> &[BigUint] {
        if self.started {
            for s in (1..self.row.len()).rev() {
                let prev = std::mem::take(&mut self.row[s]);
                self.row[s] = prev * s as u64 + &self.row[s - 1];
            }
            self.row[0] = BigUint::zero();
        }
        self.started = true;
        &self.row
    }
}

/// JSON shape for every exact rational in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub approx: String,
}

impl RationalJson {
    pub fn new(x: &ExactRational, precision: usize) -> RationalJson {
        RationalJson {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
            approx: to_decimal(x, precision),
        }
    }
}

/// Decimal rendering with `digits` fractional digits, rounded half away
/// from zero.
pub fn to_decimal(x: &ExactRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let mut units = floor.to_integer();
    if frac >= ratio(1, 2) {
        units += 1;
    }
    let (int_part, frac_part) = units.div_rem(&scale);
    let sign = if x.is_negative() && !units.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits
    )
}

pub fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> ExactRational {
    BigRational::from_float(x).expect("finite float")
}
