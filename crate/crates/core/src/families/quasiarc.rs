//! Dimension-3 codes built from balanced quasi-arcs with parameters `x`, `y`
//! (length `3x + 3y`): finite expectation, its limit along `y = eps x`, and
//! the minimizing ratio.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinat::{binom, int, ratio, uint_to_rational, ExactRational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiArcParams {
    pub x: u64,
    pub y: u64,
}

impl QuasiArcParams {
    pub fn new(x: u64, y: u64) -> Result<QuasiArcParams> {
        if x == 0 {
            return Err(Error::FamilyPrecondition("quasi-arc needs x >= 1".into()));
        }
        Ok(QuasiArcParams { x, y })
    }

    pub fn n(&self) -> u64 {
        3 * self.x + 3 * self.y
    }

    pub fn k(&self) -> u64 {
        3
    }
}

/// `sum_{s=3}^{last} t_s` where `t_{s+1} = t_s a_s / b_s`, evaluated inside
/// out on an unreduced fraction.
fn running_product_sum(
    t3: ExactRational,
    last: u64,
    step: impl Fn(u64) -> (BigInt, BigInt),
) -> ExactRational {
    if last < 3 {
        return ExactRational::zero();
    }
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for s in (3..last).rev() {
        let (a, b) = step(s);
        num = a * (&den + num);
        den *= b;
    }
    t3 * ExactRational::new(&den + num, den)
}

/// Exact `E[tau_i(G_{x,y})]`, the same for every strand.
pub fn quasiarc_expectation(params: QuasiArcParams) -> ExactRational {
    let QuasiArcParams { x, y } = params;
    let n = params.n();
    let (xi, yi, ni) = (x as i64, y as i64, n as i64);
    let mut total = int(3) + ratio(2, ni - 2) - ratio(yi - 1, ni - 1);
    let pair_terms = 2 * (xi * yi + xi * (xi - 1) / 2) + yi * (3 * xi + 2 * yi) + yi * (yi - 1) / 2;
    total -= ExactRational::new(BigInt::from(pair_terms), BigInt::from(binom(n - 1, 2)));

    // sum_{s=3}^{x+2y} prod_{j<s} (x+2y-j)/(n-1-j)
    let a = x + 2 * y;
    if a >= 3 {
        let t3 = (0..3).fold(int(1), |acc, j| {
            acc * ratio((a - j) as i64, (n - 1 - j) as i64)
        });
        total += running_product_sum(t3, a, |s| (BigInt::from(a - s), BigInt::from(n - 1 - s)));
    }
    // sum_{s=3}^{y+1} 2 x binom(y, s-1) / binom(n-1, s)
    if y + 1 >= 3 {
        let t3 = uint_to_rational(&(binom(y, 2) * (2 * x))) / uint_to_rational(&binom(n - 1, 3));
        total += running_product_sum(t3, y + 1, |s| {
            (
                BigInt::from((y + 1 - s) * (s + 1)),
                BigInt::from(s * (n - 1 - s)),
            )
        });
    }
    total
}

fn poly(coeffs: &[i64], x: &ExactRational) -> ExactRational {
    coeffs
        .iter()
        .rev()
        .fold(ExactRational::zero(), |acc, &c| acc * x + int(c))
}

const LIMIT_NUM: [i64; 6] = [153, 543, 805, 611, 234, 36];
const DERIV_NUM: [i64; 7] = [-261, -513, -63, 583, 592, 238, 36];

/// `(153 + 543e + 805e^2 + 611e^3 + 234e^4 + 36e^5) / (3 (1+e)^2 (2+e) (3+2e)^2)`.
pub fn quasiarc_limit(eps: &ExactRational) -> ExactRational {
    assert!(!eps.is_negative(), "eps must be non-negative");
    let one = int(1);
    let den = int(3) * (&one + eps).pow(2) * (int(2) + eps) * (int(3) + int(2) * eps).pow(2);
    poly(&LIMIT_NUM, eps) / den
}

pub fn quasiarc_limit_f64(eps: f64) -> f64 {
    let num = LIMIT_NUM
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * eps + c as f64);
    num / (3.0 * (1.0 + eps).powi(2) * (2.0 + eps) * (3.0 + 2.0 * eps).powi(2))
}

/// Numerator of the derivative of [`quasiarc_limit`] up to a positive factor.
pub fn quasiarc_derivative_numerator(eps: &ExactRational) -> ExactRational {
    poly(&DERIV_NUM, eps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    /// Midpoint of the final bracket.
    pub epsilon: ExactRational,
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub minimum: ExactRational,
    /// Bound on `|numerator(epsilon)|` from the bracket width and a
    /// Lipschitz constant of the numerator on `[0, 4]`.
    pub residual_bound: ExactRational,
}

/// Bisection for the unique positive stationary point on `(0, 4]`.
pub fn quasiarc_optimize(tolerance: &ExactRational) -> Optimum {
    assert!(tolerance.is_positive(), "tolerance must be positive");
    let mut lo = int(0);
    let mut hi = int(4);
    assert!(quasiarc_derivative_numerator(&lo).is_negative());
    assert!(quasiarc_derivative_numerator(&hi).is_positive());
    while &hi - &lo > *tolerance {
        let mid = (&lo + &hi) / int(2);
        if quasiarc_derivative_numerator(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let epsilon = (&lo + &hi) / int(2);
    let lipschitz: i64 = DERIV_NUM
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c.abs() * i as i64 * 4i64.pow(i as u32 - 1))
        .sum();
    let residual_bound = int(lipschitz) * (&hi - &lo) / int(2);
    Optimum {
        minimum: quasiarc_limit(&epsilon),
        epsilon,
        lower: lo,
        upper: hi,
        residual_bound,
    }
}
