//! Code families with explicit generator matrices and closed-form recovery
//! profiles: identity, MDS (Reed-Solomon), Hamming, simplex and the rate-1/2
//! cyclic construction. Quasi-arc codes are handled through their
//! expectation formula only.

mod quasiarc;
mod ratehalf;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinat::{
    binom, factorial, gauss_binom, harmonic, int, ratio, stirling2, uint_to_rational, ExactRational,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GeneratorMatrix;
use crate::recovery::{alpha_from_xi, AlphaProfile, XiTable};

pub use quasiarc::{
    quasiarc_derivative_numerator, quasiarc_expectation, quasiarc_limit, quasiarc_limit_f64,
    quasiarc_optimize, Optimum, QuasiArcParams,
};
pub use ratehalf::{
    ratehalf_alpha, ratehalf_b, ratehalf_expectation, ratehalf_limit, ratehalf_limit_bounds,
    ratehalf_limit_digits, ratehalf_prior_bound, BMethod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Identity {
        n: usize,
    },
    Mds {
        q: u64,
        n: usize,
        k: usize,
    },
    /// Redundancy `m`; length `(q^m - 1)/(q - 1)`.
    Hamming {
        q: u64,
        m: u32,
    },
    Simplex {
        q: u64,
        k: u32,
    },
    RateHalf {
        k: usize,
    },
}

fn projective_count(q: u64, m: u32) -> Option<u64> {
    let total = q.checked_pow(m)?;
    Some((total - 1) / (q - 1))
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::FamilyPrecondition(msg));
        match *self {
            FamilySpec::Identity { n } => {
                if n == 0 {
                    return fail("identity needs n >= 1".into());
                }
            }
            FamilySpec::Mds { q, n, k } => {
                Field::with_order(q)?;
                if k == 0 || k > n {
                    return fail(format!("mds needs 1 <= k <= n, got k={k}, n={n}"));
                }
                if n as u64 > q {
                    return fail(format!("mds needs n <= q, got n={n}, q={q}"));
                }
            }
            FamilySpec::Hamming { q, m } => {
                Field::with_order(q)?;
                if m < 2 {
                    return fail("hamming needs redundancy m >= 2".into());
                }
                if projective_count(q, m).is_none_or(|n| n > 64) {
                    return fail(format!("hamming({q},{m}) is longer than 64"));
                }
            }
            FamilySpec::Simplex { q, k } => {
                Field::with_order(q)?;
                if k < 2 {
                    return fail("simplex needs k >= 2".into());
                }
                if projective_count(q, k).is_none_or(|n| n > 64) {
                    return fail(format!("simplex({q},{k}) is longer than 64"));
                }
            }
            FamilySpec::RateHalf { k } => {
                if k < 3 {
                    return fail(format!("ratehalf needs k >= 3, got {k}"));
                }
                if 2 * k > 64 {
                    return fail(format!("ratehalf({k}) is longer than 64"));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::Identity { n } | FamilySpec::Mds { n, .. } => n,
            FamilySpec::Hamming { q, m } => projective_count(q, m).unwrap_or(0) as usize,
            FamilySpec::Simplex { q, k } => projective_count(q, k).unwrap_or(0) as usize,
            FamilySpec::RateHalf { k } => 2 * k,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            FamilySpec::Identity { n } => n,
            FamilySpec::Mds { k, .. } | FamilySpec::RateHalf { k } => k,
            FamilySpec::Hamming { m, .. } => self.n() - m as usize,
            FamilySpec::Simplex { k, .. } => k as usize,
        }
    }

    pub fn q(&self) -> u64 {
        match *self {
            FamilySpec::Identity { .. } | FamilySpec::RateHalf { .. } => 2,
            FamilySpec::Mds { q, .. }
            | FamilySpec::Hamming { q, .. }
            | FamilySpec::Simplex { q, .. } => q,
        }
    }

    /// Closed-form profile, identical for every strand.
    pub fn alpha(&self) -> Result<AlphaProfile> {
        self.validate()?;
        match *self {
            FamilySpec::Identity { n } => Ok(mds_alpha(n, n)),
            FamilySpec::Mds { n, k, .. } => Ok(mds_alpha(n, k)),
            FamilySpec::Hamming { q, m } => hamming_alpha(q, m),
            FamilySpec::Simplex { q, k } => Ok(simplex_alpha(q, k)),
            FamilySpec::RateHalf { k } => ratehalf_alpha(k),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Identity { n } => write!(f, "identity({n})"),
            FamilySpec::Mds { q, n, k } => write!(f, "mds({q},{n},{k})"),
            FamilySpec::Hamming { q, m } => write!(f, "hamming({q},{m})"),
            FamilySpec::Simplex { q, k } => write!(f, "simplex({q},{k})"),
            FamilySpec::RateHalf { k } => write!(f, "ratehalf({k})"),
        }
    }
}

pub fn family_generator(spec: &FamilySpec) -> Result<GeneratorMatrix> {
    spec.validate()?;
    match *spec {
        FamilySpec::Identity { n } => GeneratorMatrix::identity(Field::prime(2)?, n),
        FamilySpec::Mds { q, n, k } => mds_generator(q, n, k),
        FamilySpec::Hamming { q, m } => hamming_generator(q, m),
        FamilySpec::Simplex { q, k } => simplex_generator(q, k),
        FamilySpec::RateHalf { k } => ratehalf::generator(k),
    }
}

/// Rows `x_j^a`, `a < k`, at the points with reprs `0..n`, brought to
/// systematic form without permuting columns.
fn mds_generator(q: u64, n: usize, k: usize) -> Result<GeneratorMatrix> {
    let field = Field::with_order(q)?;
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|a| (0..n as u32).map(|x| field.pow(x, a as u64)).collect())
        .collect();
    let g = GeneratorMatrix::new(field, rows)?;
    Ok(g.systematic_form(false)?.0)
}

/// Nonzero vectors of length `m` whose first nonzero coordinate is 1,
/// in lexicographic order of their coordinate reprs.
fn projective_points(q: u64, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = q.pow(m);
    for code in 1..total {
        let mut v = vec![0u32; m as usize];
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = (c % q) as u32;
            c /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn unit(m: usize, t: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[t] = 1;
    v
}

/// Unit vectors `e_1..e_k`, then the remaining normalized points.
fn simplex_generator(q: u64, k: u32) -> Result<GeneratorMatrix> {
    let field = Field::with_order(q)?;
    let k = k as usize;
    let units: Vec<Vec<u32>> = (0..k).map(|t| unit(k, t)).collect();
    let mut cols = units.clone();
    cols.extend(
        projective_points(q, k as u32)
            .into_iter()
            .filter(|p| !units.contains(p)),
    );
    GeneratorMatrix::from_columns(field, k, &cols)
}

/// `H = [A | I_m]` with the non-unit normalized points as columns of `A`,
/// and `G = [I | -A^T]`.
fn hamming_generator(q: u64, m: u32) -> Result<GeneratorMatrix> {
    let field = Field::with_order(q)?;
    let mu = m as usize;
    let units: Vec<Vec<u32>> = (0..mu).map(|t| unit(mu, t)).collect();
    let a: Vec<Vec<u32>> = projective_points(q, m)
        .into_iter()
        .filter(|p| !units.contains(p))
        .collect();
    let k = a.len();
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            let mut row = unit(k + mu, j);
            for t in 0..mu {
                row[k + t] = field.neg(a[j][t]);
            }
            row
        })
        .collect();
    GeneratorMatrix::new(field, rows)
}

/// `alpha[s] = binom(n-1, s-1)` for `s < k`, `binom(n, s)` otherwise.
pub fn mds_alpha(n: usize, k: usize) -> AlphaProfile {
    let (n64, k) = (n as u64, k);
    let alpha = (0..=n)
        .map(|s| match s {
            0 => BigUint::zero(),
            s if s < k => binom(n64 - 1, s as i64 - 1),
            s => binom(n64, s as i64),
        })
        .collect();
    AlphaProfile::from_counts(None, alpha)
}

/// `2n(n-k)(H_{n-k-1} - H_{n-1}) + 2nk - (k-1)k` for `k < n`.
///
/// At `k = n` that expression evaluates to `n^2 + n`; its derivation uses
/// `sum_{m=1}^{N} H_m = (N+1) H_N - N` at `N = -1`, where the sum is empty.
/// The uncoded layout is geometric with variance `n^2 - n`.
pub fn mds_variance_closed(n: usize, k: usize) -> ExactRational {
    let (n, k) = (n as i64, k as i64);
    if k == n {
        return int(n * n - n);
    }
    int(2 * n * (n - k)) * (harmonic((n - k - 1) as u64) - harmonic((n - 1) as u64))
        + int(2 * n * k - (k - 1) * k)
}

pub fn mds_pmf_closed(n: usize, k: usize, r: usize) -> ExactRational {
    assert!(r >= 1, "pmf is supported on r >= 1");
    let nn = n as u64;
    if r < k {
        return ratio(
            BigInt::from(nn - 1).pow(r as u32 - 1),
            BigInt::from(nn).pow(r as u32),
        );
    }
    let r1 = r as u64 - 1;
    let mut acc = BigUint::zero();
    for l in 1..k.saturating_sub(1) as u64 {
        acc += binom(nn - 1, l as i64) * stirling2(r1, l) * factorial(l);
    }
    let km1 = k as u64 - 1;
    acc += binom(nn - 1, km1 as i64) * stirling2(r1, km1) * (nn - km1) * factorial(km1);
    uint_to_rational(&acc) / int(BigInt::from(nn).pow(r as u32))
}

/// Geometric point mass `((n-1)/n)^(r-1) / n` of the uncoded layout.
pub fn identity_pmf(n: usize, r: usize) -> ExactRational {
    mds_pmf_closed(n, n, r)
}

/// `sum_{d<=s} [k-1, d-1]_q sum_{r<=d} [d, r]_q binom((q^r-1)/(q-1), s) (-1)^(d-r) q^binom(d-r, 2)`.
pub fn simplex_alpha(q: u64, k: u32) -> AlphaProfile {
    let n = projective_count(q, k).expect("validated length") as usize;
    let qb = BigInt::from(q);
    let alpha = (0..=n as i64)
        .map(|s| {
            let mut acc = BigInt::zero();
            for d in 1..=s.min(k as i64) {
                let outer = BigInt::from(gauss_binom(k as u64 - 1, d - 1, q));
                if outer.is_zero() {
                    continue;
                }
                let mut inner = BigInt::zero();
                for r in 1..=d {
                    let pts = (q.pow(r as u32) - 1) / (q - 1);
                    let mut term = BigInt::from(gauss_binom(d as u64, r, q) * binom(pts, s))
                        * qb.pow(((d - r) * (d - r - 1) / 2) as u32);
                    if (d - r) % 2 == 1 {
                        term = -term;
                    }
                    inner += term;
                }
                acc += outer * inner;
            }
            acc.to_biguint().expect("simplex counts are non-negative")
        })
        .collect();
    AlphaProfile::from_counts(None, alpha)
}

fn gamma(q: u64, m: u32, j: u64, v: u32) -> BigInt {
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    for u in v..m {
        let d = u - v;
        let mut term = qb.pow(u)
            * BigInt::from(gauss_binom((m - v - 1) as u64, d as i64, q))
            * BigInt::from(binom(q.pow(m - u - 1), j as i64))
            * qb.pow(d * d.saturating_sub(1) / 2);
        if d % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    BigInt::from(gauss_binom(m as u64 - 1, v as i64, q)) * acc
}

/// Union-size census of the minimal recovery sets of a systematic Hamming
/// code with redundancy `m`, for any strand.
///
/// The singleton `{e_i}` is entered directly as `xi(1, 1) = 1`; the
/// `gamma(j-1, v)` branch is used only for `j >= 2`, and contributions that
/// land on the same `(j, s)` are added.
pub fn hamming_xi_closed(q: u64, m: u32) -> Result<XiTable> {
    FamilySpec::Hamming { q, m }.validate()?;
    let l = q.pow(m - 1) as usize + 1;
    let qm = q.pow(m);
    let mut table = XiTable::new(l);
    table.add(1, 1, BigUint::one());
    for j in 1..=l as u64 {
        for v in 0..m {
            let s_hi = ((qm - q.pow(v)) / (q - 1)) as usize;
            let g = gamma(q, m, j, v);
            if let Some(g) = g.to_biguint() {
                table.add(j as usize, s_hi - 1, g);
            }
            if j >= 2 {
                if let Some(g) = gamma(q, m, j - 1, v).to_biguint() {
                    table.add(j as usize, s_hi, g);
                }
            }
        }
    }
    if !table.is_consistent() {
        return Err(Error::InconsistentXi(format!(
            "hamming({q},{m}) census does not total binom(L, j)"
        )));
    }
    Ok(table)
}

pub fn hamming_alpha(q: u64, m: u32) -> Result<AlphaProfile> {
    let xi = hamming_xi_closed(q, m)?;
    let n = projective_count(q, m).expect("validated length") as usize;
    alpha_from_xi(&xi, n)
}
