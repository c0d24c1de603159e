//! Exact moments, variance and point masses of the retrieval time, all as
//! functions of an [`AlphaProfile`].
//!
//! Raw moments come from two independent routes. The closed form sums, for
//! each non-recovering set size `s`, derivatives of the Stirling generating
//! function `F_s(x) = x^s / prod_{j<=s} (1 - jx)` at `x = 1/n`; the tail-sum
//! route adds `((r+1)^p - r^p) P(tau > r)` term by term and certifies the
//! remainder analytically.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{
    binom, factorial, int, ratio, stirling2, uint_to_rational, ExactRational, Stirling2Rows,
};
use crate::recovery::{survival, tail_envelope, AlphaProfile};

fn big(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// `E[tau_i] = sum_{s<n} complement(s) / binom(n-1, s)`.
pub fn expectation(p: &AlphaProfile) -> ExactRational {
    let n = p.n() as u64;
    (0..p.n())
        .map(|s| ExactRational::new(big(&p.complement(s)), big(&binom(n - 1, s as i64))))
        .sum()
}

/// Derivatives `D^(b) F_s (1/n)` for `b = 0..=order`, where
/// `F_s(x) = x^s prod_{j=1}^s 1/(1 - jx)`.
///
/// The Leibniz expansion over `s + 1` factors is regrouped as a product of
/// truncated Taylor series: factor `1/(1 - jx)` contributes
/// `j^u (n/(n-j))^(u+1)` at degree `u`, and `x^s` contributes
/// `binom(s, u) n^(u-s)`. The `b`-th derivative is `b!` times the degree-`b`
/// coefficient of the product.
pub fn generating_derivatives(s: usize, n: usize, order: usize) -> Vec<ExactRational> {
    assert!(s < n, "F_s(1/n) needs s < n");
    let nn = n as u64;
    let mut series: Vec<ExactRational> = (0..=order)
        .map(|u| {
            if u > s {
                ExactRational::zero()
            } else {
                // binom(s, u) * (1/n)^(s-u)
                ExactRational::new(
                    big(&binom(s as u64, u as i64)),
                    BigInt::from(nn).pow((s - u) as u32),
                )
            }
        })
        .collect();
    for j in 1..=s as u64 {
        let base = ratio(nn, nn - j);
        let mut factor = Vec::with_capacity(order + 1);
        let mut jpow = ExactRational::one();
        let mut bpow = base.clone();
        for _ in 0..=order {
            factor.push(&jpow * &bpow);
            jpow *= int(j);
            bpow *= &base;
        }
        series = (0..=order)
            .map(|u| (0..=u).map(|a| &series[a] * &factor[u - a]).sum())
            .collect();
    }
    series
        .into_iter()
        .enumerate()
        .map(|(b, c)| c * uint_to_rational(&factorial(b as u64)))
        .collect()
}

/// Closed-form raw moment `E[tau_i^p]`, `p >= 1`.
///
/// `sum_{s<n} complement(s) s! sum_{l<p} binom(p, l) sum_{b<=l} n^-b {l brace b} D^(b)F_s(1/n)`.
pub fn moment(prof: &AlphaProfile, p: u32) -> ExactRational {
    assert!(p >= 1, "moment order must be positive");
    let n = prof.n();
    let order = p as usize - 1;
    let inv_n = ratio(1, n as u64);
    let mut total = ExactRational::zero();
    for s in 0..n {
        let comp = prof.complement(s);
        if comp.is_zero() {
            continue;
        }
        let derivs = generating_derivatives(s, n, order);
        let mut inner = ExactRational::zero();
        for l in 0..p as u64 {
            let mut c_l = ExactRational::zero();
            let mut scale = ExactRational::one();
            for (b, d) in derivs.iter().enumerate().take(l as usize + 1) {
                let st = stirling2(l, b as u64);
                if !st.is_zero() {
                    c_l += &scale * uint_to_rational(&st) * d;
                }
                scale *= &inv_n;
            }
            inner += uint_to_rational(&binom(p as u64, l as i64)) * c_l;
        }
        total += uint_to_rational(&(comp * factorial(s as u64))) * inner;
    }
    total
}

/// Second moment via `sum_s complement(s)/binom(n-1,s) (1 + 2s + 2 sum_{l<=s} l/(n-l))`.
pub fn second_moment(p: &AlphaProfile) -> ExactRational {
    let n = p.n() as u64;
    let mut harmonic_like = ExactRational::zero();
    let mut total = ExactRational::zero();
    for s in 0..n {
        if s > 0 {
            harmonic_like += ratio(s, n - s);
        }
        let weight =
            ExactRational::new(big(&p.complement(s as usize)), big(&binom(n - 1, s as i64)));
        total += weight * (int(1 + 2 * s) + int(2) * &harmonic_like);
    }
    total
}

/// Variance from the double-sum form
/// `sum_v w_v (2v + 2 sum_{l<=v} l/(n-l) - sum_{s>=1} w_s)` with
/// `w_v = complement(v)/binom(n-1, v)`.
pub fn variance(p: &AlphaProfile) -> ExactRational {
    let n = p.n() as u64;
    let weights: Vec<ExactRational> = (0..n)
        .map(|s| ExactRational::new(big(&p.complement(s as usize)), big(&binom(n - 1, s as i64))))
        .collect();
    let tail: ExactRational = weights.iter().skip(1).sum();
    let mut harmonic_like = ExactRational::zero();
    let mut total = ExactRational::zero();
    for (v, w) in weights.iter().enumerate() {
        let v = v as u64;
        if v > 0 {
            harmonic_like += ratio(v, n - v);
        }
        total += w * (int(2 * v) + int(2) * &harmonic_like - &tail);
    }
    total
}

/// `P[tau_i = r] = n^-r sum_{s<=r} ({r brace s} - n {r-1 brace s}) s! alpha[s]`, `r >= 1`.
pub fn pmf(p: &AlphaProfile, r: usize) -> ExactRational {
    assert!(r >= 1, "pmf is supported on r >= 1");
    let n = p.n() as u64;
    let mut acc = BigInt::zero();
    for s in 1..=r.min(p.n()) {
        let a = p.alpha(s);
        if a.is_zero() {
            continue;
        }
        let coeff = big(&stirling2(r as u64, s as u64))
            - BigInt::from(n) * big(&stirling2(r as u64 - 1, s as u64));
        acc += coeff * big(&(factorial(s as u64) * a));
    }
    ExactRational::new(acc, BigInt::from(n).pow(r as u32))
}

/// Point masses for `r = 1..=rmax` with the exact remaining mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmfTable {
    pub entries: Vec<ExactRational>,
    /// `P(tau > rmax)`.
    pub tail: ExactRational,
}

impl PmfTable {
    pub fn rmax(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize) -> &ExactRational {
        &self.entries[r - 1]
    }

    pub fn total(&self) -> ExactRational {
        self.entries.iter().sum::<ExactRational>() + &self.tail
    }
}

pub fn pmf_table(p: &AlphaProfile, rmax: usize) -> PmfTable {
    PmfTable {
        entries: (1..=rmax).map(|r| pmf(p, r)).collect(),
        tail: survival(p, rmax),
    }
}

/// Partial tail sum with a certified bound on what was left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSum {
    /// `sum_{r=0}^{last} ((r+1)^p - r^p) P(tau > r)`.
    pub sum: ExactRational,
    /// Upper bound on the omitted terms `r > last`.
    pub remainder: ExactRational,
    pub last: usize,
}

fn power_gap(r: u64, p: u32) -> BigInt {
    BigInt::from(r + 1).pow(p) - BigInt::from(r).pow(p)
}

/// Bound on `sum_{r > last} ((r+1)^p - r^p) P(tau > r)`.
///
/// With `A = sum_s complement(s)` and `rho = (n-1)/n`, `P(tau > r) <= A rho^r`
/// because `s! {r brace s} <= s^r <= (n-1)^r` for `s < n`. The gaps satisfy
/// `p r^(p-1) <= (r+1)^p - r^p <= p (r+1)^(p-1)`, so consecutive bound
/// terms past `last` shrink at least by `c = rho ((last+3)/(last+1))^(p-1)`;
/// whenever `c < 1` the remainder is at most `A gap(last+1) rho^(last+1) / (1-c)`.
fn remainder_bound(envelope: &BigUint, n: u64, p: u32, last: u64) -> Option<ExactRational> {
    let e = p - 1;
    let lo = BigInt::from(last + 1).pow(e) * BigInt::from(n);
    let hi = BigInt::from(last + 3).pow(e) * BigInt::from(n - 1);
    if hi >= lo {
        return None;
    }
    let one_minus_c = ExactRational::new(&lo - &hi, lo);
    let rho_pow = ExactRational::new(
        BigInt::from(n - 1).pow(last as u32 + 1),
        BigInt::from(n).pow(last as u32 + 1),
    );
    let first = ExactRational::from_integer(big(envelope) * power_gap(last + 1, p)) * rho_pow;
    Some(first / one_minus_c)
}

/// Tail-sum evaluation of `E[tau_i^p]` to within `eps`.
pub fn moment_tailsum(prof: &AlphaProfile, p: u32, eps: &ExactRational) -> TailSum {
    assert!(p >= 1, "moment order must be positive");
    assert!(*eps > ExactRational::zero(), "eps must be positive");
    let n = prof.n();
    let nn = n as u64;
    let envelope = tail_envelope(prof);
    let mut last = n as u64;
    let remainder = loop {
        if let Some(b) = remainder_bound(&envelope, nn, p, last) {
            if b <= *eps {
                break b;
            }
        }
        last += 1 + last / 8;
    };
    let weights: Vec<BigUint> = (0..=n)
        .map(|s| factorial(s as u64) * prof.complement(s))
        .collect();
    let mut rows = Stirling2Rows::new(n);
    // Horner accumulation of sum_r gap(r) count(r) n^(last - r).
    let mut acc = BigInt::zero();
    for r in 0..=last {
        let row = rows.next_row();
        let count: BigUint = row.iter().zip(&weights).map(|(a, b)| a * b).sum();
        acc = acc * BigInt::from(nn) + power_gap(r, p) * big(&count);
    }
    TailSum {
        sum: ExactRational::new(acc, BigInt::from(nn).pow(last as u32)),
        remainder,
        last: last as usize,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    TailSum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentEntry {
    pub order: u32,
    pub value: ExactRational,
    pub method: Method,
    /// Certified remainder for tail-sum entries.
    pub tail_bound: Option<ExactRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    pub n: usize,
    pub strand: Option<usize>,
    pub moments: Vec<MomentEntry>,
    pub variance: ExactRational,
}

impl MomentReport {
    /// Closed-form moments for each requested order.
    pub fn closed_form(p: &AlphaProfile, orders: &[u32]) -> MomentReport {
        let moments = orders
            .iter()
            .map(|&order| MomentEntry {
                order,
                value: if order == 1 {
                    expectation(p)
                } else {
                    moment(p, order)
                },
                method: Method::ClosedForm,
                tail_bound: None,
            })
            .collect();
        MomentReport {
            n: p.n(),
            strand: p.strand(),
            moments,
            variance: variance(p),
        }
    }

    /// Tail-sum moments, each within `eps` of the exact value.
    pub fn tail_sum(p: &AlphaProfile, orders: &[u32], eps: &ExactRational) -> MomentReport {
        let moments = orders
            .iter()
            .map(|&order| {
                let t = moment_tailsum(p, order, eps);
                MomentEntry {
                    order,
                    value: t.sum,
                    method: Method::TailSum,
                    tail_bound: Some(t.remainder),
                }
            })
            .collect();
        MomentReport {
            n: p.n(),
            strand: p.strand(),
            moments,
            variance: variance(p),
        }
    }

    pub fn get(&self, order: u32) -> Option<&ExactRational> {
        self.moments
            .iter()
            .find(|m| m.order == order)
            .map(|m| &m.value)
    }
}
