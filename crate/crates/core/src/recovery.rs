//! Recovery-set counts for a single information strand.
//!
//! `alpha[s]` is the number of `s`-subsets of column indices whose span
//! contains `e_i`; `beta(r)` counts ordered length-`r` index lists with the
//! same property. Both carry the full distribution of the retrieval time.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinat::{binom, factorial, stirling1_unsigned, stirling2, ExactRational};
use crate::error::{Error, Result};
use crate::matrix::{GeneratorMatrix, SpanState};

/// Default cap on `n` for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Cap on the number of minimal recovery sets for the union census.
pub const MAX_MINIMAL_SETS: usize = 25;

/// `alpha_i(G, s)` for `s = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaProfile {
    strand: Option<usize>,
    alpha: Vec<BigUint>,
}

impl AlphaProfile {
    /// Checked constructor. `strand` is one-based, or `None` for profiles
    /// that do not depend on the strand.
    pub fn new(strand: Option<usize>, alpha: Vec<BigUint>) -> Result<AlphaProfile> {
        let p = AlphaProfile { strand, alpha };
        p.validate()?;
        Ok(p)
    }

    /// Wraps counts without checking the invariants.
    pub fn from_counts(strand: Option<usize>, alpha: Vec<BigUint>) -> AlphaProfile {
        assert!(!alpha.is_empty(), "profile needs at least alpha[0]");
        AlphaProfile { strand, alpha }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidProfile("length must be at least 1".into()));
        }
        if !self.alpha[0].is_zero() {
            return Err(Error::InvalidProfile("alpha[0] must be 0".into()));
        }
        if !self.alpha[n].is_one() {
            return Err(Error::InvalidProfile("alpha[n] must be 1".into()));
        }
        for (s, a) in self.alpha.iter().enumerate() {
            if *a > binom(n as u64, s as i64) {
                return Err(Error::InvalidProfile(format!(
                    "alpha[{s}] exceeds binom(n, s)"
                )));
            }
        }
        if !self.satisfies_superset_growth() {
            return Err(Error::InvalidProfile("superset growth violated".into()));
        }
        Ok(())
    }

    /// `(s+1) alpha[s+1] >= (n-s) alpha[s]` for every `s < n`.
    pub fn satisfies_superset_growth(&self) -> bool {
        let n = self.n();
        (0..n).all(|s| {
            self.alpha[s + 1].clone() * (s as u64 + 1) >= self.alpha[s].clone() * (n - s) as u64
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn strand(&self) -> Option<usize> {
        self.strand
    }

    pub fn with_strand(mut self, strand: Option<usize>) -> AlphaProfile {
        self.strand = strand;
        self
    }

    pub fn alpha(&self, s: usize) -> &BigUint {
        &self.alpha[s]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.alpha
    }

    /// `binom(n, s) - alpha[s]`: the number of `s`-sets that do not recover.
    pub fn complement(&self, s: usize) -> BigUint {
        binom(self.n() as u64, s as i64) - &self.alpha[s]
    }

    /// Decimal strings, the JSON shape of a profile.
    pub fn to_strings(&self) -> Vec<String> {
        self.alpha.iter().map(ToString::to_string).collect()
    }
}

/// Options for exhaustive enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub cap: usize,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            threads: 0,
        }
    }
}

pub(crate) fn check_strand(m: &GeneratorMatrix, strand: usize) -> Result<()> {
    if strand == 0 || strand > m.k() {
        return Err(Error::IndexOutOfRange {
            index: strand,
            bound: m.k(),
        });
    }
    Ok(())
}

fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![0u128; n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = 1;
        for b in 1..=a {
            t[a][b] = t[a - 1][b - 1] + if b < a { t[a - 1][b] } else { 0 };
        }
    }
    t
}

struct Enumerator<'a> {
    m: &'a GeneratorMatrix,
    unit: usize,
    pascal: Vec<Vec<u128>>,
}

impl Enumerator<'_> {
    /// Depth-first walk over increasing index sequences. `stack[depth]` holds
    /// the span of the current prefix. Once a prefix recovers, all of its
    /// extensions by larger indices do too and are counted in closed form.
    fn walk(&self, depth: usize, last: usize, stack: &mut Vec<SpanState>, counts: &mut [u128]) {
        let n = self.m.n();
        for c in last + 1..n {
            let (head, tail) = stack.split_at_mut(depth + 1);
            let child = &mut tail[0];
            child.copy_from(&head[depth]);
            child.insert(self.m.column(c));
            let size = depth + 1;
            if child.contains_unit(self.unit) {
                let free = n - 1 - c;
                for d in 0..=free {
                    counts[size + d] += self.pascal[free][d];
                }
            } else if c + 1 < n {
                self.walk(depth + 1, c, stack, counts);
            }
        }
    }

    fn branch(&self, first: usize) -> Vec<u128> {
        let n = self.m.n();
        let mut counts = vec![0u128; n + 1];
        let mut stack: Vec<SpanState> = (0..=n)
            .map(|_| SpanState::new(self.m.field().clone(), self.m.k()))
            .collect();
        stack[1].insert(self.m.column(first));
        if stack[1].contains_unit(self.unit) {
            let free = n - 1 - first;
            for d in 0..=free {
                counts[1 + d] += self.pascal[free][d];
            }
        } else {
            self.walk(1, first, &mut stack, &mut counts);
        }
        counts
    }
}

pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Exhaustive `alpha_i(G, s)` with the default cap.
pub fn alpha_bruteforce(m: &GeneratorMatrix, strand: usize) -> Result<AlphaProfile> {
    alpha_bruteforce_with(m, strand, EnumOptions::default())
}

/// Exhaustive `alpha_i(G, s)`. The lattice is split on the smallest chosen
/// index; partial counts merge by integer addition, so the result does not
/// depend on the thread count.
pub fn alpha_bruteforce_with(
    m: &GeneratorMatrix,
    strand: usize,
    opts: EnumOptions,
) -> Result<AlphaProfile> {
    check_strand(m, strand)?;
    let n = m.n();
    if n > opts.cap {
        return Err(Error::EnumerationCap { n, cap: opts.cap });
    }
    let e = Enumerator {
        m,
        unit: strand - 1,
        pascal: pascal(n),
    };
    let counts = in_pool(opts.threads, || {
        (0..n).into_par_iter().map(|first| e.branch(first)).reduce(
            || vec![0u128; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
    });
    let profile = AlphaProfile::from_counts(
        Some(strand),
        counts.into_iter().map(BigUint::from).collect(),
    );
    debug_assert!(profile.satisfies_superset_growth());
    Ok(profile)
}

/// `beta_i(G, r) = sum_s {r brace s} s! alpha[s]`. Valid for every `r`,
/// including `r > n`.
pub fn beta_of(profile: &AlphaProfile, r: usize) -> BigUint {
    (1..=r.min(profile.n()))
        .map(|s| stirling2(r as u64, s as u64) * factorial(s as u64) * profile.alpha(s))
        .sum()
}

/// Inverts [`beta_of`] from `betas[r - 1] = beta(r)`, `r = 1..=n`.
#[allow(clippy::needless_range_loop)]
pub fn alpha_from_beta(betas: &[BigUint], n: usize, strand: Option<usize>) -> Result<AlphaProfile> {
    if betas.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: betas.len(),
        });
    }
    let mut alpha = vec![BigUint::zero(); n + 1];
    for s in 1..=n {
        let mut acc = BigInt::zero();
        for r in 1..=s {
            let term = BigInt::from(stirling1_unsigned(s as u64, r as u64) * &betas[r - 1]);
            if (s - r) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, rem) = acc.div_rem(&BigInt::from(factorial(s as u64)));
        if !rem.is_zero() || q.is_negative() {
            return Err(Error::InconsistentBeta(format!(
                "alpha[{s}] is not a non-negative integer"
            )));
        }
        alpha[s] = q.to_biguint().expect("non-negative");
    }
    Ok(AlphaProfile::from_counts(strand, alpha))
}

/// `n^r - beta(r)`, the number of ordered `r`-lists that miss `e_i`,
/// computed as `sum_s s! {r brace s} complement(s)`.
pub fn survival_count(profile: &AlphaProfile, r: usize) -> BigUint {
    (0..=r.min(profile.n()))
        .map(|s| factorial(s as u64) * stirling2(r as u64, s as u64) * profile.complement(s))
        .sum()
}

/// `P(tau_i > r)`.
pub fn survival(profile: &AlphaProfile, r: usize) -> ExactRational {
    let n = BigUint::from(profile.n());
    ExactRational::new(survival_count(profile, r).into(), n.pow(r as u32).into())
}

/// `sum_s complement(s)`: the constant `A` in `P(tau > r) <= A ((n-1)/n)^r`,
/// which follows from `s! {r brace s} <= s^r`.
pub fn tail_envelope(profile: &AlphaProfile) -> BigUint {
    (0..profile.n()).map(|s| profile.complement(s)).sum()
}

fn recovers(m: &GeneratorMatrix, unit: usize, set: &[usize], state: &mut SpanState) -> bool {
    state.clear();
    for &c in set {
        state.insert(m.column(c));
    }
    state.contains_unit(unit)
}

/// All inclusion-minimal recovery sets for `strand`, one-based, ordered by
/// size and then lexicographically.
pub fn minimal_recovery_sets(m: &GeneratorMatrix, strand: usize) -> Result<Vec<Vec<usize>>> {
    minimal_recovery_sets_with(m, strand, DEFAULT_ENUMERATION_CAP)
}

pub fn minimal_recovery_sets_with(
    m: &GeneratorMatrix,
    strand: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    check_strand(m, strand)?;
    let n = m.n();
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let unit = strand - 1;
    let mut found = Vec::new();
    let mut stack: Vec<SpanState> = (0..=n)
        .map(|_| SpanState::new(m.field().clone(), m.k()))
        .collect();
    let mut scratch = SpanState::new(m.field().clone(), m.k());
    let mut prefix = Vec::with_capacity(n);
    // Every minimal set is reached: its proper prefixes never recover.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        m: &GeneratorMatrix,
        unit: usize,
        depth: usize,
        start: usize,
        prefix: &mut Vec<usize>,
        stack: &mut Vec<SpanState>,
        scratch: &mut SpanState,
        found: &mut Vec<Vec<usize>>,
    ) {
        for c in start..m.n() {
            let (head, tail) = stack.split_at_mut(depth + 1);
            tail[0].copy_from(&head[depth]);
            tail[0].insert(m.column(c));
            prefix.push(c);
            if tail[0].contains_unit(unit) {
                let minimal = (0..prefix.len()).all(|skip| {
                    let rest: Vec<usize> = prefix
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    !recovers(m, unit, &rest, scratch)
                });
                if minimal {
                    found.push(prefix.iter().map(|&x| x + 1).collect());
                }
            } else {
                walk(m, unit, depth + 1, c + 1, prefix, stack, scratch, found);
            }
            prefix.pop();
        }
    }
    walk(
        m,
        unit,
        0,
        0,
        &mut prefix,
        &mut stack,
        &mut scratch,
        &mut found,
    );
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// `xi(j, s)`: how many `j`-subsets of the minimal recovery sets have a
/// union of size `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiTable {
    l: usize,
    counts: BTreeMap<(usize, usize), BigUint>,
}

impl XiTable {
    pub fn new(l: usize) -> XiTable {
        XiTable {
            l,
            counts: BTreeMap::new(),
        }
    }

    /// Number of minimal recovery sets.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn get(&self, j: usize, s: usize) -> BigUint {
        self.counts.get(&(j, s)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, j: usize, s: usize, v: BigUint) {
        if v.is_zero() {
            return;
        }
        *self.counts.entry((j, s)).or_default() += v;
    }

    /// Nonzero entries in `(j, s)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.counts.iter().map(|(&(j, s), v)| (j, s, v))
    }

    /// Every `j`-subset has exactly one union size.
    pub fn is_consistent(&self) -> bool {
        (1..=self.l).all(|j| {
            let total: BigUint = self
                .counts
                .range((j, 0)..(j + 1, 0))
                .map(|(_, v)| v.clone())
                .sum();
            total == binom(self.l as u64, j as i64)
        }) && self.counts.keys().all(|&(j, _)| j >= 1 && j <= self.l)
    }
}

/// Union-size census over all nonempty subsets of `sets` (one-based
/// indices, each below 65).
pub fn xi_from_minimal(sets: &[Vec<usize>]) -> Result<XiTable> {
    let l = sets.len();
    if l > MAX_MINIMAL_SETS {
        return Err(Error::TooManyMinimalSets {
            count: l,
            cap: MAX_MINIMAL_SETS,
        });
    }
    let masks: Vec<u64> = sets
        .iter()
        .map(|set| set.iter().fold(0u64, |acc, &c| acc | 1u64 << (c - 1)))
        .collect();
    let mut counts = vec![vec![0u64; 65]; l + 1];
    fn walk(masks: &[u64], start: usize, j: usize, union: u64, counts: &mut [Vec<u64>]) {
        for h in start..masks.len() {
            let u = union | masks[h];
            counts[j + 1][u.count_ones() as usize] += 1;
            walk(masks, h + 1, j + 1, u, counts);
        }
    }
    walk(&masks, 0, 0, 0, &mut counts);
    let mut table = XiTable::new(l);
    for (j, row) in counts.iter().enumerate() {
        for (s, &c) in row.iter().enumerate() {
            table.add(j, s, BigUint::from(c));
        }
    }
    Ok(table)
}

/// Inclusion-exclusion over minimal recovery sets:
/// `alpha[s] = sum_j sum_{t<=s} binom(n-t, s-t) (-1)^(j+1) xi(j, t)`.
pub fn alpha_from_xi(xi: &XiTable, n: usize) -> Result<AlphaProfile> {
    let mut alpha = vec![BigUint::zero(); n + 1];
    for (s, slot) in alpha.iter_mut().enumerate().skip(1) {
        let mut acc = BigInt::zero();
        for (j, t, v) in xi.entries() {
            if t == 0 || t > s {
                continue;
            }
            let term = BigInt::from(binom((n - t) as u64, (s - t) as i64) * v);
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(Error::InconsistentXi(format!(
                "alpha[{s}] came out negative"
            )));
        }
        *slot = acc.to_biguint().expect("non-negative");
    }
    let p = AlphaProfile::from_counts(None, alpha);
    debug_assert!(p.satisfies_superset_growth());
    Ok(p)
}

/// Profiles for every strand `1..=k`.
pub fn alpha_all_strands(m: &GeneratorMatrix, opts: EnumOptions) -> Result<Vec<AlphaProfile>> {
    (1..=m.k())
        .map(|i| alpha_bruteforce_with(m, i, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{int, ratio};
    use crate::field::Field;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn bu(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Columns e1, e2, e1+e2, e1+e2 over GF(2).
    fn ratehalf2() -> GeneratorMatrix {
        GeneratorMatrix::new(gf2(), vec![vec![1, 0, 1, 1], vec![0, 1, 1, 1]]).unwrap()
    }

    /// Membership of e_i by direct elimination, for every subset.
    fn alpha_by_subsets(m: &GeneratorMatrix, strand: usize) -> Vec<BigUint> {
        let n = m.n();
        let mut e = vec![0; m.k()];
        e[strand - 1] = 1;
        let mut counts = vec![0u64; n + 1];
        for mask in 0u64..1 << n {
            let cols: Vec<usize> = (0..n)
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| j + 1)
                .collect();
            if m.span_contains(&cols, &e).unwrap() {
                counts[cols.len()] += 1;
            }
        }
        bu(&counts)
    }

    #[test]
    fn bruteforce_examples() {
        let id = GeneratorMatrix::identity(gf2(), 3).unwrap();
        assert_eq!(
            alpha_bruteforce(&id, 1).unwrap().values(),
            &bu(&[0, 1, 2, 1])[..]
        );
        let m = ratehalf2();
        assert_eq!(
            alpha_bruteforce(&m, 1).unwrap().values(),
            &bu(&[0, 1, 5, 4, 1])[..]
        );
        assert_eq!(alpha_by_subsets(&m, 1), bu(&[0, 1, 5, 4, 1]));
    }

    #[test]
    fn bruteforce_errors() {
        let id = GeneratorMatrix::identity(gf2(), 3).unwrap();
        assert!(matches!(
            alpha_bruteforce(&id, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            alpha_bruteforce(&id, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
        let opts = EnumOptions { cap: 2, threads: 0 };
        assert_eq!(
            alpha_bruteforce_with(&id, 1, opts).unwrap_err(),
            Error::EnumerationCap { n: 3, cap: 2 }
        );
    }

    #[test]
    fn bruteforce_matches_plain_subset_scan_over_gf3() {
        let f = Field::prime(3).unwrap();
        let m = GeneratorMatrix::new(
            f,
            vec![
                vec![1, 0, 0, 1, 2, 1, 0],
                vec![0, 1, 0, 1, 1, 0, 2],
                vec![0, 0, 1, 0, 1, 2, 2],
            ],
        )
        .unwrap();
        for i in 1..=3 {
            assert_eq!(
                alpha_bruteforce(&m, i).unwrap().values(),
                &alpha_by_subsets(&m, i)[..]
            );
        }
    }

    #[test]
    fn thread_count_does_not_change_counts() {
        let m = ratehalf2();
        let a = alpha_bruteforce_with(
            &m,
            2,
            EnumOptions {
                cap: 24,
                threads: 1,
            },
        )
        .unwrap();
        let b = alpha_bruteforce_with(
            &m,
            2,
            EnumOptions {
                cap: 24,
                threads: 3,
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn profile_validation() {
        assert!(AlphaProfile::new(None, bu(&[0, 1, 2, 1])).is_ok());
        assert!(AlphaProfile::new(None, bu(&[1, 1, 2, 1])).is_err());
        assert!(AlphaProfile::new(None, bu(&[0, 1, 2, 0])).is_err());
        assert!(AlphaProfile::new(None, bu(&[0, 1, 4, 1])).is_err());
        // growth: 2*alpha[2]=2 < 2*alpha[1]=4
        assert!(AlphaProfile::new(None, bu(&[0, 2, 1, 1])).is_err());
    }

    #[test]
    fn complement_accessor() {
        let p = AlphaProfile::new(None, bu(&[0, 1, 5, 4, 1])).unwrap();
        let c: Vec<BigUint> = (0..=4).map(|s| p.complement(s)).collect();
        assert_eq!(c, bu(&[1, 3, 1, 0, 0]));
        assert_eq!(tail_envelope(&p), BigUint::from(5u32));
    }

    #[test]
    fn beta_examples() {
        let p = AlphaProfile::new(None, bu(&[0, 1, 5, 4, 1])).unwrap();
        assert_eq!(beta_of(&p, 0), BigUint::zero());
        assert_eq!(beta_of(&p, 2), BigUint::from(11u32));
        let id = AlphaProfile::new(None, bu(&[0, 1, 3, 3, 1])).unwrap();
        assert_eq!(beta_of(&id, 1), BigUint::one());
    }

    #[test]
    fn beta_counts_ordered_lists() {
        let m = ratehalf2();
        let p = alpha_bruteforce(&m, 1).unwrap();
        for r in 0..=6usize {
            let mut hits = 0u64;
            for code in 0..4u64.pow(r as u32) {
                let list: Vec<usize> = (0..r)
                    .map(|t| (code / 4u64.pow(t as u32) % 4) as usize + 1)
                    .collect();
                if m.span_contains(&list, &[1, 0]).unwrap() {
                    hits += 1;
                }
            }
            assert_eq!(beta_of(&p, r), BigUint::from(hits), "r={r}");
        }
    }

    #[test]
    fn alpha_from_beta_examples() {
        for alpha in [vec![0, 1, 2, 1], vec![0, 1, 5, 4, 1], vec![0, 1]] {
            let p = AlphaProfile::new(None, bu(&alpha)).unwrap();
            let betas: Vec<BigUint> = (1..=p.n()).map(|r| beta_of(&p, r)).collect();
            assert_eq!(alpha_from_beta(&betas, p.n(), None).unwrap(), p);
        }
        assert_eq!(
            alpha_from_beta(&bu(&[1]), 1, None).unwrap().values(),
            &bu(&[0, 1])[..]
        );
        assert!(matches!(
            alpha_from_beta(&bu(&[1, 2]), 2, None),
            Err(Error::InconsistentBeta(_))
        ));
    }

    #[test]
    fn survival_examples() {
        let p = AlphaProfile::new(None, bu(&[0, 1, 5, 4, 1])).unwrap();
        assert_eq!(survival(&p, 0), int(1));
        assert_eq!(survival(&p, 2), ratio(5, 16));
        let id7 = alpha_bruteforce(&GeneratorMatrix::identity(gf2(), 7).unwrap(), 1).unwrap();
        assert_eq!(survival(&id7, 1), ratio(6, 7));
        for r in 0..30 {
            let direct = BigUint::from(7u32).pow(r as u32) - beta_of(&id7, r);
            assert_eq!(survival_count(&id7, r), direct);
        }
    }

    #[test]
    fn minimal_sets_examples() {
        let id = GeneratorMatrix::identity(gf2(), 4).unwrap();
        assert_eq!(minimal_recovery_sets(&id, 3).unwrap(), vec![vec![3]]);
        // rate-1/2 k=3: columns e1 e2 e3 e1+e2 e2+e3 e3+e1
        let m = GeneratorMatrix::new(
            gf2(),
            vec![
                vec![1, 0, 0, 1, 0, 1],
                vec![0, 1, 0, 1, 1, 0],
                vec![0, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap();
        let sets = minimal_recovery_sets(&m, 1).unwrap();
        assert_eq!(
            sets,
            vec![
                vec![1],
                vec![2, 4],
                vec![3, 6],
                vec![2, 5, 6],
                vec![3, 4, 5]
            ]
        );
    }

    #[test]
    fn xi_examples() {
        let t = xi_from_minimal(&[vec![1]]).unwrap();
        assert_eq!(t.get(1, 1), BigUint::one());
        assert!(t.is_consistent());
        let alpha = alpha_from_xi(&t, 5).unwrap();
        let expect: Vec<BigUint> = (0..=5).map(|s| binom(4, s as i64 - 1)).collect();
        assert_eq!(alpha.values(), &expect[..]);
        let empty = alpha_from_xi(&XiTable::new(0), 4).unwrap();
        assert!(empty.values().iter().all(Zero::is_zero));
    }

    #[test]
    fn xi_roundtrip_ratehalf() {
        let m = ratehalf2();
        for i in 1..=2 {
            let sets = minimal_recovery_sets(&m, i).unwrap();
            let xi = xi_from_minimal(&sets).unwrap();
            assert!(xi.is_consistent());
            assert_eq!(
                alpha_from_xi(&xi, m.n()).unwrap().values(),
                alpha_bruteforce(&m, i).unwrap().values()
            );
        }
    }

    #[test]
    fn xi_cap() {
        let sets: Vec<Vec<usize>> = (1..=26).map(|c| vec![c]).collect();
        assert!(matches!(
            xi_from_minimal(&sets),
            Err(Error::TooManyMinimalSets { .. })
        ));
    }
}
