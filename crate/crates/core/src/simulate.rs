//! Monte Carlo estimate of the retrieval time.
//!
//! Trial `t` draws from ChaCha8 seeded with the master seed on stream `t`,
//! and each column index is `next_u64() % n`. Trials are processed in
//! fixed blocks whose histograms merge by integer addition, so a report
//! depends only on the matrix, strand, trial count and seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{GeneratorMatrix, SpanState};
use crate::recovery::{check_strand, in_pool};

pub const DEFAULT_MAX_DRAWS: u64 = 10_000_000;
const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub master_seed: u64,
    pub max_draws: u64,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub parallelism: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            trials: 100_000,
            master_seed: 0,
            max_draws: DEFAULT_MAX_DRAWS,
            parallelism: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.max_draws < n as u64 {
            return Err(Error::Config(format!(
                "max_draws {} is below the code length {n}",
                self.max_draws
            )));
        }
        Ok(())
    }
}

/// The random stream used by trial `index`.
pub fn trial_stream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Draws until `e_strand` (one-based) lies in the span of the drawn columns.
pub fn sample_tau(
    m: &GeneratorMatrix,
    strand: usize,
    rng: &mut impl RngCore,
    max_draws: u64,
) -> Result<u64> {
    check_strand(m, strand)?;
    let mut span = SpanState::new(m.field().clone(), m.k());
    sample_with(m, strand - 1, rng, max_draws, &mut span)
}

fn sample_with(
    m: &GeneratorMatrix,
    unit: usize,
    rng: &mut impl RngCore,
    max_draws: u64,
    span: &mut SpanState,
) -> Result<u64> {
    span.clear();
    let n = m.n() as u64;
    let mut seen = 0u64;
    for draw in 1..=max_draws {
        let j = (rng.next_u64() % n) as usize;
        if seen & (1 << j) != 0 {
            continue;
        }
        seen |= 1 << j;
        if span.insert(m.column(j)) && span.contains_unit(unit) {
            return Ok(draw);
        }
    }
    Err(Error::MaxDrawsExceeded(max_draws))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub strand: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    /// `E[tau^p]` for `p = 1..=4`.
    pub moments: [f64; 4],
    pub variance: f64,
    /// `histogram[r - 1]` trials stopped at draw `r`.
    pub histogram: Vec<u64>,
    pub mean_se: f64,
    pub moment_se: [f64; 4],
    pub variance_se: f64,
}

impl EmpiricalReport {
    fn from_histogram(strand: usize, seed: u64, histogram: Vec<u64>) -> EmpiricalReport {
        let trials: u64 = histogram.iter().sum();
        let t = trials as f64;
        let raw = |p: i32| -> f64 {
            histogram
                .iter()
                .enumerate()
                .map(|(i, &c)| c as f64 * ((i + 1) as f64).powi(p))
                .sum::<f64>()
                / t
        };
        let m: Vec<f64> = (0..=8).map(raw).collect();
        let mean = m[1];
        let variance = m[2] - mean * mean;
        let central4 = m[4] - 4.0 * mean * m[3] + 6.0 * mean * mean * m[2] - 3.0 * mean.powi(4);
        let moment_se = [1, 2, 3, 4].map(|p| ((m[2 * p] - m[p] * m[p]).max(0.0) / t).sqrt());
        EmpiricalReport {
            strand,
            trials,
            seed,
            mean,
            moments: [m[1], m[2], m[3], m[4]],
            variance,
            mean_se: (variance.max(0.0) / t).sqrt(),
            moment_se,
            variance_se: ((central4 - variance * variance).max(0.0) / t).sqrt(),
            histogram,
        }
    }

    /// Empirical `P[tau = r]`.
    pub fn pmf(&self, r: usize) -> f64 {
        let c = self.histogram.get(r.wrapping_sub(1)).copied().unwrap_or(0);
        c as f64 / self.trials as f64
    }
}

pub fn estimate(m: &GeneratorMatrix, strand: usize, config: SimConfig) -> Result<EmpiricalReport> {
    check_strand(m, strand)?;
    config.validate(m.n())?;
    let blocks = config.trials.div_ceil(BLOCK);
    let merged = in_pool(config.parallelism, || {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut span = SpanState::new(m.field().clone(), m.k());
                let mut hist: Vec<u64> = Vec::new();
                for t in b * BLOCK..((b + 1) * BLOCK).min(config.trials) {
                    let mut rng = trial_stream(config.master_seed, t);
                    let r =
                        sample_with(m, strand - 1, &mut rng, config.max_draws, &mut span)? as usize;
                    if hist.len() < r {
                        hist.resize(r, 0);
                    }
                    hist[r - 1] += 1;
                }
                Ok::<_, Error>(hist)
            })
            .try_reduce(Vec::new, |mut a, b| {
                if a.len() < b.len() {
                    a.resize(b.len(), 0);
                }
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            })
    })?;
    Ok(EmpiricalReport::from_histogram(
        strand,
        config.master_seed,
        merged,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let id1 = GeneratorMatrix::identity(gf2(), 1).unwrap();
        let twin = GeneratorMatrix::new(gf2(), vec![vec![1, 1]]).unwrap();
        for seed in 0..50 {
            let mut rng = trial_stream(seed, 3);
            assert_eq!(sample_tau(&id1, 1, &mut rng, 10).unwrap(), 1);
            assert_eq!(sample_tau(&twin, 1, &mut rng, 10).unwrap(), 1);
        }
    }

    #[test]
    fn errors() {
        let id = GeneratorMatrix::identity(gf2(), 3).unwrap();
        let mut rng = trial_stream(1, 0);
        assert!(sample_tau(&id, 4, &mut rng, 100).is_err());
        // With one draw allowed, strand 1 is missed whenever another column comes first.
        let tight = (0..64).any(|s| {
            matches!(
                sample_tau(&id, 1, &mut trial_stream(s, 0), 1),
                Err(Error::MaxDrawsExceeded(1))
            )
        });
        assert!(tight);
        let bad = SimConfig {
            trials: 0,
            ..SimConfig::default()
        };
        assert!(estimate(&id, 1, bad).is_err());
        let bad = SimConfig {
            max_draws: 2,
            ..SimConfig::default()
        };
        assert!(estimate(&id, 1, bad).is_err());
    }

    #[test]
    fn histogram_totals_and_determinism() {
        let id = GeneratorMatrix::identity(gf2(), 5).unwrap();
        let cfg = SimConfig {
            trials: 20_000,
            master_seed: 42,
            parallelism: 1,
            ..SimConfig::default()
        };
        let a = estimate(&id, 2, cfg).unwrap();
        assert_eq!(a.histogram.iter().sum::<u64>(), 20_000);
        let b = estimate(
            &id,
            2,
            SimConfig {
                parallelism: 3,
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(a, b);
        let c = estimate(
            &id,
            2,
            SimConfig {
                master_seed: 43,
                ..cfg
            },
        )
        .unwrap();
        assert_ne!(a.histogram, c.histogram);
        assert!((a.mean - 5.0).abs() < 4.0 * a.mean_se);
        assert!((a.variance - 20.0).abs() < 4.0 * a.variance_se);
    }

    #[test]
    fn streams_differ_by_trial() {
        let mut a = trial_stream(7, 0);
        let mut b = trial_stream(7, 1);
        assert_ne!(a.next_u64(), b.next_u64());
        let mut c = trial_stream(7, 0);
        assert_eq!(trial_stream(7, 0).next_u64(), c.next_u64());
    }
}
