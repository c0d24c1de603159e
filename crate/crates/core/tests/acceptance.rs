//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coverage_depth::cli::{table1, table2};
use coverage_depth::combinat::{int, ratio, ExactRational};
use coverage_depth::families::{
    family_generator, hamming_alpha, hamming_xi_closed, mds_alpha, quasiarc_expectation,
    quasiarc_limit, quasiarc_optimize, ratehalf_alpha, ratehalf_b, ratehalf_expectation,
    ratehalf_limit_bounds, ratehalf_prior_bound, simplex_alpha, BMethod, FamilySpec,
    QuasiArcParams,
};
use coverage_depth::field::Field;
use coverage_depth::matrix::GeneratorMatrix;
use coverage_depth::moments::{expectation, moment, pmf, pmf_table, variance};
use coverage_depth::recovery::{
    alpha_bruteforce, alpha_from_beta, beta_of, minimal_recovery_sets, survival, xi_from_minimal,
    AlphaProfile,
};
use coverage_depth::simulate::{estimate, SimConfig};
use num_bigint::BigUint;
use num_traits::Signed;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const TABLE_CODES: [(&str, FamilySpec); 5] = [
    ("mds(8,7,3)", FamilySpec::Mds { q: 8, n: 7, k: 3 }),
    ("simplex(2,3)", FamilySpec::Simplex { q: 2, k: 3 }),
    ("mds(8,7,4)", FamilySpec::Mds { q: 8, n: 7, k: 4 }),
    ("hamming(2,3)", FamilySpec::Hamming { q: 2, m: 3 }),
    ("identity(7)", FamilySpec::Identity { n: 7 }),
];

struct Suite {
    failed: usize,
}

impl Suite {
    fn check(
        &mut self,
        id: &str,
        title: &str,
        budget: Option<Duration>,
        f: impl FnOnce() -> Outcome,
    ) {
        let start = Instant::now();
        let mut result = f();
        let took = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if took > b {
                result = Err(format!("took {took:.2?}, budget {b:.0?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS [{id}] {title} ({took:.2?}): {detail}"),
            Err(why) => {
                self.failed += 1;
                println!("FAIL [{id}] {title} ({took:.2?}): {why}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn all_strands_equal(spec: &FamilySpec, closed: &AlphaProfile) -> Result<(), String> {
    let g = family_generator(spec).map_err(|e| e.to_string())?;
    for i in 1..=g.k() {
        let found = alpha_bruteforce(&g, i).map_err(|e| e.to_string())?;
        ensure(found.values() == closed.values(), || {
            format!("{spec} strand {i}")
        })?;
    }
    Ok(())
}

fn criterion1() -> Outcome {
    let (_, bad) = table1(3, 0).map_err(|e| e.to_string())?;
    ensure(bad == 0, || format!("{bad} cells outside 0.0005"))?;
    Ok("35 cells within 0.0005".into())
}

fn criterion2() -> Outcome {
    let (_, bad) = table2(3, 0).map_err(|e| e.to_string())?;
    ensure(bad == 0, || {
        format!("{bad} mismatches in rows 1-3 or tail-sum agreement")
    })?;
    let id = FamilySpec::Identity { n: 7 }
        .alpha()
        .map_err(|e| e.to_string())?;
    ensure(moment(&id, 3) == int(1771), || {
        "identity E[tau^3] != 1771".into()
    })?;
    ensure(moment(&id, 4) == int(45955), || {
        "identity E[tau^4] != 45955".into()
    })?;
    Ok(
        "variance/1st/2nd rows within 0.0005; tail sums within 1e-12; identity E3=1771, E4=45955"
            .into(),
    )
}

fn criterion3() -> Outcome {
    for (name, spec) in &TABLE_CODES {
        let g = family_generator(spec).map_err(|e| e.to_string())?;
        for i in 1..=g.k() {
            let p = alpha_bruteforce(&g, i).map_err(|e| e.to_string())?;
            let e = expectation(&p);
            ensure(e == int(g.k() as i64), || {
                format!("{name} strand {i}: E = {e}")
            })?;
        }
    }
    Ok("E[tau_i] = k exactly on every strand of all five codes".into())
}

fn criterion4a() -> Outcome {
    for k in 3..=8 {
        let closed = ratehalf_alpha(k).map_err(|e| e.to_string())?;
        all_strands_equal(&FamilySpec::RateHalf { k }, &closed)?;
        let via_b = ratehalf_expectation(k).map_err(|e| e.to_string())?;
        ensure(expectation(&closed) == via_b, || format!("k={k}"))?;
    }
    Ok("brute force, closed-form alpha and B-recurrence agree for k = 3..8".into())
}

fn criterion4b() -> Outcome {
    for k in 0..=200u64 {
        for j in 0..=2 * k {
            ensure(
                ratehalf_b(k, j, BMethod::Recurrence) == ratehalf_b(k, j, BMethod::Closed),
                || format!("B({k},{j})"),
            )?;
        }
    }
    Ok("recurrence = closed form for k <= 200, 0 <= j <= 2k".into())
}

fn criterion4c() -> Outcome {
    let (_, hi) = ratehalf_limit_bounds(80);
    let mut prev: Option<ExactRational> = None;
    for k in 3..=64usize {
        let l = ratehalf_expectation(k).map_err(|e| e.to_string())? / int(k as i64);
        ensure(l > hi, || format!("l_{k} not above the limit"))?;
        if let Some(p) = &prev {
            ensure(&l < p, || format!("l_{k} >= l_{}", k - 1))?;
        }
        prev = Some(l);
    }
    Ok("l_k strictly decreasing on 3..64 and above (8 sqrt3 pi - 18)/27".into())
}

fn criterion4d() -> Outcome {
    let (_, hi) = ratehalf_limit_bounds(80);
    let prior = ratehalf_prior_bound();
    ensure(prior == ratio(70_318_847, 74_364_290), || {
        "prior bound value".into()
    })?;
    ensure(hi < prior, || "constant not below the prior bound".into())?;
    Ok("constant < 70318847/74364290".into())
}

fn criterion5() -> Outcome {
    ensure(quasiarc_limit(&int(1)) == ratio(397, 150), || {
        "limit(1) != 397/150".into()
    })?;
    ensure(quasiarc_limit(&int(0)) == ratio(17, 6), || {
        "limit(0) != 17/6".into()
    })?;
    let opt = quasiarc_optimize(&ratio(1, 1_000_000_000_000i64));
    let tol = ratio(1, 10_000);
    ensure(
        (&opt.epsilon - ratio(833_968, 1_000_000)).abs() <= tol,
        || format!("eps* = {}", opt.epsilon),
    )?;
    ensure(
        (&opt.minimum - ratio(2_644_626, 1_000_000)).abs() <= tol,
        || format!("minimum = {}", opt.minimum),
    )?;
    let finite = quasiarc_expectation(QuasiArcParams::new(1000, 834).map_err(|e| e.to_string())?);
    let gap = (finite - quasiarc_limit(&ratio(834, 1000))).abs();
    ensure(gap < ratio(1, 100), || format!("finite vs limit gap {gap}"))?;
    Ok("397/150, 17/6, eps* ~ 0.833968, minimum ~ 2.644626, (1000,834) within 0.01".into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> GeneratorMatrix {
    let q = if rng.next_u64().is_multiple_of(2) {
        2
    } else {
        3
    };
    let n = 1 + (rng.next_u64() % 12) as usize;
    let k = 1 + (rng.next_u64() % n.min(5) as u64) as usize;
    loop {
        let rows = (0..k)
            .map(|_| (0..n).map(|_| (rng.next_u64() % q) as u32).collect())
            .collect();
        if let Ok(g) = GeneratorMatrix::new(Field::prime(q).unwrap(), rows) {
            return g;
        }
    }
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut profiles = 0;
    for m in 0..60 {
        let g = random_matrix(&mut rng);
        for i in 1..=g.k() {
            let p = alpha_bruteforce(&g, i).map_err(|e| e.to_string())?;
            let betas: Vec<BigUint> = (1..=g.n()).map(|r| beta_of(&p, r)).collect();
            let back = alpha_from_beta(&betas, g.n(), Some(i)).map_err(|e| e.to_string())?;
            ensure(back.values() == p.values(), || {
                format!("matrix {m} strand {i}: round trip")
            })?;
            ensure(p.satisfies_superset_growth(), || {
                format!("matrix {m} strand {i}: growth")
            })?;
            for rmax in [1, 7, 50] {
                ensure(pmf_table(&p, rmax).total() == int(1), || {
                    format!("matrix {m} strand {i}: mass at R={rmax}")
                })?;
            }
            for r in 1..=50 {
                ensure(pmf(&p, r) == survival(&p, r - 1) - survival(&p, r), || {
                    format!("matrix {m} strand {i}: pmf({r})")
                })?;
            }
            profiles += 1;
        }
    }
    Ok(format!("60 matrices, {profiles} profiles"))
}

fn criterion7() -> Outcome {
    for (n, k) in [(7, 3), (7, 4), (9, 4)] {
        let q = if n <= 8 { 8 } else { 16 };
        all_strands_equal(&FamilySpec::Mds { q, n, k }, &mds_alpha(n, k))?;
    }
    let spec = FamilySpec::Hamming { q: 2, m: 3 };
    let xi = hamming_xi_closed(2, 3).map_err(|e| e.to_string())?;
    let g = family_generator(&spec).map_err(|e| e.to_string())?;
    for i in 1..=g.k() {
        let sets = minimal_recovery_sets(&g, i).map_err(|e| e.to_string())?;
        let census = xi_from_minimal(&sets).map_err(|e| e.to_string())?;
        ensure(census == xi, || format!("hamming xi strand {i}"))?;
    }
    all_strands_equal(&spec, &hamming_alpha(2, 3).map_err(|e| e.to_string())?)?;
    all_strands_equal(&FamilySpec::Simplex { q: 2, k: 3 }, &simplex_alpha(2, 3))?;
    for k in 3..=8 {
        let closed = ratehalf_alpha(k).map_err(|e| e.to_string())?;
        all_strands_equal(&FamilySpec::RateHalf { k }, &closed)?;
    }
    Ok("mds (8,7,3) (8,7,4) (16,9,4), hamming(2,3) via xi, simplex(2,3), rate-1/2 k<=8".into())
}

fn criterion8() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, spec) in &TABLE_CODES {
        let g = family_generator(spec).map_err(|e| e.to_string())?;
        let exact = spec.alpha().map_err(|e| e.to_string())?;
        let cfg = SimConfig {
            trials: 1_000_000,
            master_seed: 0x5eed,
            parallelism: 1,
            ..SimConfig::default()
        };
        let base = estimate(&g, 1, cfg).map_err(|e| e.to_string())?;
        for threads in [4, 8] {
            let other = estimate(
                &g,
                1,
                SimConfig {
                    parallelism: threads,
                    ..cfg
                },
            )
            .map_err(|e| e.to_string())?;
            ensure(other == base, || {
                format!("{name}: {threads} workers differ")
            })?;
        }
        let z = |emp: f64, exact: f64, se: f64| (emp - exact).abs() / se;
        let mean = coverage_depth::combinat::to_f64(&expectation(&exact));
        let var = coverage_depth::combinat::to_f64(&variance(&exact));
        let zm = z(base.mean, mean, base.mean_se);
        let zv = z(base.variance, var, base.variance_se);
        ensure(zm <= 4.0, || format!("{name}: mean z = {zm:.2}"))?;
        ensure(zv <= 4.0, || format!("{name}: variance z = {zv:.2}"))?;
        worst = worst.max(zm).max(zv);
        let t = base.trials as f64;
        for r in 1..=base.histogram.len() {
            let p = coverage_depth::combinat::to_f64(&pmf(&exact, r));
            let se = (p * (1.0 - p) / t).sqrt();
            let dev = (base.pmf(r) - p).abs();
            ensure(dev <= 4.0 * se, || {
                format!("{name}: pmf({r}) off by {dev:.2e}, se {se:.2e}")
            })?;
            if se > 0.0 {
                worst = worst.max(dev / se);
            }
        }
    }
    Ok(format!(
        "10^6 trials x 5 codes, max |z| = {worst:.2}; identical for 1/4/8 workers"
    ))
}

fn main() -> ExitCode {
    let mut s = Suite { failed: 0 };
    s.check("1", "Table 1 reproduction", secs(10), criterion1);
    s.check("2", "Table 2 partial reproduction", None, criterion2);
    s.check("3", "Recovery balance", None, criterion3);
    s.check("4a", "Rate-1/2 three-way agreement", secs(60), criterion4a);
    s.check("4b", "Rate-1/2 B recurrence", secs(10), criterion4b);
    s.check("4c", "Rate-1/2 monotone decrease", secs(10), criterion4c);
    s.check(
        "4d",
        "Rate-1/2 constant below prior bound",
        secs(10),
        criterion4d,
    );
    s.check("5", "Quasi-arc limits and optimum", None, criterion5);
    s.check("6", "Engine identities", None, criterion6);
    s.check("7", "Closed-form vs brute-force alpha", None, criterion7);
    s.check(
        "8",
        "Monte Carlo agreement and determinism",
        None,
        criterion8,
    );
    if s.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", s.failed);
        ExitCode::FAILURE
    }
}
