//! The `covdepth` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 precondition violation,
//! 3 reproduction or verification mismatch.

mod emit;
mod matrix_file;
mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use emit::{emit, parse_rational, Format, Report};
pub use matrix_file::{parse_matrix, parse_matrix_file, write_matrix};
pub use reproduce::{figure1, table1, table2, CODES, INCONSISTENT_NOTE, TABLE1, TABLE2};

use crate::combinat::{int, to_decimal, to_f64, ExactRational};
use crate::error::Error;
use crate::families::{
    family_generator, quasiarc_expectation, quasiarc_limit, quasiarc_optimize, ratehalf_limit,
    ratehalf_limit_digits, ratehalf_prior_bound, FamilySpec, QuasiArcParams,
};
use crate::matrix::GeneratorMatrix;
use crate::moments::{pmf_table, MomentReport};
use crate::recovery::{alpha_bruteforce_with, AlphaProfile, EnumOptions};
use crate::simulate::{estimate, SimConfig, DEFAULT_MAX_DRAWS};
use emit::{parse_nonnegative_rational, parse_positive_rational, rational, rational_cells};

/// Largest length for which family closed forms are checked against
/// enumeration on every strand by default.
const VERIFY_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "covdepth",
    version,
    about = "Exact distribution of the random-access retrieval time of coded DNA storage"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Fractional digits in decimal renderings.
    #[arg(long, global = true, default_value_t = 3)]
    precision: usize,
    /// Worker threads for enumeration and simulation (0: all cores).
    #[arg(long, global = true, env = "COVDEPTH_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recovery-set counts alpha_i(G, s) for s = 0..n.
    Alpha(CodeArgs),
    /// Raw moments and variance of the retrieval time.
    Moments {
        #[command(flatten)]
        code: CodeArgs,
        /// Highest moment order.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=16))]
        order: u32,
        #[arg(long, value_enum, default_value = "closed-form")]
        method: MomentMethod,
        /// Remainder target for the tail-sum method.
        #[arg(long, default_value = "1e-12", value_parser = parse_positive_rational)]
        eps: ExactRational,
    },
    /// Point masses P[tau = r] for r = 1..rmax and the remaining tail mass.
    Pmf {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=2000))]
        rmax: u64,
    },
    /// Monte Carlo estimate of the retrieval time.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DRAWS)]
        max_draws: u64,
    },
    /// Limit of E[tau]/k for the rate-1/2 construction and the earlier bound.
    Limit {
        /// Certified fractional digits.
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=10000))]
        digits: u64,
    },
    /// Quasi-arc expectation for finite (x, y) and/or its limit at ratio eps.
    Quasiarc {
        #[arg(long, requires = "y", value_parser = clap::value_parser!(u64).range(1..))]
        x: Option<u64>,
        #[arg(long, requires = "x")]
        y: Option<u64>,
        #[arg(long, value_parser = parse_nonnegative_rational)]
        eps: Option<ExactRational>,
    },
    /// Ratio y/x minimizing the asymptotic quasi-arc expectation.
    OptimizeEpsilon {
        #[arg(long, default_value = "1e-12", value_parser = parse_positive_rational)]
        tol: ExactRational,
    },
    /// Recompute a published table or figure and compare.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MomentMethod {
    ClosedForm,
    TailSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Table1,
    Table2,
    Figure1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Identity,
    Mds,
    Hamming,
    Simplex,
    Ratehalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    ClosedForm,
    Enumeration,
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Generator matrix file.
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Hamming redundancy.
    #[arg(long)]
    m: Option<u32>,
    /// One-based strand; all strands when omitted.
    #[arg(long)]
    strand: Option<usize>,
    /// Where alpha comes from; families default to closed forms, files to
    /// enumeration.
    #[arg(long, value_enum)]
    source: Option<Source>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(msg) => CliError::Usage(msg),
            other => CliError::Compute(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok((report, mismatch)) => Outcome {
            code: if mismatch { 3 } else { 0 },
            stdout: emit(&report, cli.format),
            stderr: if mismatch {
                "error: computed values disagree with the reference\n".into()
            } else {
                String::new()
            },
        },
        Err(CliError::Usage(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(CliError::Compute(e)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs with the process arguments, prints, and returns the exit code.
pub fn run() -> i32 {
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn dispatch(cli: &Cli) -> CliResult<(Report, bool)> {
    let (p, t) = (cli.precision, cli.threads);
    match &cli.command {
        Command::Alpha(code) => alpha_cmd(code, t),
        Command::Moments {
            code,
            order,
            method,
            eps,
        } => moments_cmd(code, *order, *method, eps, p, t),
        Command::Pmf { code, rmax } => pmf_cmd(code, *rmax as usize, p, t),
        Command::Simulate {
            code,
            trials,
            seed,
            max_draws,
        } => {
            let cfg = SimConfig {
                trials: *trials,
                master_seed: *seed,
                max_draws: *max_draws,
                parallelism: t,
            };
            simulate_cmd(code, cfg, p)
        }
        Command::Limit { digits } => Ok((limit_cmd(*digits as usize, p), false)),
        Command::Quasiarc { x, y, eps } => {
            quasiarc_cmd(*x, *y, eps.as_ref(), p).map(|r| (r, false))
        }
        Command::OptimizeEpsilon { tol } => Ok((optimize_cmd(tol, p), false)),
        Command::Reproduce { target } => {
            let (report, bad) = match target {
                Target::Table1 => table1(p, t)?,
                Target::Table2 => table2(p, t)?,
                Target::Figure1 => figure1(p, t)?,
            };
            Ok((report, bad > 0))
        }
    }
}

fn family_spec(code: &CodeArgs, kind: FamilyKind) -> CliResult<FamilySpec> {
    let need = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--family {kind:?} needs --{flag}").to_lowercase()))
    };
    let q = || need(code.q, "q");
    let n = || need(code.n.map(|v| v as u64), "n").map(|v| v as usize);
    let k = || need(code.k.map(|v| v as u64), "k").map(|v| v as usize);
    let spec = match kind {
        FamilyKind::Identity => FamilySpec::Identity { n: n()? },
        FamilyKind::Mds => FamilySpec::Mds {
            q: q()?,
            n: n()?,
            k: k()?,
        },
        FamilyKind::Hamming => FamilySpec::Hamming {
            q: q()?,
            m: need(code.m.map(u64::from), "m")? as u32,
        },
        FamilyKind::Simplex => FamilySpec::Simplex {
            q: q()?,
            k: u32::try_from(k()?).map_err(|_| CliError::Usage("--k is too large".into()))?,
        },
        FamilyKind::Ratehalf => FamilySpec::RateHalf { k: k()? },
    };
    spec.validate()?;
    Ok(spec)
}

struct Group {
    strands: Vec<usize>,
    profile: AlphaProfile,
}

struct Resolved {
    input: Value,
    matrix: GeneratorMatrix,
    source: Source,
    groups: Vec<Group>,
    /// Closed form checked against enumeration on every strand.
    verified: Option<bool>,
}

fn strands_for(code: &CodeArgs, k: usize) -> CliResult<Vec<usize>> {
    match code.strand {
        Some(i) if i == 0 || i > k => Err(CliError::Compute(Error::IndexOutOfRange {
            index: i,
            bound: k,
        })),
        Some(i) => Ok(vec![i]),
        None => Ok((1..=k).collect()),
    }
}

fn group_profiles(profiles: Vec<(usize, AlphaProfile)>) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for (i, p) in profiles {
        match groups.iter_mut().find(|g| g.profile.values() == p.values()) {
            Some(g) => g.strands.push(i),
            None => groups.push(Group {
                strands: vec![i],
                profile: p.with_strand(None),
            }),
        }
    }
    groups
}

fn code_input(code: &CodeArgs) -> CliResult<(Value, GeneratorMatrix, Option<FamilySpec>)> {
    match (&code.file, code.family) {
        (Some(path), _) => {
            let g = parse_matrix_file(path)?;
            Ok((
                json!({ "file": path.display().to_string(), "strand": code.strand }),
                g,
                None,
            ))
        }
        (None, Some(kind)) => {
            let spec = family_spec(code, kind)?;
            let g = family_generator(&spec)?;
            Ok((
                json!({ "family": spec.to_string(), "strand": code.strand }),
                g,
                Some(spec),
            ))
        }
        (None, None) => Err(CliError::Usage(
            "one of --file or --family is required".into(),
        )),
    }
}

fn resolve(code: &CodeArgs, threads: usize) -> CliResult<Resolved> {
    let (input, matrix, spec) = code_input(code)?;
    let strands = strands_for(code, matrix.k())?;
    let opts = EnumOptions {
        threads,
        ..EnumOptions::default()
    };
    let source = match (code.source, spec) {
        (Some(Source::ClosedForm), None) => {
            return Err(CliError::Usage("closed forms need --family".into()));
        }
        (Some(s), _) => s,
        (None, Some(_)) => Source::ClosedForm,
        (None, None) => Source::Enumeration,
    };
    let enumerate = |strands: &[usize]| -> CliResult<Vec<(usize, AlphaProfile)>> {
        strands
            .iter()
            .map(|&i| Ok((i, alpha_bruteforce_with(&matrix, i, opts)?)))
            .collect()
    };
    let (groups, verified) = match (source, spec) {
        (Source::ClosedForm, Some(spec)) => {
            let closed = spec.alpha()?;
            let verified = if code.strand.is_none() && matrix.n() <= VERIFY_LIMIT {
                let found = enumerate(&strands)?;
                Some(found.iter().all(|(_, p)| p.values() == closed.values()))
            } else {
                None
            };
            (
                vec![Group {
                    strands,
                    profile: closed,
                }],
                verified,
            )
        }
        _ => (group_profiles(enumerate(&strands)?), None),
    };
    Ok(Resolved {
        input,
        matrix,
        source,
        groups,
        verified,
    })
}

fn source_tag(s: Source) -> &'static str {
    match s {
        Source::ClosedForm => "closed-form",
        Source::Enumeration => "enumeration",
    }
}

fn strands_cell(strands: &[usize]) -> String {
    strands
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn envelope(command: &str, r: &Resolved) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "input": r.input,
        "n": r.matrix.n(),
        "k": r.matrix.k(),
        "field_order": r.matrix.field().q(),
        "alpha_source": source_tag(r.source),
        "verified_by_enumeration": r.verified,
        "strand_independent": r.groups.len() == 1,
    })
}

fn alpha_cmd(code: &CodeArgs, threads: usize) -> CliResult<(Report, bool)> {
    let r = resolve(code, threads)?;
    let mut report = Report::new(
        envelope("alpha", &r),
        &["strands", "s", "alpha", "complement"],
    );
    let mut groups = Vec::new();
    for g in &r.groups {
        let cell = strands_cell(&g.strands);
        for s in 0..=g.profile.n() {
            report.row(vec![
                cell.clone(),
                s.to_string(),
                g.profile.alpha(s).to_string(),
                g.profile.complement(s).to_string(),
            ]);
        }
        groups.push(json!({
            "strands": g.strands,
            "alpha": g.profile.to_strings(),
            "complement": (0..=g.profile.n()).map(|s| g.profile.complement(s).to_string()).collect::<Vec<_>>(),
        }));
    }
    report.json["groups"] = json!(groups);
    Ok((report, r.verified == Some(false)))
}

fn moments_cmd(
    code: &CodeArgs,
    order: u32,
    method: MomentMethod,
    eps: &ExactRational,
    precision: usize,
    threads: usize,
) -> CliResult<(Report, bool)> {
    let r = resolve(code, threads)?;
    let orders: Vec<u32> = (1..=order).collect();
    let mut json = envelope("moments", &r);
    json["method"] = json!(match method {
        MomentMethod::ClosedForm => "closed-form",
        MomentMethod::TailSum => "tail-sum",
    });
    let mut report = Report::new(json, &["strands", "quantity", "num", "den", "approx"]);
    let mut groups = Vec::new();
    for g in &r.groups {
        let m = match method {
            MomentMethod::ClosedForm => MomentReport::closed_form(&g.profile, &orders),
            MomentMethod::TailSum => MomentReport::tail_sum(&g.profile, &orders, eps),
        };
        let cell = strands_cell(&g.strands);
        let mut entries = Vec::new();
        for e in &m.moments {
            let mut row = vec![cell.clone(), format!("moment_{}", e.order)];
            row.extend(rational_cells(&e.value, precision));
            report.row(row);
            let mut item = json!({ "order": e.order, "value": rational(&e.value, precision) });
            if let Some(b) = &e.tail_bound {
                item["remainder_bound"] = rational(b, precision.max(15));
            }
            entries.push(item);
        }
        let mut row = vec![cell, "variance".into()];
        row.extend(rational_cells(&m.variance, precision));
        report.row(row);
        groups.push(json!({
            "strands": g.strands,
            "alpha": g.profile.to_strings(),
            "moments": entries,
            "variance": rational(&m.variance, precision),
        }));
    }
    report.json["groups"] = json!(groups);
    Ok((report, r.verified == Some(false)))
}

fn pmf_cmd(
    code: &CodeArgs,
    rmax: usize,
    precision: usize,
    threads: usize,
) -> CliResult<(Report, bool)> {
    let r = resolve(code, threads)?;
    let mut json = envelope("pmf", &r);
    json["rmax"] = json!(rmax);
    let mut report = Report::new(json, &["strands", "r", "num", "den", "approx"]);
    let mut groups = Vec::new();
    for g in &r.groups {
        let table = pmf_table(&g.profile, rmax);
        let cell = strands_cell(&g.strands);
        let mut entries = Vec::new();
        for (i, v) in table.entries.iter().enumerate() {
            let mut row = vec![cell.clone(), (i + 1).to_string()];
            row.extend(rational_cells(v, precision));
            report.row(row);
            entries.push(json!({ "r": i + 1, "p": rational(v, precision) }));
        }
        let mut row = vec![cell, "tail".into()];
        row.extend(rational_cells(&table.tail, precision));
        report.row(row);
        groups.push(json!({
            "strands": g.strands,
            "pmf": entries,
            "tail": rational(&table.tail, precision),
            "total": rational(&table.total(), precision),
        }));
    }
    report.json["groups"] = json!(groups);
    Ok((report, r.verified == Some(false)))
}

fn simulate_cmd(code: &CodeArgs, cfg: SimConfig, precision: usize) -> CliResult<(Report, bool)> {
    let (input, matrix, _) = code_input(code)?;
    let strands = strands_for(code, matrix.k())?;
    // Exact reference where enumeration or a closed form is available.
    let exact = match resolve(code, cfg.parallelism) {
        Ok(r) => Some(r.groups),
        Err(CliError::Compute(Error::EnumerationCap { .. })) => None,
        Err(e) => return Err(e),
    };
    let mut report = Report::new(Value::Null, &["strand", "r", "count", "empirical", "exact"]);
    let mut runs = Vec::new();
    for &i in &strands {
        let emp = estimate(&matrix, i, cfg)?;
        let profile = exact
            .as_ref()
            .and_then(|gs| gs.iter().find(|g| g.strands.contains(&i)))
            .map(|g| &g.profile);
        for (idx, &count) in emp.histogram.iter().enumerate() {
            let r = idx + 1;
            report.row(vec![
                i.to_string(),
                r.to_string(),
                count.to_string(),
                format!("{:.*}", precision.max(6), emp.pmf(r)),
                profile.map_or(String::new(), |p| {
                    to_decimal(&crate::moments::pmf(p, r), precision.max(6))
                }),
            ]);
        }
        let reference = profile.map(|p| {
            let mean = crate::moments::expectation(p);
            let var = crate::moments::variance(p);
            json!({
                "mean": rational(&mean, precision),
                "variance": rational(&var, precision),
                "mean_z": (emp.mean - to_f64(&mean)) / emp.mean_se,
            })
        });
        runs.push(json!({ "strand": i, "empirical": emp, "exact": reference }));
    }
    report.json = json!({
        "command": "simulate",
        "version": env!("CARGO_PKG_VERSION"),
        "input": input,
        "n": matrix.n(),
        "k": matrix.k(),
        "seed": cfg.master_seed,
        "trials": cfg.trials,
        "max_draws": cfg.max_draws,
        "runs": runs,
    });
    Ok((report, false))
}

fn limit_cmd(digits: usize, precision: usize) -> Report {
    let prior = ratehalf_prior_bound();
    let constant = ratehalf_limit_digits(digits);
    let json = json!({
        "command": "limit",
        "version": env!("CARGO_PKG_VERSION"),
        "constant": constant,
        "constant_f64": ratehalf_limit(),
        "expression": "(8*sqrt(3)*pi - 18)/27",
        "prior_bound": rational(&prior, precision.max(9)),
        "prior_bound_minus_constant": to_f64(&prior) - ratehalf_limit(),
    });
    let mut report = Report::new(json, &["quantity", "value"]);
    report.row(vec!["constant".into(), constant]);
    report.row(vec![
        "prior_bound".into(),
        to_decimal(&prior, precision.max(9)),
    ]);
    report
}

fn quasiarc_cmd(
    x: Option<u64>,
    y: Option<u64>,
    eps: Option<&ExactRational>,
    precision: usize,
) -> CliResult<Report> {
    if x.is_none() && eps.is_none() {
        return Err(CliError::Usage("give --x and --y, or --eps".into()));
    }
    let mut json = json!({ "command": "quasiarc", "version": env!("CARGO_PKG_VERSION"), "k": 3 });
    let mut report = Report::new(Value::Null, &["quantity", "num", "den", "approx"]);
    if let (Some(x), Some(y)) = (x, y) {
        let params = QuasiArcParams::new(x, y)?;
        let e = quasiarc_expectation(params);
        let per_k = &e / int(3);
        let mut row = vec!["expectation".to_string()];
        row.extend(rational_cells(&e, precision));
        report.row(row);
        json["finite"] = json!({
            "x": x,
            "y": y,
            "n": params.n(),
            "expectation": rational(&e, precision),
            "expectation_over_k": rational(&per_k, precision),
        });
    }
    if let Some(eps) = eps {
        let v = quasiarc_limit(eps);
        let mut row = vec!["limit".to_string()];
        row.extend(rational_cells(&v, precision));
        report.row(row);
        json["asymptotic"] = json!({
            "eps": rational(eps, precision),
            "limit": rational(&v, precision),
            "limit_over_k": rational(&(&v / int(3)), precision),
        });
    }
    report.json = json;
    Ok(report)
}

fn optimize_cmd(tol: &ExactRational, precision: usize) -> Report {
    let opt = quasiarc_optimize(tol);
    let per_k = &opt.minimum / int(3);
    let json = json!({
        "command": "optimize-epsilon",
        "version": env!("CARGO_PKG_VERSION"),
        "tolerance": rational(tol, precision.max(12)),
        "epsilon": rational(&opt.epsilon, precision),
        "bracket": [rational(&opt.lower, precision), rational(&opt.upper, precision)],
        "minimum": rational(&opt.minimum, precision),
        "minimum_over_k": rational(&per_k, precision),
        "residual_bound": to_f64(&opt.residual_bound),
    });
    let mut report = Report::new(json, &["quantity", "num", "den", "approx"]);
    for (name, v) in [
        ("epsilon", &opt.epsilon),
        ("minimum", &opt.minimum),
        ("minimum_over_k", &per_k),
    ] {
        let mut row = vec![name.to_string()];
        row.extend(rational_cells(v, precision));
        report.row(row);
    }
    report
}
