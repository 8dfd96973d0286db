//! `farey`: builds, codecs, verification suites and statistics exports.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use farey_core::corona::{enumerate_coronas, Corona, Dna};
use farey_core::equi::{coprime_strata, s_n, totients, trend_csv, trend_row};
use farey_core::norm::{build_c_leq, NormSpec, DEFAULT_MAX_VERTICES};
use farey_core::path::enumerate_paths;
use farey_core::verify::{
    parse_norm, parse_rational, run, run_closed_form_pair, Check, Executor, Suite, SuiteParams, SuiteReport,
    Task,
};
use farey_core::zeck::{star_pattern_report, Bin, Zeck};
use farey_core::{FareyPath, Rational};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "farey", version, about = "Exact Farey-graph combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the corona c(|.| <= R) and print its points and d.n.a.
    Build(BuildArgs),
    /// Run a verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Export statistics as CSV.
    Stats(StatsArgs),
    /// Zeckendorf and binary arithmetic.
    Zeck(ZeckArgs),
    /// Enumerate all paths or coronas up to a degree.
    Enumerate(EnumerateArgs),
    /// Encode or decode d.n.a. from JSON.
    Dna(DnaArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Norm as `linear:a,b`, `p:k`, `max` or `matrix:a,b,c,d`.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "p", "max"])]
    norm: Option<String>,
    #[arg(long, requires = "beta")]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    max: bool,
    /// Radius, an integer or `n/d`.
    #[arg(long)]
    r: String,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Restrict norm grids (repeatable); see `build --norm`.
    #[arg(long = "norm")]
    norms: Vec<String>,
    /// Linear-norm weights, shorthand for `--norm linear:ALPHA,BETA`.
    #[arg(long, requires = "beta")]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct StatsArgs {
    #[command(subcommand)]
    kind: StatsKind,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum StatsKind {
    /// S_n for n = 1..=n-max.
    Sn {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// delta_1 / delta_2 of c_R(1,1) over a range of R.
    Delta {
        /// Range `lo..hi` (inclusive).
        #[arg(long, default_value = "100..2000")]
        r: String,
        #[arg(long, default_value_t = 100)]
        step: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Totient sums against coprime-pair counts.
    Totient {
        #[arg(long, default_value_t = 100)]
        r_max: usize,
    },
}

#[derive(Args)]
struct ZeckArgs {
    #[command(subcommand)]
    op: ZeckOp,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum ZeckOp {
    Expand { n: String },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    /// Compare the product pattern for phi^n * phi^m under each reading.
    StarReport { n: u32, m: u32 },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: EnumKind,
    #[arg(long, default_value_t = 6)]
    max_m: usize,
    /// Print every member, not just counts.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Paths,
    Coronas,
}

#[derive(Args)]
struct DnaArgs {
    #[arg(value_enum)]
    action: DnaAction,
    /// JSON input file, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum DnaAction {
    /// `{"interior": [...]}` to `{"layers": [...]}`.
    Encode,
    /// `{"layers": [...]}` to `{"interior": [...]}`.
    Decode,
    /// Encode, decode and compare; exit 1 on mismatch.
    Roundtrip,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<farey_core::Error> for Failure {
    fn from(e: farey_core::Error) -> Self {
        match e {
            farey_core::Error::Parse(_) | farey_core::Error::InvalidNorm(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// What a command prints and whether it counts as a pass.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match cli.command {
        Command::Build(a) => {
            let out = a.out.output.clone();
            (build(a), out)
        }
        Command::Verify(a) => {
            let out = a.out.output.clone();
            (verify(a), out)
        }
        Command::Stats(a) => {
            let out = a.out.output.clone();
            (stats(a.kind), out)
        }
        Command::Zeck(a) => (zeck(a), None),
        Command::Enumerate(a) => (enumerate(a), None),
        Command::Dna(a) => (dna(a), None),
    };
    match result {
        Ok(outcome) => {
            let written = match out {
                Some(path) => fs::write(path, &outcome.text),
                None => io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn norm_from(norm: &Option<String>, alpha: &Option<String>, beta: &Option<String>, p: Option<u32>, max: bool) -> Result<NormSpec, Failure> {
    match (norm, alpha, beta, p, max) {
        (Some(s), ..) => Ok(parse_norm(s)?),
        (None, Some(a), Some(b), None, false) => Ok(NormSpec::linear(parse_rational(a)?, parse_rational(b)?)?),
        (None, None, None, Some(p), false) => Ok(NormSpec::p_power(p)?),
        (None, None, None, None, true) => Ok(NormSpec::Max),
        _ => Err(Failure::Usage("give exactly one of --norm, --alpha/--beta, --p, --max".into())),
    }
}

fn vertex_json(v: &farey_core::Vertex) -> Value {
    json!(v.to_strings())
}

fn build(a: BuildArgs) -> Result<Outcome, Failure> {
    let norm = norm_from(&a.norm, &a.alpha, &a.beta, a.p, a.max)?;
    let r = parse_rational(&a.r)?;
    let c = build_c_leq(&norm, &r, a.max_vertices)?;
    let dna = Dna::encode(&c);
    let text = match a.format {
        Format::Json => {
            let v = json!({
                "norm": norm.to_string(),
                "r": r.to_string(),
                "degree": c.degree(),
                "height": c.height(),
                "interior": c.interior().iter().map(vertex_json).collect::<Vec<_>>(),
                "layers": dna.layers,
            });
            serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
        }
        Format::Text => {
            let mut s = format!("norm {norm}, R = {r}\ndegree {}, height {}\n", c.degree(), c.height());
            s += &format!("interior {}\n", c.path());
            for (k, layer) in dna.layers.iter().enumerate() {
                s += &format!("layer {}: {layer:?}\n", dna.height() - k);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

struct Pool(rayon::ThreadPool);

impl Executor for Pool {
    fn run(&self, tasks: Vec<Task>) -> Vec<Vec<Check>> {
        self.0.install(|| tasks.into_par_iter().map(|t| t()).collect())
    }
}

fn pool(jobs: usize) -> Result<Pool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map(Pool)
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn verify(a: VerifyArgs) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&a.suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Usage(format!("unknown suite {:?}; known: all, {}", a.suite, names.join(", ")))
        })?]
    };
    let mut norms: Vec<NormSpec> = a.norms.iter().map(|s| parse_norm(s)).collect::<Result<_, _>>()?;
    if let (Some(al), Some(be)) = (&a.alpha, &a.beta) {
        norms.push(NormSpec::linear(parse_rational(al)?, parse_rational(be)?)?);
    }
    let params = SuiteParams {
        seed: a.seed,
        r_max: a.r_max,
        n_max: a.n_max,
        limit: a.limit,
        samples: a.samples,
        max_degree: a.max_degree,
        norms: (!norms.is_empty()).then_some(norms),
    };
    let exec = pool(a.jobs)?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    let pair = suites.contains(&Suite::ClosedForm) && suites.contains(&Suite::ClosedDegree);
    for suite in suites {
        match suite {
            Suite::ClosedForm if pair => reports.extend(run_closed_form_pair(&params, &exec)),
            Suite::ClosedDegree if pair => {}
            _ => reports.push(run(suite, &params, &exec)),
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("serialisable") + "\n",
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s += &format!(
                    "criterion {:>2} {:<18} {} ({}/{} checks)\n",
                    r.criterion,
                    r.suite,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.total - r.failed,
                    r.total
                );
                for c in r.checks.iter().filter(|c| !c.passed || c.label.starts_with("product-pattern")) {
                    s += &format!("  {} {}: {}\n", if c.passed { "ok" } else { "FAILED" }, c.label, c.detail);
                }
            }
            s
        }
    };
    Ok(Outcome { text, passed })
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn stats(kind: StatsKind) -> Result<Outcome, Failure> {
    let text = match kind {
        StatsKind::Sn { n_max } => {
            if n_max == 0 || n_max > 24 {
                return Err(Failure::Usage("--n-max must be in 1..=24".into()));
            }
            let mut s = String::from("n,sn_num,sn_den,sn\n");
            for n in 1..=n_max {
                let v: Rational = s_n(n)?;
                s += &format!("{n},{},{},{:.12e}\n", v.numer(), v.denom(), v.to_f64().unwrap_or(f64::NAN));
            }
            s
        }
        StatsKind::Delta { r, step, jobs } => {
            let (lo, hi) = parse_range(&r)?;
            if step == 0 {
                return Err(Failure::Usage("--step must be positive".into()));
            }
            let radii: Vec<u64> = (lo..=hi).step_by(step as usize).collect();
            let exec = pool(jobs)?;
            let rows = exec
                .0
                .install(|| radii.par_iter().map(|&r| trend_row(r)).collect::<Result<Vec<_>, _>>())?;
            trend_csv(&rows)
        }
        StatsKind::Totient { r_max } => {
            if r_max == 0 {
                return Err(Failure::Usage("--r-max must be positive".into()));
            }
            let phi = totients(r_max);
            let strata = coprime_strata(r_max);
            let (mut lhs, mut rhs) = (0u64, 1u64);
            let mut s = String::from("R,totient_sum,one_plus_count,equal\n");
            for r in 1..=r_max {
                lhs += phi[r];
                rhs += strata[r];
                s += &format!("{r},{lhs},{rhs},{}\n", lhs == rhs);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn zeck(a: ZeckArgs) -> Result<Outcome, Failure> {
    let num = |s: &str| s.parse::<BigUint>().map_err(|_| Failure::Usage(format!("not a natural number: {s:?}")));
    let show = |label: &str, z: &Zeck, b: &Bin| -> (String, Value) {
        (
            format!(
                "{z}\nzeckendorf bits {} exponents {:?}\nbinary {b}\nbinary bits {} exponents {:?}\nvalue {}\n",
                z.to_bits(),
                z.exponents(),
                b.to_bits(),
                b.exponents(),
                z.decode()
            ),
            json!({
                "op": label,
                "value": z.decode().to_string(),
                "zeckendorf": {"terms": z.to_string(), "bits": z.to_bits(), "exponents": z.exponents()},
                "binary": {"terms": b.to_string(), "bits": b.to_bits(), "exponents": b.exponents()},
            }),
        )
    };
    let (text, value) = match a.op {
        ZeckOp::Expand { n } => {
            let n = num(&n)?;
            show("expand", &Zeck::encode(&n), &Bin::encode(&n))
        }
        ZeckOp::Add { a: x, b: y } => {
            let (x, y) = (num(&x)?, num(&y)?);
            let z = Zeck::encode(&x).add(&Zeck::encode(&y));
            let b = Bin::encode(&x).add(&Bin::encode(&y));
            show("add", &z, &b)
        }
        ZeckOp::Mul { a: x, b: y } => {
            let (x, y) = (num(&x)?, num(&y)?);
            let z = Zeck::encode(&x).mul(&Zeck::encode(&y));
            let b = Bin::encode(&x).mul(&Bin::encode(&y));
            show("mul", &z, &b)
        }
        ZeckOp::StarReport { n, m } => {
            let rep = star_pattern_report(n, m)?;
            let mut s = format!("phi^{n} * phi^{m} = {} = {}\n", rep.oracle.decode(), rep.oracle);
            s += "convention       terms                          lhs          rhs          match\n";
            let mut rows = vec![];
            for row in &rep.rows {
                let terms = row.terms.iter().map(|t| format!("φ^{t}")).collect::<Vec<_>>().join("+");
                s += &format!(
                    "{:<16} {:<30} {:<12} {:<12} {}\n",
                    row.convention.name(),
                    terms,
                    row.lhs,
                    row.rhs,
                    row.matches
                );
                rows.push(json!({
                    "convention": row.convention.name(),
                    "terms": row.terms,
                    "lhs": row.lhs.to_string(),
                    "rhs": row.rhs.to_string(),
                    "matches": row.matches,
                }));
            }
            (s, json!({"n": n, "m": m, "oracle": rep.oracle.to_string(), "rows": rows}))
        }
    };
    Ok(Outcome::ok(match a.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("serialisable") + "\n",
    }))
}

fn enumerate(a: EnumerateArgs) -> Result<Outcome, Failure> {
    if a.max_m == 0 || a.max_m > 16 {
        return Err(Failure::Usage("--max-m must be in 1..=16".into()));
    }
    let levels: Vec<Vec<FareyPath>> = match a.kind {
        EnumKind::Paths => enumerate_paths(a.max_m),
        EnumKind::Coronas => enumerate_coronas(a.max_m)
            .levels
            .into_iter()
            .map(|l| l.into_iter().map(Corona::into_path).collect())
            .collect(),
    };
    let text = match a.format {
        Format::Json => {
            let v: Vec<Value> = levels
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    let mut entry = json!({"degree": k + 1, "count": l.len()});
                    if a.list {
                        entry["items"] = serde_json::to_value(l).expect("serialisable");
                    }
                    entry
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for (k, l) in levels.iter().enumerate() {
                s += &format!("degree {}: {}\n", k + 1, l.len());
                if a.list {
                    for c in l {
                        s += &format!("  {c}\n");
                    }
                }
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn dna(a: DnaArgs) -> Result<Outcome, Failure> {
    let input = read_input(&a.input)?;
    let bad_json = |e: serde_json::Error| Failure::Usage(format!("invalid input: {e}"));
    match a.action {
        DnaAction::Encode | DnaAction::Roundtrip => {
            let path: FareyPath = serde_json::from_str(&input).map_err(bad_json)?;
            let c = Corona::new(path)?;
            let dna = Dna::encode(&c);
            if matches!(a.action, DnaAction::Encode) {
                return Ok(Outcome::ok(serde_json::to_string(&dna).expect("serialisable") + "\n"));
            }
            let back = dna.decode()?;
            let passed = back.path() == c.path() && dna.degree() == c.degree() as u128;
            let text = format!(
                "{}\ndegree {} (size law {}), round trip {}\n",
                serde_json::to_string(&dna).expect("serialisable"),
                c.degree(),
                dna.degree(),
                if passed { "ok" } else { "MISMATCH" }
            );
            Ok(Outcome { text, passed })
        }
        DnaAction::Decode => {
            let dna: Dna = serde_json::from_str(&input).map_err(bad_json)?;
            let c = dna.decode()?;
            Ok(Outcome::ok(serde_json::to_string(c.path()).expect("serialisable") + "\n"))
        }
    }
}
