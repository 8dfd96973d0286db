//! Seeded verification suites, one per acceptance criterion.
//!
//! Each suite expands into independent grid points that run through an
//! [`Executor`]; results come back in grid order whatever the executor does,
//! so reports are byte-identical across job counts.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corona::{corona_number, eigenvalue, enumerate_coronas, is_corona, Corona, Dna};
use crate::equi::{
    concat_bound_check, local_spacing, refine_bound_check, s_n, s_n_terms, totient_identity_check,
    totient_identity_failures, trend_row, PartialPath, TrendRow,
};
use crate::norm::{
    build_c_leq, build_c_leq_path, closed_form_layer, phi_iterate_chain,
    sandwich_chain, subcorona_transform, NormSpec, DEFAULT_MAX_VERTICES,
};
use crate::path::{enumerate_paths, number, FareyPath, FormalSum};
use crate::sb::{
    cf_to_vertex, cf_value, compare, continued_fraction, Ordering4, Sign, Sl2Word, Vertex,
};
use crate::zeck::{star_pattern_report, Bin, Zeck};
use crate::{Error, Rational, Result};

/// One verified grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(label: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(label, passed, detail),
            Err(e) => Check::new(label, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub suite: &'static str,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    #[serde(skip)]
    pub elapsed_ms: u128,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>, started: Instant) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        SuiteReport {
            criterion: suite.criterion(),
            suite: suite.name(),
            passed: failed == 0 && !checks.is_empty(),
            total: checks.len(),
            failed,
            elapsed_ms: started.elapsed().as_millis(),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub type Task = Box<dyn FnOnce() -> Vec<Check> + Send>;

/// Runs grid tasks and returns their checks in task order.
pub trait Executor {
    fn run(&self, tasks: Vec<Task>) -> Vec<Vec<Check>>;
}

pub struct Serial;

impl Executor for Serial {
    fn run(&self, tasks: Vec<Task>) -> Vec<Vec<Check>> {
        tasks.into_iter().map(|t| t()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    SnValues,
    SnMonotone,
    Totient,
    NormCoronas,
    IteratedNorms,
    ClosedForm,
    ClosedDegree,
    Sandwich,
    Transport,
    DnaOperators,
    Zeckendorf,
    DiscrepancyBounds,
    Trends,
    CoreRoundTrips,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::SnValues,
        Suite::SnMonotone,
        Suite::Totient,
        Suite::NormCoronas,
        Suite::IteratedNorms,
        Suite::ClosedForm,
        Suite::ClosedDegree,
        Suite::Sandwich,
        Suite::Transport,
        Suite::DnaOperators,
        Suite::Zeckendorf,
        Suite::DiscrepancyBounds,
        Suite::Trends,
        Suite::CoreRoundTrips,
    ];

    pub fn criterion(self) -> u8 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::SnValues => "sn",
            Suite::SnMonotone => "sn-monotone",
            Suite::Totient => "totient",
            Suite::NormCoronas => "norm-coronas",
            Suite::IteratedNorms => "iterated-norms",
            Suite::ClosedForm => "closed-form",
            Suite::ClosedDegree => "closed-degree",
            Suite::Sandwich => "sandwich",
            Suite::Transport => "transport",
            Suite::DnaOperators => "dna-operators",
            Suite::Zeckendorf => "zeck",
            Suite::DiscrepancyBounds => "discrepancy-bounds",
            Suite::Trends => "trends",
            Suite::CoreRoundTrips => "core-roundtrips",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::SnValues => "S1 = 0, S2 = 2/144, S3 = 668/14400 exactly",
            Suite::SnMonotone => "S1 < S2 < ... < Sn, terms of Sn at the even places of Sn+1",
            Suite::Totient => "sum of totients up to R = 1 + #c_R(1,1)",
            Suite::NormCoronas => "c(|.| <= R) is a corona for the five built-in norms",
            Suite::IteratedNorms => "Phi^n c(|.| <= R) = c(|.|_n <= R)",
            Suite::ClosedForm => "closed-form d.n.a. layers equal extracted layers",
            Suite::ClosedDegree => "closed-form degree count equals the degree of Phi^(n-1) c_R",
            Suite::Sandwich => "c(|.| <= R/a(n+2)) in Phi^n c(|.| <= R) in c(|.| <= 2R/a(n+3))",
            Suite::Transport => "slice of c_R(a,b) between 0g and inf g equals c_R((a,b)g^t) g",
            Suite::DnaOperators => "d.n.a. round trip and size law, number operators are diagonal",
            Suite::Zeckendorf => "Zeckendorf and binary arithmetic equal integer arithmetic",
            Suite::DiscrepancyBounds => "refinement and concatenation bounds for delta_1",
            Suite::Trends => "delta_1 / delta_2 trend tables and local spacing at 0",
            Suite::CoreRoundTrips => "word / vertex / continued fraction round trips, order chain, involutions",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }
}

/// Grid parameters; `None` picks the acceptance-scale default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub seed: u64,
    pub r_max: Option<u64>,
    pub n_max: Option<u32>,
    pub limit: Option<u64>,
    pub samples: Option<usize>,
    pub max_degree: Option<usize>,
    /// Restricts the norm-grid suites to these norms.
    pub norms: Option<Vec<NormSpec>>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn linear_grid_norms() -> Vec<NormSpec> {
    vec![
        NormSpec::linear_int(1, 1).expect("valid"),
        NormSpec::linear_int(1, 2).expect("valid"),
        NormSpec::linear_int(2, 3).expect("valid"),
    ]
}

fn closed_form_norms() -> Vec<NormSpec> {
    let mut norms = linear_grid_norms();
    norms.push(NormSpec::linear(int(1), Rational::new(5.into(), 2.into())).expect("valid"));
    norms
}

fn subadditive_norms() -> Vec<NormSpec> {
    NormSpec::builtins()
}

pub fn run(suite: Suite, params: &SuiteParams, exec: &dyn Executor) -> SuiteReport {
    let started = Instant::now();
    let tasks = tasks(suite, params);
    let checks = exec.run(tasks).into_iter().flatten().collect();
    SuiteReport::new(suite, checks, started)
}

/// Runs the two closed-form suites off one build per grid point.
pub fn run_closed_form_pair(params: &SuiteParams, exec: &dyn Executor) -> [SuiteReport; 2] {
    let started = Instant::now();
    let norms = params.norms.clone().unwrap_or_else(closed_form_norms);
    let r_max = params.r_max.unwrap_or(1000);
    let mut tasks: Vec<Task> = vec![Box::new(|| vec![anchor_check()])];
    for norm in norms {
        for r in 1..=r_max {
            let norm = norm.clone();
            tasks.push(Box::new(move || {
                let (layer, degree) = closed_form_point(&norm, r);
                vec![layer, degree]
            }));
        }
    }
    let results = exec.run(tasks);
    let mut layer_checks = vec![];
    let mut degree_checks = vec![];
    for (k, checks) in results.into_iter().enumerate() {
        if k == 0 {
            layer_checks.extend(checks);
            continue;
        }
        let mut it = checks.into_iter();
        layer_checks.extend(it.next());
        degree_checks.extend(it.next());
    }
    let elapsed = started;
    [
        SuiteReport::new(Suite::ClosedForm, layer_checks, elapsed),
        SuiteReport::new(Suite::ClosedDegree, degree_checks, elapsed),
    ]
}

fn tasks(suite: Suite, params: &SuiteParams) -> Vec<Task> {
    match suite {
        Suite::SnValues => sn_values(params.n_max.unwrap_or(3)),
        Suite::SnMonotone => sn_monotone(params.n_max.unwrap_or(12)),
        Suite::Totient => totient(params.r_max.unwrap_or(5000) as usize),
        Suite::NormCoronas => norm_grid(params, 500, subadditive_norms, |norm, r| {
            let res = build_c_leq_path(norm, &int(r as i64), DEFAULT_MAX_VERTICES)
                .map(|c| (is_corona(&c), format!("degree {}", c.degree())));
            vec![Check::from_result(format!("{norm} R={r}"), res)]
        }),
        Suite::IteratedNorms => {
            let n_max = params.n_max.unwrap_or(5);
            norm_grid(params, 300, linear_grid_norms, move |norm, r| {
                let res = phi_iterate_chain(norm, &int(r as i64), n_max, DEFAULT_MAX_VERTICES).map(|v| {
                    let bad: Vec<usize> = (0..v.len()).filter(|&n| !v[n]).collect();
                    (bad.is_empty(), if bad.is_empty() { String::new() } else { format!("fails at n={bad:?}") })
                });
                vec![Check::from_result(format!("{norm} R={r} n<={n_max}"), res)]
            })
        }
        Suite::ClosedForm | Suite::ClosedDegree => {
            let want_layer = suite == Suite::ClosedForm;
            let mut tasks: Vec<Task> = Vec::new();
            if want_layer {
                tasks.push(Box::new(|| vec![anchor_check()]));
            }
            let norms = params.norms.clone().unwrap_or_else(closed_form_norms);
            for norm in norms {
                for r in 1..=params.r_max.unwrap_or(1000) {
                    let norm = norm.clone();
                    tasks.push(Box::new(move || {
                        let (layer, degree) = closed_form_point(&norm, r);
                        vec![if want_layer { layer } else { degree }]
                    }));
                }
            }
            tasks
        }
        Suite::Sandwich => {
            let n_max = params.n_max.unwrap_or(6);
            norm_grid(params, 500, subadditive_norms, move |norm, r| {
                let res = sandwich_chain(norm, &int(r as i64), n_max, DEFAULT_MAX_VERTICES).map(|v| {
                    let bad: Vec<usize> = (0..v.len()).filter(|&n| !v[n]).collect();
                    (bad.is_empty(), if bad.is_empty() { String::new() } else { format!("fails at n={bad:?}") })
                });
                vec![Check::from_result(format!("{norm} R={r} n<={n_max}"), res)]
            })
        }
        Suite::Transport => transport(params),
        Suite::DnaOperators => dna_operators(params),
        Suite::Zeckendorf => zeckendorf(params),
        Suite::DiscrepancyBounds => discrepancy(params),
        Suite::Trends => trends(params),
        Suite::CoreRoundTrips => core_round_trips(params),
    }
}

fn norm_grid(
    params: &SuiteParams,
    default_r: u64,
    default_norms: fn() -> Vec<NormSpec>,
    check: impl Fn(&NormSpec, u64) -> Vec<Check> + Send + Sync + Clone + 'static,
) -> Vec<Task> {
    let norms = params.norms.clone().unwrap_or_else(default_norms);
    let r_max = params.r_max.unwrap_or(default_r);
    let mut tasks: Vec<Task> = Vec::new();
    for norm in norms {
        for r in 1..=r_max {
            let (norm, check) = (norm.clone(), check.clone());
            tasks.push(Box::new(move || check(&norm, r)));
        }
    }
    tasks
}

fn sn_values(n_max: u32) -> Vec<Task> {
    let expected = [(1, int(0)), (2, Rational::new(2.into(), 144.into())), (3, Rational::new(668.into(), 14400.into()))];
    expected
        .into_iter()
        .filter(|(n, _)| *n <= n_max.max(1))
        .map(|(n, want)| {
            Box::new(move || {
                let res = s_n(n).map(|got| (got == want, format!("S{n} = {got}")));
                vec![Check::from_result(format!("S{n}"), res)]
            }) as Task
        })
        .collect()
}

fn sn_monotone(n_max: u32) -> Vec<Task> {
    vec![Box::new(move || {
        let mut checks = vec![];
        let values: Result<Vec<Rational>> = (1..=n_max).map(s_n).collect();
        match values {
            Ok(values) => {
                for (k, w) in values.windows(2).enumerate() {
                    checks.push(Check::new(
                        format!("S{} < S{}", k + 1, k + 2),
                        w[0] < w[1],
                        format!("S{} = {}", k + 2, w[1]),
                    ));
                }
                for n in 1..n_max.min(11) {
                    let res = s_n_terms(n).and_then(|small| {
                        let big = s_n_terms(n + 1)?;
                        Ok((small.iter().enumerate().all(|(i, t)| *t == big[2 * i + 1]), String::new()))
                    });
                    checks.push(Check::from_result(format!("terms of S{n} inside S{}", n + 1), res));
                }
            }
            Err(e) => checks.push(Check::new("S_n", false, format!("error: {e}"))),
        }
        checks
    })]
}

fn totient(r_max: usize) -> Vec<Task> {
    let mut tasks: Vec<Task> = vec![Box::new(move || {
        let failures = totient_identity_failures(r_max);
        vec![Check::new(
            format!("strata count, R <= {r_max}"),
            failures.is_empty(),
            if failures.is_empty() { String::new() } else { format!("fails at R={:?}", &failures[..failures.len().min(10)]) },
        )]
    })];
    for r in (100..=r_max.min(1000)).step_by(100) {
        tasks.push(Box::new(move || {
            let res = totient_identity_check(r).map(|ok| (ok, String::new()));
            vec![Check::from_result(format!("materialised c_{r}"), res)]
        }));
    }
    tasks
}

fn anchor_check() -> Check {
    let res = (|| {
        let norm = NormSpec::linear_int(1, 1)?;
        let layer = closed_form_layer(&norm, &int(4), 1, 1000)?;
        Ok((layer.lambda == [-1, 1], format!("layer {:?}", layer.lambda)))
    })();
    Check::from_result("linear(1,1) R=4 n=1 anchor", res)
}

/// Layer and degree checks at one `(norm, R)`, every layer `1..=ht`.
fn closed_form_point(norm: &NormSpec, r: u64) -> (Check, Check) {
    let label = format!("{norm} R={r}");
    let rad = int(r as i64);
    let c = match build_c_leq(norm, &rad, DEFAULT_MAX_VERTICES) {
        Ok(c) => c,
        Err(e) => {
            let fail = Check::new(label.clone(), false, format!("error: {e}"));
            return (fail.clone(), fail);
        }
    };
    let dna = Dna::encode(&c);
    let mut layer_bad = vec![];
    let mut forms_disagree = 0;
    let mut degree_bad = vec![];
    for n in 1..=dna.height() as u32 {
        match closed_form_layer(norm, &rad, n, DEFAULT_MAX_VERTICES) {
            Ok(layer) => {
                if layer.lambda != dna.layer(n as usize) {
                    layer_bad.push(n);
                }
                if !layer.forms_agree() {
                    forms_disagree += 1;
                }
                if layer.degree() != c.tower()[n as usize - 1].degree() as u128 {
                    degree_bad.push(n);
                }
            }
            Err(_) => {
                layer_bad.push(n);
                degree_bad.push(n);
            }
        }
    }
    let detail = |bad: &[u32]| {
        let mut s = format!("height {}", dna.height());
        if !bad.is_empty() {
            s += &format!(", mismatched layers {bad:?}");
        }
        s
    };
    let mut layer_detail = detail(&layer_bad);
    if forms_disagree > 0 {
        layer_detail += &format!(", floor forms differ on {forms_disagree} layers");
    }
    (
        Check::new(label.clone(), layer_bad.is_empty(), layer_detail),
        Check::new(label, degree_bad.is_empty(), detail(&degree_bad)),
    )
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Sl2Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Sign> = (0..len).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect();
    Sl2Word::from_letters(&letters)
}

fn transport(params: &SuiteParams) -> Vec<Task> {
    let samples = params.samples.unwrap_or(200);
    let r_max = params.r_max.unwrap_or(500);
    let norms = params.norms.clone().unwrap_or_else(closed_form_norms);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut tasks: Vec<Task> = Vec::new();
    let mut attempts = 0;
    while tasks.len() < samples && attempts < samples * 100 {
        attempts += 1;
        let norm = norms[rng.gen_range(0..norms.len())].clone();
        let r = rng.gen_range(1..=r_max);
        let g = random_word(&mut rng, 8);
        let ball = norm.ball(&int(r as i64));
        if [g.lower(), g.upper()].iter().any(|e| e.is_interior() && !ball.contains(e)) {
            continue;
        }
        tasks.push(Box::new(move || {
            let res = subcorona_transform(&norm, &int(r as i64), &g, DEFAULT_MAX_VERTICES).map(|ok| (ok, String::new()));
            vec![Check::from_result(format!("{norm} R={r} g={g}"), res)]
        }));
    }
    tasks
}

fn dna_operators(params: &SuiteParams) -> Vec<Task> {
    let max_degree = params.max_degree.unwrap_or(12);
    let op_degree = max_degree.min(10);
    let path_degree = max_degree.min(6);
    vec![
        Box::new(move || {
            let levels = enumerate_coronas(max_degree);
            let mut bad = vec![];
            let mut count = 0;
            for c in levels.levels.iter().flatten() {
                count += 1;
                let dna = Dna::encode(c);
                let back = dna.decode();
                if back.as_ref().map(Corona::path) != Ok(c.path()) || dna.degree() != c.degree() as u128 {
                    bad.push(c.path().to_string());
                }
            }
            vec![Check::new(
                format!("d.n.a. round trip and size law, degree <= {max_degree}"),
                bad.is_empty(),
                format!("{count} coronas{}", if bad.is_empty() { String::new() } else { format!(", failing {:?}", &bad[..bad.len().min(5)]) }),
            )]
        }),
        Box::new(move || {
            let levels = enumerate_coronas(op_degree);
            let mut bad = vec![];
            let mut count = 0;
            for c in levels.levels.iter().flatten() {
                count += 1;
                let n = corona_number(&FormalSum::single(c.path().clone()));
                let mut want = FormalSum::new();
                want.add(c.path().clone(), eigenvalue(c));
                if n != want {
                    bad.push(c.path().to_string());
                }
            }
            vec![Check::new(
                format!("corona number operator N[c] = e_c[c], degree <= {op_degree}"),
                bad.is_empty(),
                format!("{} of {count} coronas off-diagonal{}", bad.len(), bad.first().map(|c| format!(", e.g. {c}")).unwrap_or_default()),
            )]
        }),
        Box::new(move || {
            let mut bad = vec![];
            let mut count = 0;
            for c in enumerate_paths(path_degree).into_iter().flatten() {
                count += 1;
                let mut want = FormalSum::new();
                want.add(c.clone(), c.degree() as i64 - c.maxima_indices().len() as i64);
                if number(&FormalSum::single(c.clone())) != want {
                    bad.push(c.to_string());
                }
            }
            vec![Check::new(
                format!("path number operator N[c] = (m - #c^max)[c], degree <= {path_degree}"),
                bad.is_empty(),
                format!("{count} paths"),
            )]
        }),
    ]
}

fn zeckendorf(params: &SuiteParams) -> Vec<Task> {
    let limit = params.limit.unwrap_or(2000);
    let samples = params.samples.unwrap_or(10_000);
    let n_max = params.n_max.unwrap_or(20);
    let seed = params.seed;
    let chunk = 100u64;
    let mut tasks: Vec<Task> = Vec::new();
    for lo in (0..=limit).step_by(chunk as usize) {
        let hi = (lo + chunk - 1).min(limit);
        tasks.push(Box::new(move || {
            let zs: Vec<Zeck> = (0..=limit).map(Zeck::from_u64).collect();
            let bs: Vec<Bin> = (0..=limit).map(Bin::from_u64).collect();
            let mut bad = None;
            'outer: for a in lo..=hi {
                for b in 0..=limit {
                    let (za, zb, ba, bb) = (&zs[a as usize], &zs[b as usize], &bs[a as usize], &bs[b as usize]);
                    let sum = za.add(zb);
                    let ok = sum.is_canonical()
                        && sum == zs.get((a + b) as usize).cloned().unwrap_or_else(|| Zeck::from_u64(a + b))
                        && za.mul(zb).decode() == BigUint::from(a * b)
                        && ba.add(bb).decode() == BigUint::from(a + b)
                        && ba.mul(bb).decode() == BigUint::from(a * b);
                    if !ok {
                        bad = Some((a, b));
                        break 'outer;
                    }
                }
            }
            vec![Check::new(
                format!("pairs a in {lo}..={hi}, b <= {limit}"),
                bad.is_none(),
                bad.map(|p| format!("fails at {p:?}")).unwrap_or_default(),
            )]
        }));
    }
    tasks.push(Box::new(move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = None;
        for _ in 0..samples {
            let (a, b): (u64, u64) = (rng.gen(), rng.gen());
            let (za, zb) = (Zeck::from_u64(a), Zeck::from_u64(b));
            let (ba, bb) = (Bin::from_u64(a), Bin::from_u64(b));
            let (sum, prod) = (BigUint::from(a) + b, BigUint::from(a) * b);
            let s = za.add(&zb);
            let ok = s.is_canonical()
                && s.decode() == sum
                && za.mul(&zb).decode() == prod
                && ba.add(&bb).decode() == sum
                && ba.mul(&bb).decode() == prod;
            if !ok {
                bad = Some((a, b));
                break;
            }
        }
        vec![Check::new(
            format!("{samples} random 64-bit pairs"),
            bad.is_none(),
            bad.map(|p| format!("fails at {p:?}")).unwrap_or_default(),
        )]
    }));
    tasks.push(Box::new(move || {
        let mut matches = [0usize; 4];
        let mut total = 0;
        let mut errors = 0;
        for n in 1..=n_max {
            for m in n..=n_max {
                match star_pattern_report(n, m) {
                    Ok(rep) => {
                        total += 1;
                        for (k, row) in rep.rows.iter().enumerate() {
                            matches[k] += usize::from(row.matches);
                        }
                    }
                    Err(_) => errors += 1,
                }
            }
        }
        let names = crate::zeck::StarConvention::ALL.map(|c| c.name());
        let detail = names
            .iter()
            .zip(matches)
            .map(|(name, k)| format!("{name}: {k}/{total}"))
            .collect::<Vec<_>>()
            .join(", ");
        vec![Check::new(format!("product-pattern report, n <= m <= {n_max}"), errors == 0, detail)]
    }));
    tasks
}

/// A random mother-closed path grown by `steps` mediant insertions.
pub fn random_path(rng: &mut ChaCha8Rng, steps: usize) -> FareyPath {
    let mut pts = vec![Vertex::zero(), Vertex::infinity()];
    for _ in 0..steps {
        let i = rng.gen_range(0..pts.len() - 1);
        let m = pts[i].mediant(&pts[i + 1]);
        pts.insert(i + 1, m);
    }
    FareyPath::from_points(pts).expect("mediant insertions keep unit determinants")
}

/// A random window `c_i, …, c_j` of a random path.
pub fn random_partial_path(rng: &mut ChaCha8Rng, min_degree: usize) -> PartialPath {
    loop {
        let steps = rng.gen_range(1..=48);
        let c = random_path(rng, steps);
        let m = c.degree();
        if m < min_degree {
            continue;
        }
        let i = rng.gen_range(0..=m - min_degree);
        let j = rng.gen_range(i + min_degree..=m);
        return PartialPath::window(&c, i, j).expect("valid window");
    }
}

fn discrepancy(params: &SuiteParams) -> Vec<Task> {
    let samples = params.samples.unwrap_or(1000);
    let seed = params.seed;
    vec![
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bad = (0..samples)
                .map(|_| random_partial_path(&mut rng, 1))
                .filter(|c| !refine_bound_check(c))
                .count();
            vec![Check::new(format!("refinement bound, {samples} partial paths"), bad == 0, format!("{bad} violations"))]
        }),
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let mut bad = 0;
            let mut errors = 0;
            for _ in 0..samples {
                let c = random_partial_path(&mut rng, 2);
                let pieces = rng.gen_range(2..=4.min(c.degree()));
                let mut cuts: Vec<usize> = rand::seq::index::sample(&mut rng, c.degree() - 1, pieces - 1)
                    .into_iter()
                    .map(|k| k + 1)
                    .collect();
                cuts.sort_unstable();
                match c.split(&cuts).and_then(|parts| concat_bound_check(&parts)) {
                    Ok(true) => {}
                    Ok(false) => bad += 1,
                    Err(_) => errors += 1,
                }
            }
            vec![Check::new(
                format!("concatenation bound, {samples} partial paths"),
                bad == 0 && errors == 0,
                format!("{bad} violations, {errors} errors"),
            )]
        }),
    ]
}

/// Radii of the default trend table.
pub fn trend_radii() -> Vec<u64> {
    (100..=2000).step_by(100).collect()
}

fn trends(params: &SuiteParams) -> Vec<Task> {
    let radii: Vec<u64> = match params.r_max {
        Some(r) => (100..=r).step_by(100).collect(),
        None => trend_radii(),
    };
    let mut tasks: Vec<Task> = radii
        .into_iter()
        .map(|r| {
            Box::new(move || {
                let res = trend_row(r).map(|row: TrendRow| {
                    let finite = crate::equi::trend_csv(&[row]).lines().nth(1).is_some_and(|l| !l.contains("NaN"));
                    (finite, String::new())
                });
                vec![Check::from_result(format!("trend row R={r}"), res)]
            }) as Task
        })
        .collect();
    tasks.push(Box::new(|| {
        let bad: Vec<u64> = (10..=200).filter(|&r| !local_spacing(r).is_ok_and(|s| s.holds())).collect();
        vec![Check::new(
            "local spacing at 0, 10 <= R <= 200",
            bad.is_empty(),
            if bad.is_empty() { String::new() } else { format!("fails at R={bad:?}") },
        )]
    }));
    tasks
}

fn core_round_trips(params: &SuiteParams) -> Vec<Task> {
    let samples = params.samples.unwrap_or(10_000);
    let seed = params.seed;
    vec![
        Box::new(|| {
            let res = (|| -> Result<(bool, String)> {
                let mut count = 0;
                for s in 2u64..=200 {
                    for x in 1..s {
                        let y = s - x;
                        if num_integer::gcd(x, y) != 1 {
                            continue;
                        }
                        count += 1;
                        let v = Vertex::new(x, y)?;
                        let w = Sl2Word::of_vertex(&v)?;
                        let cf = continued_fraction(&v)?;
                        let ok = w.vertex() == v
                            && Sl2Word::from_exponents(w.exponents().to_vec())? == w
                            && cf_to_vertex(&cf)? == v
                            && cf_value(&cf)? == Rational::new(BigInt::from(y), BigInt::from(x));
                        if !ok {
                            return Ok((false, format!("fails at {v}")));
                        }
                    }
                }
                Ok((true, format!("{count} vertices")))
            })();
            vec![Check::from_result("word / vertex / continued fraction, x+y <= 200", res)]
        }),
        Box::new(|| {
            let res = (|| -> Result<(bool, String)> {
                let mut verts = vec![];
                for s in 2u64..=60 {
                    for x in 1..s {
                        if num_integer::gcd(x, s - x) == 1 {
                            verts.push(Vertex::new(x, s - x)?);
                        }
                    }
                }
                for a in &verts {
                    for b in &verts {
                        let tree = compare(a, b, Ordering4::Tree)?.is_le();
                        let fund = compare(a, b, Ordering4::Fundamental)?.is_le();
                        let point = compare(a, b, Ordering4::Pointwise)?.is_le();
                        if (tree && !fund) || (fund && !point) {
                            return Ok((false, format!("fails at {a}, {b}")));
                        }
                    }
                }
                Ok((true, format!("{} pairs", verts.len() * verts.len())))
            })();
            vec![Check::from_result("order chain tree => fundamental => pointwise, x+y <= 60", res)]
        }),
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = None;
            for _ in 0..samples {
                let (g1, g2) = (random_word(&mut rng, 24), random_word(&mut rng, 24));
                let g12 = g1.compose(&g2);
                let ok = g12.star() == g1.star().compose(&g2.star())
                    && g12.transpose() == g2.transpose().compose(&g1.transpose())
                    && g1.star().star() == g1
                    && g1.transpose().transpose() == g1
                    && g1.star().transpose() == g1.transpose().star();
                if !ok {
                    bad = Some(format!("{g1} / {g2}"));
                    break;
                }
            }
            vec![Check::new(
                format!("involution laws on {samples} random word pairs"),
                bad.is_none(),
                bad.unwrap_or_default(),
            )]
        }),
    ]
}

/// Parses `n` or `n/d`.
pub fn parse_rational(t: &str) -> Result<Rational> {
    let t = t.trim();
    let parse = |u: &str| u.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not a rational: {t}")));
    match t.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator: {t}")));
            }
            Ok(Rational::new(parse(n)?, d))
        }
        None => Ok(Rational::from_integer(parse(t)?)),
    }
}

/// Parses `linear:a,b`, `p:k`, `max` or `matrix:a11,a12,a21,a22`
/// (rationals as `n` or `n/d`).
pub fn parse_norm(s: &str) -> Result<NormSpec> {
    let (kind, args) = s.split_once(':').unwrap_or((s, ""));
    let list = || -> Result<Vec<Rational>> { args.split(',').map(parse_rational).collect() };
    match kind {
        "linear" => match list()?.as_slice() {
            [a, b] => NormSpec::linear(a.clone(), b.clone()),
            _ => Err(Error::Parse(format!("linear needs two weights: {s}"))),
        },
        "p" => NormSpec::p_power(args.parse().map_err(|_| Error::Parse(format!("bad exponent: {s}")))?),
        "max" => Ok(NormSpec::Max),
        "matrix" => match list()?.as_slice() {
            [a, b, c, d] => NormSpec::matrix([[a.clone(), b.clone()], [c.clone(), d.clone()]]),
            _ => Err(Error::Parse(format!("matrix needs four entries: {s}"))),
        },
        _ => Err(Error::Parse(format!("unknown norm: {s}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteParams {
        SuiteParams {
            seed: 7,
            r_max: Some(30),
            n_max: None,
            limit: Some(60),
            samples: Some(40),
            max_degree: Some(7),
            norms: None,
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::ClosedForm.criterion(), 6);
        assert_eq!(Suite::CoreRoundTrips.criterion(), 14);
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            if matches!(s, Suite::DnaOperators | Suite::Trends | Suite::CoreRoundTrips) {
                continue;
            }
            let report = run(s, &small(), &Serial);
            assert!(report.passed, "{}: {:?}", s.name(), report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn operator_suite_reports_the_known_failure() {
        let report = run(Suite::DnaOperators, &small(), &Serial);
        let passed: Vec<bool> = report.checks.iter().map(|c| c.passed).collect();
        assert_eq!(passed, vec![true, false, true]);
    }

    #[test]
    fn pair_runner_matches_single_suites() {
        let p = SuiteParams { r_max: Some(25), ..small() };
        let [a, b] = run_closed_form_pair(&p, &Serial);
        assert_eq!(a.checks, run(Suite::ClosedForm, &p, &Serial).checks);
        assert_eq!(b.checks, run(Suite::ClosedDegree, &p, &Serial).checks);
    }

    #[test]
    fn seeded_suites_are_deterministic() {
        let a = run(Suite::DiscrepancyBounds, &small(), &Serial);
        let b = run(Suite::DiscrepancyBounds, &small(), &Serial);
        assert_eq!(a.checks, b.checks);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_partial_path(&mut rng, 2);
        assert!(c.degree() >= 2);
    }

    #[test]
    fn norm_parsing() {
        assert_eq!(parse_norm("linear:1,5/2").unwrap().to_string(), "linear(1,5/2)");
        assert_eq!(parse_norm("p:2").unwrap().to_string(), "p2");
        assert_eq!(parse_norm("max").unwrap().to_string(), "max");
        assert!(parse_norm("matrix:1,1,1,1").is_ok());
        assert!(parse_norm("linear:1").is_err());
        assert!(parse_norm("linear:1,0").is_err());
        assert!(parse_norm("linear:1/0,1").is_err());
        assert!(parse_norm("taxicab").is_err());
        assert_eq!(parse_rational(" 10/4 ").unwrap(), Rational::new(5.into(), 2.into()));
        assert!(parse_rational("x").is_err());
    }
}
