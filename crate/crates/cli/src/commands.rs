use std::fmt;
use std::io::Read;
use std::path::Path;
use std::time::{Duration, Instant};

use serde_json::json;

use chordal_td::graph::variable_sparsity;
use chordal_td::oracle::{verify_decomposition, Status, VerificationReport};
use chordal_td::sparse::default_threshold;
use chordal_td::{
    associated_graph, decompose, gen_family, parse_system, print_system, sparse_decompose, AnalysisJson, Config,
    DecompositionJson, Error, Field, Polynomial, PrimeField, Rational, Rationals, VarTable, VerificationJson,
    SCHEMA,
};

use crate::ordering::{resolve, OrderSpec};
use crate::{Command, RunArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// The decomposition itself failed (node cap, term cap, ...).
    Decompose(Error),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Decompose(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) => f.write_str(m),
            CliError::Decompose(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::Invalid(_) => CliError::Usage(e.to_string()),
            Error::Domain(_) | Error::Contract(_) | Error::Resource(_) => CliError::Decompose(e),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Analyze { input, order, json, dot } => analyze(&input, order, json, dot),
        Command::Decompose {
            input,
            run,
            prime,
            json,
            dot,
            no_tree,
        } => decompose_cmd(&input, &run, prime, json, dot, no_tree),
        Command::Verify { input, run, primes, json } => verify(&input, &run, &primes, json),
        Command::Bench {
            family,
            i,
            alg,
            orders,
            seed,
            reps,
            parallel,
            max_nodes,
            json,
        } => bench(BenchArgs {
            family,
            i,
            alg,
            orders,
            seed,
            reps,
            parallel,
            max_nodes,
            json,
        }),
        Command::Gen { family, i, json } => gen(family, i, json),
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn parse_threshold(s0: Option<&str>) -> CliResult<Rational> {
    match s0 {
        None => Ok(default_threshold()),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad threshold `{s}` (expected a rational such as 3/10)"))),
    }
}

/// Parses `src` and applies an explicit or computed ordering. `Auto` is
/// returned unresolved, with the first-appearance table.
fn load(src: &str, order: Option<&OrderSpec>, seed: u64) -> CliResult<(Vec<Polynomial<Rationals>>, VarTable)> {
    match order {
        Some(OrderSpec::Names(names)) => Ok(parse_system(src, Some(names))?),
        None | Some(OrderSpec::Natural) | Some(OrderSpec::Auto) => Ok(parse_system(src, None)?),
        Some(spec) => {
            let (f, vars) = parse_system(src, None)?;
            let chosen = resolve(spec, &f, &vars, seed)?;
            Ok((vars.translate(&f, &chosen), chosen))
        }
    }
}

fn effective_order(run: &RunArgs) -> Option<OrderSpec> {
    match (&run.order, &run.s0) {
        (None, Some(_)) => Some(OrderSpec::Auto),
        (o, _) => o.clone(),
    }
}

fn config(run: &RunArgs, record_tree: bool) -> Config {
    Config {
        pivot: run.pivot,
        max_nodes: run.max_nodes,
        max_poly_terms: run.max_terms,
        record_tree,
        ..Config::default()
    }
}

fn analyze(input: &Path, order: Option<OrderSpec>, json: bool, dot: bool) -> CliResult<()> {
    let src = read_input(input)?;
    let (f, vars) = load(&src, order.as_ref(), 0)?;
    let a = AnalysisJson::new(&f, &vars);
    if dot {
        print!("{}", associated_graph(&f, false).to_dot(&vars.rank_names()));
    } else if json {
        print_json(&a);
    } else {
        println!("variables (ascending): {}", a.variables.join(" < "));
        println!("edges: {}", a.edges.len());
        for (u, v) in &a.edges {
            println!("  {u} -- {v}");
        }
        println!("chordal: {}", if a.chordal { "yes" } else { "no" });
        if let Some(peo) = &a.peo {
            println!("peo (ascending): {}", peo.join(" < "));
        }
        if let Some(c) = &a.completion {
            let added: Vec<String> = c.added_edges.iter().map(|(u, v)| format!("{u} -- {v}")).collect();
            println!("completion adds: {}", added.join(", "));
            println!("completion peo (ascending): {}", c.peo.join(" < "));
        }
        println!("variable sparsity: {}", a.sparsity);
        println!("weighted variable sparsity: {}", a.weighted_sparsity);
    }
    Ok(())
}

fn to_prime_field(f: &[Polynomial<Rationals>], field: &PrimeField) -> CliResult<Vec<Polynomial<PrimeField>>> {
    f.iter()
        .map(|p| {
            chordal_td::oracle::reduce_mod_p(p, field).ok_or_else(|| {
                CliError::Usage(format!("a coefficient denominator is divisible by {}", field.modulus()))
            })
        })
        .collect()
}

fn decompose_cmd(input: &Path, run: &RunArgs, prime: Option<u64>, json: bool, dot: bool, no_tree: bool) -> CliResult<()> {
    let src = read_input(input)?;
    let order = effective_order(run);
    let (f, vars) = load(&src, order.as_ref(), run.seed)?;
    match prime {
        None => decompose_in(&Rationals, f, vars, run, order, json, dot, no_tree),
        Some(p) => {
            let field = PrimeField::new(p)?;
            let fp = to_prime_field(&f, &field)?;
            decompose_in(&field, fp, vars, run, order, json, dot, no_tree)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn decompose_in<F: Field>(
    field: &F,
    f: Vec<Polynomial<F>>,
    vars: VarTable,
    run: &RunArgs,
    order: Option<OrderSpec>,
    json: bool,
    dot: bool,
    no_tree: bool,
) -> CliResult<()> {
    let cfg = config(run, json && !no_tree);
    let (doc, input, systems, vars) = if order == Some(OrderSpec::Auto) {
        let threshold = parse_threshold(run.s0.as_deref())?;
        let r = sparse_decompose(&f, &vars, &threshold, run.alg, run.seed, &cfg)?;
        let doc = DecompositionJson::from_sparse(&f, &vars, &r, run.alg, &cfg, field, run.seed);
        let input = vars.translate(&f, &r.chosen_ordering);
        (doc, input, r.systems, r.chosen_ordering)
    } else {
        let d = decompose(&f, &vars, run.alg, &cfg)?;
        let doc = DecompositionJson::new(&f, &d, &cfg, field);
        (doc, f, d.systems, vars)
    };
    if dot {
        let names = vars.rank_names();
        print!("{}", associated_graph(&input, false).to_dot(&names).replacen("graph G", "graph F", 1));
        for (i, s) in systems.iter().enumerate() {
            let g = associated_graph(&s.t, false).to_dot(&names);
            print!("{}", g.replacen("graph G", &format!("graph T{}", i + 1), 1));
        }
    } else if json {
        print_json(&doc);
    } else {
        println!(
            "{} system(s) [{}, {}, {}, {} nodes]",
            doc.systems.len(),
            doc.algorithm.name(),
            doc.field,
            doc.variables.join(" < "),
            doc.nodes_processed
        );
        if let Some(o) = &doc.ordering {
            println!("ordering: {} (sparsity {} vs threshold {})", o.source, o.sparsity, o.threshold);
        }
        for (i, s) in doc.systems.iter().enumerate() {
            println!("T{}: {}", i + 1, s.t.join("; "));
            if !s.u.is_empty() {
                println!("U{}: {}", i + 1, s.u.join("; "));
            }
        }
    }
    Ok(())
}

fn verify(input: &Path, run: &RunArgs, primes: &[u64], json: bool) -> CliResult<()> {
    let src = read_input(input)?;
    let (f, vars, alg, cfg, reproduced) = if src.trim_start().starts_with('{') {
        let doc = DecompositionJson::from_str(&src)?;
        let vars = doc.vars()?;
        let f = doc.input_polys()?;
        let cfg = Config {
            record_tree: false,
            ..doc.config.clone()
        };
        let again = decompose(&f, &vars, doc.algorithm, &cfg)?;
        let same = again.systems == doc.systems()?;
        (f, vars, doc.algorithm, cfg, Some(same))
    } else {
        let order = effective_order(run);
        if order == Some(OrderSpec::Auto) {
            return Err(CliError::Usage("verify takes an explicit ordering; `auto` is for decompose".into()));
        }
        let (f, vars) = load(&src, order.as_ref(), run.seed)?;
        (f, vars, run.alg, config(run, false), None)
    };
    let report = verify_decomposition(&f, &vars, alg, &cfg, primes)?;
    let out = VerificationJson {
        schema: SCHEMA,
        algorithm: alg,
        reproduced,
        report,
    };
    if json {
        print_json(&out);
    } else {
        print_report(&out);
    }
    if reproduced == Some(false) {
        return Err(CliError::Verification(
            "re-running the decomposition did not reproduce the stored systems".into(),
        ));
    }
    match out.report.status {
        Status::Fail => Err(CliError::Verification("zero sets differ".into())),
        Status::Inconclusive => Err(CliError::Verification("no prime could be checked".into())),
        _ => Ok(()),
    }
}

fn print_report(v: &VerificationJson) {
    let VerificationReport { status, primes } = &v.report;
    if let Some(r) = v.reproduced {
        println!("reproduced: {}", if r { "yes" } else { "no" });
    }
    for p in primes {
        print!("GF({}): {:?}, {} zeros", p.p, p.status, p.zeros);
        if !p.missing.is_empty() {
            print!(", missing {:?}", p.missing);
        }
        if !p.extra.is_empty() {
            print!(", extra {:?}", p.extra);
        }
        if let Some(n) = &p.note {
            print!(" ({n})");
        }
        println!();
    }
    println!("status: {status:?}");
}

pub struct BenchArgs {
    pub family: chordal_td::Family,
    pub i: usize,
    pub alg: chordal_td::Algorithm,
    pub orders: String,
    pub seed: u64,
    pub reps: usize,
    pub parallel: bool,
    pub max_nodes: usize,
    pub json: bool,
}

struct Timing {
    label: String,
    ascending: Vec<String>,
    median: Duration,
    nodes: usize,
    systems: usize,
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

fn time_ordering(
    f: &[Polynomial<Rationals>],
    vars: &VarTable,
    chosen: VarTable,
    label: String,
    a: &BenchArgs,
) -> chordal_td::Result<Timing> {
    let input = vars.translate(f, &chosen);
    let cfg = Config {
        max_nodes: a.max_nodes,
        record_tree: false,
        ..Config::default()
    };
    let mut times = Vec::with_capacity(a.reps);
    let mut last = None;
    for _ in 0..a.reps {
        let t0 = Instant::now();
        let d = decompose(&input, &chosen, a.alg, &cfg)?;
        times.push(t0.elapsed());
        last = Some(d);
    }
    let d = last.expect("at least one repetition");
    Ok(Timing {
        label,
        ascending: chosen.rank_names(),
        median: median(times),
        nodes: d.nodes_processed,
        systems: d.systems.len(),
    })
}

fn fingerprint() -> serde_json::Value {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|m| m.trim().to_string())
        })
        .unwrap_or_else(|| "unknown".into());
    json!({
        "os": std::env::consts::OS,
        "arch": std::env::consts::ARCH,
        "cpu": cpu,
        "threads": std::thread::available_parallelism().map_or(1, |n| n.get()),
    })
}

fn bench(a: BenchArgs) -> CliResult<()> {
    if a.reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let (f, vars) = gen_family(&Rationals, a.family, a.i)?;
    let mut jobs: Vec<(String, VarTable)> = Vec::new();
    for item in a.orders.split(',') {
        let spec: OrderSpec = item.parse().map_err(CliError::Usage)?;
        match spec {
            OrderSpec::Random(k) => {
                for j in 0..k {
                    let t = resolve(&OrderSpec::Random(j), &f, &vars, a.seed)?;
                    jobs.push((format!("random#{}", j + 1), t));
                }
            }
            OrderSpec::Peo | OrderSpec::Natural => {
                jobs.push((item.trim().to_string(), resolve(&spec, &f, &vars, a.seed)?));
            }
            _ => return Err(CliError::Usage(format!("unsupported bench ordering `{item}`"))),
        }
    }
    let timings: Vec<Timing> = if a.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = jobs
                .into_iter()
                .map(|(label, t)| {
                    let (f, vars, a) = (&f, &vars, &a);
                    s.spawn(move || time_ordering(f, vars, t, label, a))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("benchmark thread panicked"))
                .collect::<chordal_td::Result<Vec<_>>>()
        })?
    } else {
        jobs.into_iter()
            .map(|(label, t)| time_ordering(&f, &vars, t, label, &a))
            .collect::<chordal_td::Result<Vec<_>>>()?
    };

    let secs = |d: Duration| d.as_secs_f64();
    let peo = timings.iter().find(|t| t.label == "peo").map(|t| t.median);
    let random: Vec<Duration> = timings.iter().filter(|t| t.label.starts_with("random")).map(|t| t.median).collect();
    let random_median = (!random.is_empty()).then(|| median(random));
    let ratio = match (peo, random_median) {
        (Some(p), Some(r)) if p > Duration::ZERO => Some(secs(r) / secs(p)),
        _ => None,
    };
    let sparsity = variable_sparsity(&f);

    if a.json {
        let runs: Vec<_> = timings
            .iter()
            .map(|t| {
                json!({
                    "ordering": t.label,
                    "ascending": t.ascending,
                    "median_seconds": secs(t.median),
                    "nodes": t.nodes,
                    "systems": t.systems,
                })
            })
            .collect();
        print_json(&json!({
            "schema": SCHEMA,
            "family": a.family,
            "i": a.i,
            "variables": vars.len(),
            "sparsity": sparsity.to_string(),
            "algorithm": a.alg,
            "reps": a.reps,
            "seed": a.seed,
            "machine": fingerprint(),
            "runs": runs,
            "random_median_seconds": random_median.map(secs),
            "random_over_peo": ratio,
        }));
    } else {
        let m = fingerprint();
        println!(
            "{} i={} (n={}, s_v={}), {}, median of {} rep(s)",
            a.family,
            a.i,
            vars.len(),
            sparsity,
            a.alg.name(),
            a.reps
        );
        println!("machine: {} {}, {}, {} threads", m["os"].as_str().unwrap_or(""), m["arch"].as_str().unwrap_or(""), m["cpu"].as_str().unwrap_or(""), m["threads"]);
        println!("{:<12} {:>12} {:>8} {:>8}", "ordering", "seconds", "nodes", "systems");
        for t in &timings {
            println!("{:<12} {:>12.4} {:>8} {:>8}", t.label, secs(t.median), t.nodes, t.systems);
        }
        if let Some(r) = ratio {
            println!("random median / peo: {r:.2}");
        }
    }
    Ok(())
}

fn gen(family: chordal_td::Family, i: usize, json: bool) -> CliResult<()> {
    let (f, vars) = gen_family(&Rationals, family, i)?;
    if json {
        let names = vars.rank_names();
        print_json(&json!({
            "schema": SCHEMA,
            "family": family,
            "i": i,
            "variables": names,
            "polynomials": f.iter().map(|p| p.to_string_with(&names)).collect::<Vec<_>>(),
            "sparsity": variable_sparsity(&f).to_string(),
        }));
    } else {
        println!("{}", print_system(&f, &vars));
    }
    Ok(())
}
