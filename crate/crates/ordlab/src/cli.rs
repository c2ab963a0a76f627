//! Command-line front end: argument parsing, worker-pool sizing, artifact
//! output with provenance records, and deterministic replay.
//!
//! Every run resolves one seed (given or drawn from OS entropy) and derives
//! all randomness from it. When a command writes an artifact, a sibling
//! `<out>.provenance.json` records the tool version, the full command with
//! the resolved seed, a digest of the payload, and the verification verdicts;
//! `replay` re-executes the recorded command and demands a bit-identical
//! payload. Exit codes: 0 success, 1 verification failure, 2 usage error.

use crate::admissibility::{admissible_orders, count_admissible, family_for};
use crate::error::{Error, Result};
use crate::experiments::{
    capacity, concentration_sweep, deviation_profile, extension_lemma_ratio, qop_proportion,
    sweep_csv, OrdSource, QopMode,
};
use crate::generators::{
    distances_in_semigroup, forb_construction, is_f_free, large_girth_hypergraph, make_connected,
    metric_construction_with_a, random_hypergraph, GirthParams,
};
use crate::orders::{check_consistency, CheckMode, FamilyLaw, OrderDistribution, OrderingFamily};
use crate::rng::derive_indexed;
use crate::samplers::{
    embed_negative_type, sample_bipartite_ordering, sample_empirical, sample_gaussian_ordering,
    sample_hypergraph_gaussian_ordering, sample_projection_ordering,
};
use crate::structures::io::{
    parse_hypergraph, parse_metric_exact, parse_structure, render_rational, write_hypergraph,
    write_metric_exact, write_metric_f64, StructureFile,
};
use crate::structures::{hypergraph_girth, Structure, StructureKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

/// Version tag of the provenance JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "ordlab",
    version,
    about = "Consistent random orderings of finite structures: samplers, generators, exact checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// RNG seed; drawn from OS entropy and recorded when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count for sampling commands (default 10000).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Worker threads (default: ORDLAB_WORKERS, then all cores). Results do
    /// not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the primary artifact here; gen commands derive a name when
    /// omitted, other commands print to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Payload format where a choice exists (exp sweep: json or csv).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate structures (writes a structure file plus provenance).
    #[command(subcommand)]
    Gen(GenCmd),
    /// Draw orders from a sampler; emits the empirical distribution as JSON.
    Sample(SampleArgs),
    /// Check isomorphism-invariance and restriction-compatibility of an
    /// ordering family over all structures of a kind.
    Check(CheckArgs),
    /// Total variation distance between two saved order distributions.
    Tv(TvArgs),
    /// Counting experiments.
    #[command(subcommand)]
    Exp(ExpCmd),
    /// Count (and list, when small) the admissible orders of a structure.
    Admissible(AdmissibleArgs),
    /// Re-execute a recorded run and verify the payload is bit-identical.
    Replay(ReplayArgs),
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Uniform random r-uniform hypergraph with edge probability p.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
    },
    /// Sparse hypergraph of girth >= g via short-cycle deletion.
    Girth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        g: usize,
        /// Density coefficient of the pre-deletion edge probability.
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        /// Join components afterwards (girth is preserved).
        #[arg(long)]
        connect: bool,
    },
    /// Union of one planted copy of a pattern graph per hyperedge of a
    /// girth >= g scaffold.
    Forb {
        /// Pattern graph file (k vertices; the scaffold is k-uniform).
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        g: usize,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        /// Graph files that must not embed into the output; checked exactly.
        #[arg(long)]
        forbid: Vec<PathBuf>,
    },
    /// Metric space glued from isometric copies of a seed space along a
    /// large-girth scaffold, completed by shortest paths.
    Metric {
        /// Seed metric file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        /// Parse distances as exact rationals and stay exact throughout.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// Structure file: graph/hypergraph for the Gaussian and bipartite
    /// constructions, points or metric for projection.
    #[arg(long)]
    input: PathBuf,
    /// Degree padding target for the Gaussian constructions
    /// (default: the maximum degree, floored at 1).
    #[arg(long)]
    d_cap: Option<usize>,
    /// Snowflake exponent applied when a metric file feeds projection.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    Gauss,
    HyperGauss,
    Bipartite,
    Projection,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Degree padding target for the gauss family (default: the largest
    /// degree possible at the checked sizes).
    #[arg(long)]
    d_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Uniform,
    DegreeSorted,
    Gauss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Graph,
    Hypergraph3,
    Equiv,
    Vector,
}

impl KindArg {
    fn kind(self) -> StructureKind {
        match self {
            KindArg::Graph => StructureKind::Graph,
            KindArg::Hypergraph3 => StructureKind::Hypergraph { r: 3 },
            KindArg::Equiv => StructureKind::Equiv,
            KindArg::Vector => StructureKind::Vector,
        }
    }

    fn edge_arity(self) -> Option<usize> {
        match self {
            KindArg::Graph => Some(2),
            KindArg::Hypergraph3 => Some(3),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Statistical,
}

#[derive(Args, Debug)]
struct TvArgs {
    /// Distribution JSON written by `sample`.
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Fail (exit 1) when the distance exceeds this.
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum ExpCmd {
    /// Expected embedding count (n)_k / 2^C(k,r) into the density-1/2 host.
    Capacity {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
    },
    /// Worst deviation of ordered-embedding proportions from 1/k!.
    Deviation {
        /// Pattern structure file.
        #[arg(long)]
        pattern: PathBuf,
        /// Host structure file.
        #[arg(long)]
        host: PathBuf,
        #[arg(long, value_enum, default_value_t = DevMode::Sampled)]
        mode: DevMode,
        /// Host orders to draw in sampled/heuristics mode.
        #[arg(long, default_value_t = 200)]
        orders: usize,
    },
    /// Deviation medians across sizes for random density-1/2 hosts.
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Comma-separated host sizes, e.g. 20,40,80.
        #[arg(long)]
        ns: String,
        /// Hosts per size; host seeds derive from the run seed.
        #[arg(long, default_value_t = 10)]
        seed_count: u64,
        #[arg(long, default_value_t = 200)]
        orders: usize,
    },
    /// Proportion of host automorphisms carrying a substructure order into a
    /// host order.
    Qop {
        /// Substructure file.
        #[arg(long)]
        sub: PathBuf,
        /// Host structure file.
        #[arg(long)]
        host: PathBuf,
        /// Substructure order, comma-separated ascending element sequence.
        #[arg(long)]
        ord_sub: String,
        /// Host order, same encoding.
        #[arg(long)]
        ord_host: String,
        /// Inclusion map: image of substructure element i at position i.
        #[arg(long)]
        inc: String,
        /// Admissible family kind (all-orders, bipartite-parts, convex-equiv,
        /// vs-natural).
        #[arg(long, default_value = "all-orders")]
        family: String,
    },
    /// Probability that a uniform order on X + n copies of Y extends the
    /// pattern on X but no full pattern copy.
    Extension {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Pattern order on the k + m elements (X = 0..k), ascending
        /// sequence; defaults to 0,2,1 when k=2 and m=1.
        #[arg(long)]
        pattern: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DevMode {
    Exact,
    Sampled,
    Heuristics,
}

#[derive(Args, Debug)]
struct AdmissibleArgs {
    /// Family kind: all-orders, bipartite-parts, convex-equiv, vs-natural.
    #[arg(long)]
    family: String,
    /// Structure file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Provenance JSON produced by an earlier run.
    provenance: PathBuf,
}

/// Result of one complete run, before anything is printed or written.
pub struct RunOutcome {
    /// Printed to stdout: the payload itself when no artifact is written,
    /// a summary otherwise.
    pub stdout: String,
    /// Primary artifact text; a function of the arguments alone.
    pub payload: String,
    pub out_path: Option<PathBuf>,
    pub provenance: Option<Value>,
    /// A verification failed (exit 1): consistency violation, forbidden
    /// pattern present, replay mismatch, threshold exceeded.
    pub failed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(Box<clap::Error>),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

/// Exit code for a library error: verification and construction failures are
/// 1, everything argument-shaped is 2.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed(_)
        | Error::ConstructionFailed { .. }
        | Error::NotNegativeType { .. } => 1,
        _ => 2,
    }
}

/// Process entry point: parses std::env::args, runs, prints, maps exit codes.
pub fn main_entry() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args, true) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            i32::from(outcome.failed)
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn provenance_path(out: &Path) -> PathBuf {
    PathBuf::from(format!("{}.provenance.json", out.display()))
}

/// The command list stored for replay: the given arguments with the resolved
/// seed made explicit.
fn recorded_args(args: &[String], seed: u64) -> Vec<String> {
    let mut rec = args.to_vec();
    if !rec.iter().any(|a| a == "--seed" || a.starts_with("--seed=")) {
        rec.push("--seed".into());
        rec.push(seed.to_string());
    }
    rec
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer `{t}` in list")))
        })
        .collect()
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<Structure> {
    match parse_structure(&read_file(path)?)? {
        StructureFile::Hypergraph(g) => Ok(Structure::Hypergraph(g)),
        StructureFile::Equiv(e) => Ok(Structure::Equiv(e)),
        StructureFile::Vector(v) => Ok(Structure::Vector(v)),
        _ => Err(Error::InvalidArgument(format!(
            "{} is not a combinatorial structure file",
            path.display()
        ))),
    }
}

fn load_distribution(path: &Path) -> Result<OrderDistribution> {
    let v: Value = serde_json::from_str(&read_file(path)?)?;
    OrderDistribution::from_json(&v)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// What a command handler produces; `run` wires it into files and stdout.
struct HandlerOut {
    payload: String,
    summary: String,
    verdicts: Value,
    failed: bool,
    default_out: Option<PathBuf>,
}

/// Parses and executes one command line (program name excluded). `write`
/// gates filesystem output so replay can re-execute in memory.
pub fn run(args: &[String], write: bool) -> std::result::Result<RunOutcome, CliError> {
    let mut full: Vec<String> = vec!["ordlab".into()];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(&full).map_err(|e| CliError::Usage(Box::new(e)))?;

    let workers = cli.workers.or_else(|| {
        std::env::var("ORDLAB_WORKERS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
    });
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::InvalidArgument("--workers must be at least 1".into()).into());
        }
        // First builder wins within a process; results never depend on it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }

    let seed = cli.seed.unwrap_or_else(rand::random);
    let samples = cli.samples.unwrap_or(10_000);

    let h = match &cli.cmd {
        Cmd::Gen(g) => run_gen(g, seed)?,
        Cmd::Sample(a) => run_sample(a, samples, seed)?,
        Cmd::Check(a) => run_check(a, samples, seed)?,
        Cmd::Tv(a) => run_tv(a)?,
        Cmd::Exp(e) => run_exp(e, cli.format, seed)?,
        Cmd::Admissible(a) => run_admissible(a)?,
        Cmd::Replay(a) => run_replay(a)?,
    };

    let out_path = cli.out.clone().or(h.default_out);
    let provenance = out_path.as_ref().map(|p| {
        json!({
            "schema": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "command": recorded_args(args, seed),
            "seed": seed,
            "payload": {
                "path": p.display().to_string(),
                "bytes": h.payload.len(),
                "fnv1a64": format!("{:016x}", fnv1a64(h.payload.as_bytes())),
            },
            "verdicts": h.verdicts,
        })
    });
    if write {
        if let (Some(p), Some(prov)) = (&out_path, &provenance) {
            std::fs::write(p, &h.payload).map_err(Error::Io)?;
            std::fs::write(provenance_path(p), pretty(prov)).map_err(Error::Io)?;
        }
    }
    let stdout = match &out_path {
        Some(p) => format!("{}wrote {} (+ provenance)\n", h.summary, p.display()),
        None => h.payload.clone(),
    };
    Ok(RunOutcome {
        stdout,
        payload: h.payload,
        out_path,
        provenance,
        failed: h.failed,
    })
}

fn run_gen(cmd: &GenCmd, seed: u64) -> Result<HandlerOut> {
    match cmd {
        GenCmd::Random { n, r, p } => {
            let g = random_hypergraph(*n, *r, *p, seed)?;
            Ok(HandlerOut {
                payload: write_hypergraph(&g),
                summary: format!("random hypergraph: n={n} r={r} edges={}\n", g.edge_count()),
                verdicts: json!({ "edges": g.edge_count() }),
                failed: false,
                default_out: Some(PathBuf::from(format!("random-n{n}-r{r}-s{seed}.txt"))),
            })
        }
        GenCmd::Girth { n, r, g, a, connect } => {
            let params = GirthParams { n: *n, r: *r, g: *g, a: *a };
            let mut out = large_girth_hypergraph(params, seed)?;
            if *connect {
                out = make_connected(&out)?;
            }
            let ok = hypergraph_girth(&out, *g)?.at_least(*g);
            Ok(HandlerOut {
                payload: write_hypergraph(&out),
                summary: format!(
                    "girth hypergraph: n={} r={r} edges={} girth>={g} verified={ok}\n",
                    out.n(),
                    out.edge_count()
                ),
                verdicts: json!({
                    "edges": out.edge_count(),
                    "girth_at_least": g,
                    "girth_verified": ok,
                    "connected": out.is_connected(),
                }),
                failed: !ok,
                default_out: Some(PathBuf::from(format!("girth-n{n}-r{r}-g{g}-s{seed}.txt"))),
            })
        }
        GenCmd::Forb { pattern, n, g, a, forbid } => {
            let pat = parse_hypergraph(&read_file(pattern)?)?;
            let out = forb_construction(&pat, *n, *g, *a, seed)?;
            let mut f_verdicts = serde_json::Map::new();
            let mut all_free = true;
            for path in forbid {
                let f = parse_hypergraph(&read_file(path)?)?;
                let free = is_f_free(&out.graph, &[f])?;
                all_free &= free;
                f_verdicts.insert(path.display().to_string(), Value::Bool(free));
            }
            Ok(HandlerOut {
                payload: write_hypergraph(&out.graph),
                summary: format!(
                    "planted-pattern graph: n={} hyperedges={} restricted={}\n",
                    out.graph.n(),
                    out.hyperedges.len(),
                    out.restricted.len()
                ),
                verdicts: json!({
                    "hyperedges": out.hyperedges.len(),
                    "restricted": out.restricted.len(),
                    "f_free": Value::Object(f_verdicts),
                }),
                failed: !all_free,
                default_out: Some(PathBuf::from(format!("forb-n{n}-s{seed}.txt"))),
            })
        }
        GenCmd::Metric { input, n, a, exact } => {
            let text = read_file(input)?;
            let default_out = Some(PathBuf::from(format!("metric-n{n}-s{seed}.txt")));
            if *exact {
                let x = parse_metric_exact(&text)?;
                let out = metric_construction_with_a(&x, *n, *a, seed)?;
                let semigroup = distances_in_semigroup(&out.space, &x);
                Ok(HandlerOut {
                    payload: write_metric_exact(&out.space),
                    summary: format!(
                        "glued metric (exact): points={} hyperedges={} semigroup={semigroup}\n",
                        out.space.n(),
                        out.hypergraph.edge_count()
                    ),
                    verdicts: json!({
                        "hyperedges": out.hypergraph.edge_count(),
                        "restricted": out.restricted.len(),
                        "beta": render_rational(&out.beta),
                        "distances_in_semigroup": semigroup,
                    }),
                    failed: !semigroup,
                    default_out,
                })
            } else {
                let x = match parse_structure(&text)? {
                    StructureFile::Metric(m) => m,
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "{} is not a metric file",
                            input.display()
                        )))
                    }
                };
                let out = metric_construction_with_a(&x, *n, *a, seed)?;
                Ok(HandlerOut {
                    payload: write_metric_f64(&out.space),
                    summary: format!(
                        "glued metric: points={} hyperedges={}\n",
                        out.space.n(),
                        out.hypergraph.edge_count()
                    ),
                    verdicts: json!({
                        "hyperedges": out.hypergraph.edge_count(),
                        "restricted": out.restricted.len(),
                        "beta": out.beta,
                    }),
                    failed: false,
                    default_out,
                })
            }
        }
    }
}

fn run_sample(a: &SampleArgs, samples: usize, seed: u64) -> Result<HandlerOut> {
    let file = parse_structure(&read_file(&a.input)?)?;
    let dist = match (a.construction, file) {
        (Construction::Gauss, StructureFile::Hypergraph(g)) => {
            let d = a.d_cap.unwrap_or(g.max_degree().max(1));
            sample_empirical(g.n(), samples, seed, |rng| {
                sample_gaussian_ordering(&g, d, rng)
            })?
        }
        (Construction::HyperGauss, StructureFile::Hypergraph(g)) => {
            let d = a.d_cap.unwrap_or(g.max_degree().max(1));
            sample_empirical(g.n(), samples, seed, |rng| {
                sample_hypergraph_gaussian_ordering(&g, d, rng)
            })?
        }
        (Construction::Bipartite, StructureFile::Hypergraph(g)) => {
            sample_empirical(g.n(), samples, seed, |rng| {
                sample_bipartite_ordering(&g, rng)
            })?
        }
        (Construction::Projection, StructureFile::Points(pts)) => {
            sample_empirical(pts.len(), samples, seed, |rng| {
                sample_projection_ordering(&pts, rng)
            })?
        }
        (Construction::Projection, StructureFile::Metric(m)) => {
            let pts = embed_negative_type(&m, a.alpha)?;
            sample_empirical(pts.len(), samples, seed, |rng| {
                sample_projection_ordering(&pts, rng)
            })?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "construction does not apply to this structure file".into(),
            ))
        }
    };
    Ok(HandlerOut {
        payload: pretty(&dist.to_json()),
        summary: format!(
            "sampled {samples} orders over {} elements, {} distinct\n",
            dist.n(),
            dist.support().len()
        ),
        verdicts: json!({ "samples": samples, "distinct_orders": dist.support().len() }),
        failed: false,
        default_out: None,
    })
}

fn run_check(a: &CheckArgs, samples: usize, seed: u64) -> Result<HandlerOut> {
    let kind = a.kind.kind();
    let family = match a.family {
        FamilyArg::Uniform => OrderingFamily::uniform(a.nmax),
        FamilyArg::DegreeSorted => OrderingFamily::degree_sorted(a.nmax),
        FamilyArg::Gauss => {
            let r = a.kind.edge_arity().ok_or_else(|| {
                Error::InvalidArgument("gauss family is defined on graph/hypergraph kinds".into())
            })?;
            // Consistency needs one padding target D across all structures;
            // default to the largest degree possible at the checked sizes.
            let cap = a.nmax.min(5);
            let d = a.d_cap.unwrap_or_else(|| {
                let mut c: usize = 1;
                for i in 0..r - 1 {
                    c = c * (cap.saturating_sub(1 + i)) / (i + 1);
                }
                c.max(1)
            });
            OrderingFamily {
                name: format!("gauss-d{d}"),
                size_bound: a.nmax,
                law: FamilyLaw::Sampler(Box::new(move |s, seed, n| {
                    let Structure::Hypergraph(g) = s else {
                        return Err(Error::FamilyDomain {
                            family: "gauss".into(),
                            reason: "defined on hypergraphs only".into(),
                        });
                    };
                    sample_empirical(g.n(), n, seed, |rng| {
                        if g.r() == 2 {
                            sample_gaussian_ordering(g, d, rng)
                        } else {
                            sample_hypergraph_gaussian_ordering(g, d, rng)
                        }
                    })
                })),
            }
        }
    };
    let mode = match a.mode {
        ModeArg::Exact => CheckMode::Exact,
        ModeArg::Statistical => CheckMode::Statistical { samples, seed },
    };
    let report = check_consistency(&family, kind, a.nmax, mode)?;
    let passed = report.passed();
    let verdict = if passed { "PASS" } else { "FAIL" };
    Ok(HandlerOut {
        payload: pretty(&serde_json::to_value(&report)?),
        summary: format!(
            "consistency of {} on {:?} up to n={}: {verdict} ({} checks, {} violations)\n",
            report.family,
            a.kind,
            a.nmax,
            report.checks,
            report.violations.len()
        ),
        verdicts: json!({
            "passed": passed,
            "checks": report.checks,
            "violations": report.violations.len(),
        }),
        failed: !passed,
        default_out: None,
    })
}

fn run_tv(a: &TvArgs) -> Result<HandlerOut> {
    let da = load_distribution(&a.a)?;
    let db = load_distribution(&a.b)?;
    let tv_f64 = da.tv_distance_f64(&db)?;
    let rendered = if da.is_exact() && db.is_exact() {
        da.tv_distance(&db)?.to_string()
    } else {
        tv_f64.to_string()
    };
    let failed = a.threshold.is_some_and(|t| tv_f64 > t);
    Ok(HandlerOut {
        payload: format!("{rendered}\n"),
        summary: format!("tv = {rendered}\n"),
        verdicts: json!({ "tv": rendered, "threshold_exceeded": failed }),
        failed,
        default_out: None,
    })
}

fn run_exp(cmd: &ExpCmd, format: Format, seed: u64) -> Result<HandlerOut> {
    match cmd {
        ExpCmd::Capacity { n, k, r } => {
            let c = capacity(*n, *k, *r)?;
            Ok(HandlerOut {
                payload: format!("{c}\n"),
                summary: format!("capacity = {c}\n"),
                verdicts: json!({ "capacity": c.to_string() }),
                failed: false,
                default_out: None,
            })
        }
        ExpCmd::Deviation { pattern, host, mode, orders } => {
            let h = load_structure(pattern)?;
            let g = load_structure(host)?;
            let source = match mode {
                DevMode::Exact => OrdSource::Exact,
                DevMode::Sampled => OrdSource::Sampled { orders: *orders, seed },
                DevMode::Heuristics => OrdSource::Heuristics { orders: *orders, seed },
            };
            let p = deviation_profile(&h, &g, source)?;
            let body = json!({
                "k": p.k,
                "n_ind": p.n_ind,
                "orders_tested": p.orders_tested,
                "max_dev": p.max_dev.to_string(),
                "max_dev_f64": p.max_dev_f64(),
                "tv_bound": p.tv_bound.to_string(),
                "tv_bound_f64": p.tv_bound_f64(),
            });
            Ok(HandlerOut {
                payload: pretty(&body),
                summary: format!(
                    "max deviation {} over {} host orders, tv bound {}\n",
                    p.max_dev, p.orders_tested, p.tv_bound
                ),
                verdicts: body,
                failed: false,
                default_out: None,
            })
        }
        ExpCmd::Sweep { k, r, ns, seed_count, orders } => {
            let sizes = parse_usize_list(ns)?;
            let seeds: Vec<u64> = (0..*seed_count).map(|i| derive_indexed(seed, i)).collect();
            let report = concentration_sweep(*k, *r, &sizes, &seeds, *orders)?;
            let medians: Vec<Value> = report
                .medians
                .iter()
                .map(|(n, v)| json!([n, v]))
                .collect();
            let payload = match format {
                Format::Csv => sweep_csv(&report)?,
                Format::Json => pretty(&json!({
                    "k": report.k,
                    "r": report.r,
                    "orders": report.orders,
                    "medians": medians,
                    "cells": serde_json::to_value(&report.cells)?,
                })),
            };
            Ok(HandlerOut {
                payload,
                summary: format!(
                    "swept {} cells; median max_dev by n: {:?}\n",
                    report.cells.len(),
                    report.medians
                ),
                verdicts: json!({ "medians": medians }),
                failed: false,
                default_out: None,
            })
        }
        ExpCmd::Qop { sub, host, ord_sub, ord_host, inc, family } => {
            let a = load_structure(sub)?;
            let b = load_structure(host)?;
            let fam = family_for(family, &b)?;
            let prop = qop_proportion(
                &a,
                &parse_usize_list(ord_sub)?,
                &b,
                &parse_usize_list(ord_host)?,
                &parse_usize_list(inc)?,
                &fam,
                QopMode::Automorphisms,
            )?;
            Ok(HandlerOut {
                payload: format!("{prop}\n"),
                summary: format!("proportion = {prop}\n"),
                verdicts: json!({ "proportion": prop.to_string() }),
                failed: false,
                default_out: None,
            })
        }
        ExpCmd::Extension { k, m, n, pattern } => {
            let pat = match pattern {
                Some(s) => parse_usize_list(s)?,
                None if *k == 2 && *m == 1 => vec![0, 2, 1],
                None => {
                    return Err(Error::InvalidArgument(
                        "--pattern is required unless k=2 and m=1".into(),
                    ))
                }
            };
            let r = extension_lemma_ratio(*k, *m, &pat, *n)?;
            Ok(HandlerOut {
                payload: format!("{}\n", r.unconditional),
                summary: format!("{}\n", r.unconditional),
                verdicts: json!({
                    "unconditional": r.unconditional.to_string(),
                    "conditional": r.conditional.to_string(),
                    "event": r.event,
                    "extends_x": r.extends_x,
                    "total": r.total,
                }),
                failed: false,
                default_out: None,
            })
        }
    }
}

fn run_admissible(a: &AdmissibleArgs) -> Result<HandlerOut> {
    let s = load_structure(&a.input)?;
    let fam = family_for(&a.family, &s)?;
    let count = count_admissible(&s, &fam)?;
    let orders: Option<Vec<Value>> = if count <= 10_000 {
        Some(
            admissible_orders(&s, &fam)?
                .into_iter()
                .map(|p| serde_json::to_value(p).expect("usize lists serialize"))
                .collect(),
        )
    } else {
        None
    };
    let mut body = json!({
        "family": fam.kind_name(),
        "structure": s.label(),
        "count": count,
    });
    if let Some(o) = orders {
        body["orders"] = Value::Array(o);
    }
    Ok(HandlerOut {
        payload: pretty(&body),
        summary: format!("admissible orders: {count}\n"),
        verdicts: json!({ "count": count }),
        failed: false,
        default_out: None,
    })
}

fn run_replay(a: &ReplayArgs) -> Result<HandlerOut> {
    let v: Value = serde_json::from_str(&read_file(&a.provenance)?)?;
    let schema = v.get("schema").and_then(Value::as_u64);
    let version = v.get("version").and_then(Value::as_str);
    if schema != Some(u64::from(SCHEMA_VERSION)) || version != Some(env!("CARGO_PKG_VERSION")) {
        return Err(Error::InvalidArgument(format!(
            "provenance version mismatch: file has schema {schema:?} version {version:?}, \
             tool is schema {SCHEMA_VERSION} version {}",
            env!("CARGO_PKG_VERSION")
        )));
    }
    let stored: Vec<String> = v
        .get("command")
        .and_then(Value::as_array)
        .map(|arr| {
            arr.iter()
                .filter_map(Value::as_str)
                .map(String::from)
                .collect()
        })
        .ok_or_else(|| Error::InvalidArgument("provenance has no command list".into()))?;
    if stored.first().map(String::as_str) == Some("replay") {
        return Err(Error::InvalidArgument(
            "refusing to replay a replay command".into(),
        ));
    }
    let rerun = run(&stored, false).map_err(|e| match e {
        CliError::Usage(ce) => {
            Error::InvalidArgument(format!("recorded command no longer parses: {ce}"))
        }
        CliError::Run(err) => err,
    })?;
    let want_digest = v["payload"]["fnv1a64"].as_str().unwrap_or("");
    let want_bytes = v["payload"]["bytes"].as_u64().unwrap_or(u64::MAX);
    let got_digest = format!("{:016x}", fnv1a64(rerun.payload.as_bytes()));
    let digest_ok = got_digest == want_digest && rerun.payload.len() as u64 == want_bytes;
    // When the artifact file still exists, demand bitwise equality too.
    let file_ok = match v["payload"]["path"].as_str().map(std::fs::read) {
        Some(Ok(existing)) => existing == rerun.payload.as_bytes(),
        _ => true,
    };
    let ok = digest_ok && file_ok;
    let line = if ok {
        format!("replay OK: digest {got_digest} matches\n")
    } else {
        format!(
            "replay MISMATCH: digest {got_digest} vs recorded {want_digest}, \
             artifact file match: {file_ok}\n"
        )
    };
    Ok(HandlerOut {
        payload: line.clone(),
        summary: line,
        verdicts: json!({ "match": ok }),
        failed: !ok,
        default_out: None,
    })
}
