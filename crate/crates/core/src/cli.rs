//! The `bicover` command-line front end.
//!
//! Exit codes: 0 success, 1 a checked cover failed verification, 2 usage or
//! input error, 3 a freshly built cover failed verification (an internal bug),
//! 4 refusal because an exact routine's caps were exceeded.
//!
//! Thread count for parallel work comes from `BICOVER_THREADS`.

use crate::cover::{build_cover, merge_pass, verify_cover, BicliqueCover, CoverConfig, SideRule};
use crate::error::{Error, Result};
use crate::extremal::{
    alphas, check_decrement, check_dominance, check_scaling, e_func, envelope_sweep, exponent_fit, f_func,
    fstar_func, graph_exponents, loglog_fit, Envelope, ExponentFit, SweepKind,
};
use crate::generators::{gen_clone, gen_curve_restricted, gen_random, gen_st_grid, RandomFamily};
use crate::geometry::IncidenceInstance;
use crate::hypergraph::{
    build_hyper_cover, gen_hyper_collinear, gen_hyper_orientation, merge_hyper_pass, verify_hyper_cover, HyperConfig,
    HyperCover, KPartiteInstance,
};
use crate::io::{any_instance_from_json, hyper_instance_to_json, instance_to_json, AnyInstance};
use crate::oracle::{greedy_cover, min_cover_cost, SmallGraph, DEFAULT_EDGE_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUILD_BUG: i32 = 3;
pub const EXIT_REFUSED: i32 = 4;

pub const THREADS_ENV: &str = "BICOVER_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bicover", version, about = "Build and check complete-bipartite covers of incidence graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a cover of a bipartite instance.
    Build(BuildArgs),
    /// Check a cover against an instance (bipartite or hyper).
    Verify(VerifyArgs),
    /// Build covers over a size series and write CSV with a fit summary.
    Scan(ScanArgs),
    /// Exact minimum cover cost of a tiny instance.
    Oracle(OracleArgs),
    /// Build a cover of a k-partite instance.
    HyperBuild(HyperBuildArgs),
    /// Check a hyper cover against a k-partite instance.
    HyperVerify(VerifyArgs),
    /// Evaluate envelope functions and identity checks, or sweep them.
    Envelope(EnvelopeArgs),
    /// Write an instance from a generator.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Auto,
    P,
    Q,
    Regime,
}

impl From<SideArg> for SideRule {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Auto => SideRule::Auto,
            SideArg::P => SideRule::AlwaysP,
            SideArg::Q => SideRule::AlwaysQ,
            SideArg::Regime => SideRule::Regime,
        }
    }
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long)]
    input: PathBuf,
    /// Config as a JSON file path or an inline JSON object.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    r: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    base_threshold: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: Option<u64>,
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Run the merge pass on the built cover.
    #[arg(long)]
    merge: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    cover: PathBuf,
}

#[derive(Debug, Args)]
struct HyperBuildArgs {
    #[arg(long)]
    input: PathBuf,
    /// Config as a JSON file path or an inline JSON object.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    r: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    base_threshold: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: Option<u64>,
    #[arg(long)]
    merge: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    edge_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Generator families shared by `scan` and `generate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum FamilyArg {
    StGrid,
    CloneSt,
    Halfplanes,
    Lines,
    Disks,
    Curve,
    HyperOrient,
    HyperCollinear,
}

impl FamilyArg {
    pub fn name(self) -> &'static str {
        match self {
            FamilyArg::StGrid => "st-grid",
            FamilyArg::CloneSt => "clone-st",
            FamilyArg::Halfplanes => "halfplanes",
            FamilyArg::Lines => "lines",
            FamilyArg::Disks => "disks",
            FamilyArg::Curve => "curve",
            FamilyArg::HyperOrient => "hyper-orient",
            FamilyArg::HyperCollinear => "hyper-collinear",
        }
    }

    fn is_hyper(self) -> bool {
        matches!(self, FamilyArg::HyperOrient | FamilyArg::HyperCollinear)
    }

    /// Ambient dimensions used for the envelope column.
    fn default_dims(self) -> Vec<u32> {
        match self {
            FamilyArg::Disks => vec![2, 3],
            FamilyArg::Curve => vec![1, 2],
            FamilyArg::HyperOrient | FamilyArg::HyperCollinear => vec![2, 2, 2],
            _ => vec![2, 2],
        }
    }

    fn default_sizes(self) -> Vec<usize> {
        match self {
            FamilyArg::StGrid => (2..=8).collect(),
            FamilyArg::CloneSt => (2..=4).collect(),
            FamilyArg::HyperOrient | FamilyArg::HyperCollinear => vec![8, 16, 32],
            _ => vec![32, 64, 128, 256, 512],
        }
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Grid parameter `k`, or `m = n` for the random families.
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Clone factor for `clone-st`.
    #[arg(long, default_value_t = 2)]
    clone: usize,
    /// Planted triples for `hyper-collinear`.
    #[arg(long, default_value_t = 5)]
    planted: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Comma-separated sizes; each family has a default series.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per size, with seeds `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    r: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    base_threshold: Option<u64>,
    /// Keep the covers as built instead of merging them.
    #[arg(long)]
    no_merge: bool,
    #[arg(long, default_value_t = 2)]
    clone: usize,
    #[arg(long, default_value_t = 5)]
    planted: usize,
    /// Envelope dimension vector, comma-separated.
    #[arg(long, value_delimiter = ',')]
    d: Vec<u32>,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Scaling,
    Decrement,
    Dominance,
}

impl From<CheckArg> for SweepKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Scaling => SweepKind::Scaling,
            CheckArg::Decrement => SweepKind::Decrement,
            CheckArg::Dominance => SweepKind::Dominance,
        }
    }
}

#[derive(Debug, Args)]
struct EnvelopeArgs {
    /// Dimension vector, comma-separated.
    #[arg(long, value_delimiter = ',')]
    d: Vec<u32>,
    /// Sizes, comma-separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Run one identity check at `(d, n)`.
    #[arg(long, value_enum)]
    check: Option<CheckArg>,
    /// Scale for the scaling check.
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    /// Side to decrement for the decrement check.
    #[arg(long, default_value_t = 0)]
    i: usize,
    /// Sweep an identity over random samples and write CSV instead.
    #[arg(long, value_enum, conflicts_with = "check")]
    sweep: Option<CheckArg>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Refused(String),
    Failed,
    BuildBug(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Refused(_) => Failure::Refused(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let res = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a, false),
        Command::HyperVerify(a) => cmd_verify(a, true),
        Command::Scan(a) => cmd_scan(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::HyperBuild(a) => cmd_hyper_build(a),
        Command::Envelope(a) => cmd_envelope(a),
        Command::Generate(a) => cmd_generate(a),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(Failure::Failed) => EXIT_FAILED,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::BuildBug(m)) => {
            eprintln!("error: built cover failed verification: {m}");
            EXIT_BUILD_BUG
        }
        Err(Failure::Refused(m)) => {
            eprintln!("error: {m}");
            EXIT_REFUSED
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be positive"));
    }
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads a config given as a path or an inline JSON object.
fn config_text(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

fn graph_instance(path: &Path) -> Result<IncidenceInstance> {
    match any_instance_from_json(&read(path)?)? {
        AnyInstance::Graph(g) => Ok(g),
        AnyInstance::Hyper(_) => Err(Error::Invalid("this is a hyper instance; use hyper-build".into())),
    }
}

fn hyper_instance(path: &Path) -> Result<KPartiteInstance> {
    match any_instance_from_json(&read(path)?)? {
        AnyInstance::Hyper(h) => Ok(h),
        AnyInstance::Graph(_) => Err(Error::Invalid("this is a bipartite instance; use build".into())),
    }
}

fn cmd_build(a: BuildArgs) -> CmdResult {
    let inst = graph_instance(&a.input)?;
    let mut cfg = match &a.config {
        Some(c) => serde_json::from_str::<CoverConfig>(&config_text(c)?).map_err(Error::from)?,
        None => CoverConfig::default(),
    };
    if let Some(r) = a.r {
        cfg.r = r as usize;
    }
    if let Some(b) = a.base_threshold {
        cfg.base_threshold = b as usize;
    }
    if let Some(d) = a.max_depth {
        cfg.max_depth = d as usize;
    }
    if let Some(s) = a.side {
        cfg.side_rule = s.into();
    }
    let mut cover = build_cover(&inst, &cfg)?;
    if a.merge {
        cover = merge_pass(&cover);
    }
    let rep = verify_cover(&inst, &cover);
    if !rep.pass {
        return Err(Failure::BuildBug(rep.problems.join("; ")));
    }
    emit(&a.out, &cover.to_json())?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs, hyper_only: bool) -> CmdResult {
    let inst = any_instance_from_json(&read(&a.input)?)?;
    let text = read(&a.cover)?;
    let (pass, report) = match inst {
        AnyInstance::Graph(_) if hyper_only => {
            return Err(Failure::Usage("hyper-verify needs a hyper instance".into()));
        }
        AnyInstance::Graph(g) => {
            let rep = verify_cover(&g, &BicliqueCover::from_json(&text)?);
            (rep.pass, serde_json::to_string_pretty(&rep).map_err(Error::from)?)
        }
        AnyInstance::Hyper(h) => {
            let rep = verify_hyper_cover(&h, &HyperCover::from_json(&text)?)?;
            (rep.pass, serde_json::to_string_pretty(&rep).map_err(Error::from)?)
        }
    };
    emit(&None, &report)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn cmd_hyper_build(a: HyperBuildArgs) -> CmdResult {
    let inst = hyper_instance(&a.input)?;
    let mut cfg = match &a.config {
        Some(c) => serde_json::from_str::<HyperConfig>(&config_text(c)?).map_err(Error::from)?,
        None => HyperConfig::default(),
    };
    if let Some(r) = a.r {
        cfg.r = r as usize;
    }
    if let Some(b) = a.base_threshold {
        cfg.base_threshold = b as usize;
    }
    if let Some(d) = a.max_depth {
        cfg.max_depth = d as usize;
    }
    let mut cover = build_hyper_cover(&inst, &cfg)?;
    if a.merge {
        cover = merge_hyper_pass(&cover);
    }
    let rep = verify_hyper_cover(&inst, &cover)?;
    if !rep.pass {
        return Err(Failure::BuildBug(rep.problems.join("; ")));
    }
    emit(&a.out, &cover.to_json())?;
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let inst = graph_instance(&a.input)?;
    let g = SmallGraph::from_instance(&inst)?;
    let (cost, witness) = min_cover_cost(&g, a.edge_cap)?;
    let greedy = greedy_cover(&g)?;
    let witness: serde_json::Value = serde_json::from_str(&witness.to_json()).map_err(Error::from)?;
    let doc = json!({
        "schemaVersion": 1,
        "edgeCount": g.edge_count(),
        "minCostJ": cost,
        "greedyCostJ": greedy.cost_j,
        "witness": witness,
    });
    emit(&a.out, &serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    Ok(())
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let text = match generate(a.family, a.size, a.seed, a.clone, a.planted)? {
        AnyInstance::Graph(g) => instance_to_json(&g),
        AnyInstance::Hyper(h) => hyper_instance_to_json(&h),
    };
    emit(&a.out, &text)?;
    Ok(())
}

/// Instance of `family` at `size`; `size` is the grid parameter for the grid
/// families and `m = n` (or every part's size) otherwise.
pub fn generate(family: FamilyArg, size: usize, seed: u64, clone: usize, planted: usize) -> Result<AnyInstance> {
    let random = |f| gen_random(f, size, size, seed).map(AnyInstance::Graph);
    match family {
        FamilyArg::StGrid => gen_st_grid(size).map(AnyInstance::Graph),
        FamilyArg::CloneSt => gen_clone(&gen_st_grid(size)?, clone).map(AnyInstance::Graph),
        FamilyArg::Halfplanes => random(RandomFamily::Halfplanes),
        FamilyArg::Lines => random(RandomFamily::Lines),
        FamilyArg::Disks => random(RandomFamily::Disks),
        FamilyArg::Curve => gen_curve_restricted(size, size, seed).map(AnyInstance::Graph),
        FamilyArg::HyperOrient => gen_hyper_orientation(size, seed).map(AnyInstance::Hyper),
        FamilyArg::HyperCollinear => gen_hyper_collinear(size, planted, seed).map(AnyInstance::Hyper),
    }
}

/// Parameters of a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSpec {
    pub family: FamilyArg,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub reps: u64,
    pub cover: CoverConfig,
    pub hyper: HyperConfig,
    pub merge: bool,
    pub clone: usize,
    pub planted: usize,
    pub envelope: Envelope,
}

impl ScanSpec {
    /// Defaults for `family`: its standard size series, merging on, `eps = 0`.
    pub fn new(family: FamilyArg) -> Self {
        ScanSpec {
            family,
            sizes: family.default_sizes(),
            seed: 0,
            reps: 1,
            cover: CoverConfig::default(),
            hyper: HyperConfig::default(),
            merge: true,
            clone: 2,
            planted: 5,
            envelope: Envelope::new(family.default_dims(), 0.0).expect("valid default envelope"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub family: String,
    pub size: usize,
    /// Part sizes; `[m, n]` for bipartite instances.
    pub sizes: Vec<usize>,
    pub edges: usize,
    pub cost: u64,
    pub envelope: f64,
    pub ratio: f64,
    pub elapsed_ms: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    /// `Err` holds the reason a fit was not possible.
    pub fit: std::result::Result<ExponentFit, String>,
}

impl ScanOutput {
    /// CSV text: one row per instance, then `# fit` comment lines.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["family", "size", "m", "n", "edges", "costJ", "envelope", "ratio", "elapsed_ms", "seed"])
            .expect("in-memory write");
        for r in &self.rows {
            let n = r.sizes[1..].iter().map(usize::to_string).collect::<Vec<_>>().join(";");
            w.write_record([
                r.family.clone(),
                r.size.to_string(),
                r.sizes[0].to_string(),
                n,
                r.edges.to_string(),
                r.cost.to_string(),
                format!("{}", r.envelope),
                format!("{}", r.ratio),
                format!("{:.3}", r.elapsed_ms),
                r.seed.to_string(),
            ])
            .expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 csv");
        match &self.fit {
            Ok(f) => {
                out += &format!("# fit slope={} constant={}\n", f.slope, f.constant);
                let res: Vec<String> = f.residuals.iter().map(|x| format!("{x}")).collect();
                out += &format!("# fit residuals={}\n", res.join(";"));
            }
            Err(why) => out += &format!("# fit unavailable: {why}\n"),
        }
        out
    }
}

/// Builds, merges and verifies a cover per series point, in parallel; rows come
/// back in series order. A cover failing verification is an error.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanOutput> {
    spec.cover.validate()?;
    spec.hyper.validate()?;
    let points: Vec<(usize, u64)> =
        spec.sizes.iter().flat_map(|&s| (0..spec.reps).map(move |i| (s, spec.seed + i))).collect();
    let rows = points
        .par_iter()
        .map(|&(size, seed)| scan_row(spec, size, seed))
        .collect::<Result<Vec<ScanRow>>>()?;
    let fit = scan_fit(spec, &rows);
    Ok(ScanOutput { rows, fit })
}

fn scan_row(spec: &ScanSpec, size: usize, seed: u64) -> Result<ScanRow> {
    let inst = generate(spec.family, size, seed, spec.clone, spec.planted)?;
    let start = Instant::now();
    let (sizes, edges, cost) = match &inst {
        AnyInstance::Graph(g) => {
            let mut c = build_cover(g, &spec.cover)?;
            if spec.merge {
                c = merge_pass(&c);
            }
            let rep = verify_cover(g, &c);
            if !rep.pass {
                return Err(Error::Contract(format!("cover failed verification: {}", rep.problems.join("; "))));
            }
            (vec![g.m, g.n], rep.edge_count, c.cost_j)
        }
        AnyInstance::Hyper(h) => {
            let mut c = build_hyper_cover(h, &spec.hyper)?;
            if spec.merge {
                c = merge_hyper_pass(&c);
            }
            let rep = verify_hyper_cover(h, &c)?;
            if !rep.pass {
                return Err(Error::Contract(format!("hyper cover failed verification: {}", rep.problems.join("; "))));
            }
            (h.sizes.clone(), rep.edge_count, c.cost)
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let envelope = envelope_value(&spec.envelope, &sizes)?;
    Ok(ScanRow {
        family: spec.family.name().to_string(),
        size,
        sizes,
        edges,
        cost,
        envelope,
        ratio: cost as f64 / envelope,
        elapsed_ms,
        seed,
    })
}

/// Two-sided bound for bipartite instances, `F*` otherwise.
fn envelope_value(env: &Envelope, sizes: &[usize]) -> Result<f64> {
    if env.d_vec.len() != sizes.len() {
        return Err(Error::invalid(format!(
            "envelope has {} dimensions but the instance has {} parts",
            env.d_vec.len(),
            sizes.len()
        )));
    }
    let n: Vec<f64> = sizes.iter().map(|&s| (s as f64).max(1.0)).collect();
    if n.len() == 2 {
        env.graph_value(n[0], n[1])
    } else {
        env.fstar_value(&n)
    }
}

fn scan_fit(spec: &ScanSpec, rows: &[ScanRow]) -> std::result::Result<ExponentFit, String> {
    let fit = if spec.envelope.d_vec.len() == 2 && !spec.family.is_hyper() {
        let series: Vec<(f64, f64, f64)> =
            rows.iter().map(|r| (r.sizes[0] as f64, r.sizes[1] as f64, r.cost as f64)).collect();
        exponent_fit(&series, &spec.envelope)
    } else {
        let env: Vec<f64> = rows.iter().map(|r| r.envelope).collect();
        let cost: Vec<f64> = rows.iter().map(|r| r.cost as f64).collect();
        loglog_fit(&env, &cost)
    };
    fit.map_err(|e| e.to_string())
}

fn cmd_scan(a: ScanArgs) -> CmdResult {
    let mut spec = ScanSpec::new(a.family);
    if !a.sizes.is_empty() {
        spec.sizes = a.sizes;
    }
    spec.seed = a.seed;
    spec.reps = a.reps;
    if let Some(r) = a.r {
        spec.cover.r = r as usize;
        spec.hyper.r = r as usize;
    }
    if let Some(b) = a.base_threshold {
        spec.cover.base_threshold = b as usize;
        spec.hyper.base_threshold = b as usize;
    }
    spec.merge = !a.no_merge;
    spec.clone = a.clone;
    spec.planted = a.planted;
    let d = if a.d.is_empty() { a.family.default_dims() } else { a.d };
    spec.envelope = Envelope::new(d, a.eps)?;
    let out = run_scan(&spec).map_err(|e| match e {
        Error::Contract(m) => Failure::BuildBug(m),
        e => e.into(),
    })?;
    emit(&a.out, &out.to_csv())?;
    Ok(())
}

fn cmd_envelope(a: EnvelopeArgs) -> CmdResult {
    if let Some(kind) = a.sweep {
        let rows = envelope_sweep(kind.into(), a.samples, a.eps, a.seed)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let join = |v: Vec<String>| v.join(";");
        w.write_record(["kind", "k", "dVec", "nVec", "eps", "value", "residual", "flag"]).expect("in-memory write");
        for r in rows {
            w.write_record([
                SweepKind::from(kind).name().to_string(),
                r.k.to_string(),
                join(r.d_vec.iter().map(u32::to_string).collect()),
                join(r.n_vec.iter().map(f64::to_string).collect()),
                r.eps.to_string(),
                r.value.map(|v| v.to_string()).unwrap_or_default(),
                r.residual.map(|v| v.to_string()).unwrap_or_default(),
                r.flag,
            ])
            .expect("in-memory write");
        }
        let text = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 csv");
        emit(&a.out, &text)?;
        return Ok(());
    }
    if a.d.is_empty() || a.n.is_empty() {
        return Err(Failure::Usage("envelope needs --d and --n (or --sweep)".into()));
    }
    let (d, n) = (&a.d, &a.n);
    let mut doc = json!({
        "dVec": d,
        "nVec": n,
        "eps": a.eps,
        "alphas": alphas(d)?,
        "E": e_func(d, n)?,
        "F": f_func(d, n, a.eps)?,
        "Fstar": fstar_func(d, n, a.eps)?,
    });
    if d.len() == 2 {
        let (a1, a2) = graph_exponents(d[0], d[1])?;
        doc["graphExponents"] = json!([a1, a2]);
        doc["graphEnvelope"] = json!(Envelope::new(d.clone(), a.eps)?.graph_value(n[0], n[1])?);
    }
    let to_value = |v: std::result::Result<serde_json::Value, serde_json::Error>| v.map_err(Error::from);
    match a.check {
        Some(CheckArg::Scaling) => doc["scaling"] = to_value(serde_json::to_value(check_scaling(d, a.r, n)?))?,
        Some(CheckArg::Decrement) => {
            doc["decrement"] = to_value(serde_json::to_value(check_decrement(d, a.i, n, a.eps)?))?
        }
        Some(CheckArg::Dominance) => doc["dominance"] = to_value(serde_json::to_value(check_dominance(d, n, a.eps)?))?,
        None => {}
    }
    emit(&a.out, &serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    Ok(())
}
