//! Subcommand definitions and their drivers.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use frix_index::{BuildParams, MultilevelIndex};
use frix_lbgen::{
    build_construction, build_continuous_instance, build_discrete_instance, rng, slab_id, verify_construction,
    Construction, InstanceSpec, Mode,
};

use crate::engine::{self, BenchConfig, BenchKind, Dataset, Kind};
use crate::error::{invalid, CliError};
use crate::io::{self, Manifest};

#[derive(Debug, Parser)]
#[command(name = "frix", version, about = "Frechet range searching: indexes, oracles, benchmarks and hard instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a hard instance or a random curve dataset.
    Gen(GenArgs),
    /// Build an index over a curve file.
    Build(BuildArgs),
    /// Answer range queries against a built index.
    Query(QueryArgs),
    /// Answer queries by brute force.
    Oracle(OracleArgs),
    /// Time index build and queries over growing n.
    Bench(BenchArgs),
    /// Regenerate an instance directory and check its structural properties.
    VerifyLb(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenMode {
    Slabs,
    DiscreteLenses,
    ContinuousZigzag,
    /// Uniform random vertices in the unit square.
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "slabs")]
    pub mode: GenMode,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 16)]
    pub r: u64,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long = "R", default_value_t = 4.0)]
    pub big_r: f64,
    #[arg(long, default_value_t = 4)]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Random mode: number of query curves to write.
    #[arg(long, default_value_t = 0)]
    pub queries: usize,
    /// Random mode: vertices per query curve.
    #[arg(long, default_value_t = 2)]
    pub tq: usize,
    /// Also measure coverage and volume constants into the manifest.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Kind,
    /// Radius, fixed at build time for continuous indexes.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 32)]
    pub leaf_cap: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub index: PathBuf,
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Results file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print per-query counters to stderr.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Kind,
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "halfplane")]
    pub kind: BenchKind,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 10)]
    pub log_n_min: u32,
    #[arg(long, default_value_t = 16)]
    pub log_n_max: u32,
    #[arg(long, default_value_t = 100)]
    pub queries: usize,
    #[arg(long, default_value_t = 2)]
    pub tq: usize,
    #[arg(long, default_value_t = 0.1)]
    pub rho: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Build(a) => build(&a),
        Command::Query(a) => query(&a),
        Command::Oracle(a) => oracle(&a),
        Command::Bench(a) => bench(&a),
        Command::VerifyLb(a) => verify_lb(&a),
    }
}

const VERIFY_SEED_OFFSET: u64 = rng::VERIFY;

fn instance_spec(a: &GenArgs, mode: Mode) -> InstanceSpec {
    InstanceSpec { tau: a.tau, eps: a.eps, mode, ..InstanceSpec::new(a.n, a.r, a.t, a.big_r, a.l, a.seed) }
}

fn slabs_text(c: &Construction) -> String {
    let mut s = String::from("# id family color theta_1 c1_1 c2_1 ... theta_t c1_t c2_t\n");
    for ts in c.slabs() {
        let color: Vec<String> = ts.color.iter().map(u32::to_string).collect();
        let _ = write!(s, "{} {} {}", slab_id(ts.family, &ts.copy), ts.family, color.join(","));
        for p in &ts.slabs {
            let _ = write!(s, " {} {} {}", p.theta, p.c1, p.c2);
        }
        s.push('\n');
    }
    s
}

/// Files of a generated instance, in write order, plus the manifest.
pub struct Generated {
    pub files: Vec<(&'static str, String)>,
    pub manifest: Manifest,
    construction: Option<Construction>,
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Deterministic instance generation shared by `gen` and `verify-lb`.
pub fn generate(a: &GenArgs) -> Result<Generated, CliError> {
    let opt = |v: Option<f64>| v.map_or("auto".to_string(), |x| x.to_string());
    let mode_name = a.mode.to_possible_value().expect("no skipped variants");
    let mut manifest = vec![kv("gen_mode", mode_name.get_name())];
    let (files, construction) = match a.mode {
        GenMode::Random => {
            if a.n == 0 || a.t == 0 || a.tq == 0 {
                return Err(invalid("random datasets need n, t and tq of at least 1"));
            }
            let mut g = rng::stream(a.seed, rng::USER);
            let data = engine::random_curves(&mut g, a.n as usize, a.t, "s");
            let qs = engine::random_curves(&mut g, a.queries, a.tq, "q");
            manifest.extend([
                kv("n", a.n),
                kv("t", a.t),
                kv("queries", a.queries),
                kv("tq", a.tq),
                kv("seed", a.seed),
            ]);
            (vec![("curves.txt", io::format_curves(&data)), ("queries.txt", io::format_curves(&qs))], None)
        }
        GenMode::Slabs => {
            let c = build_construction(&instance_spec(a, Mode::Slabs))?;
            (vec![("slabs.txt", slabs_text(&c))], Some(c))
        }
        GenMode::DiscreteLenses => {
            let inst = build_discrete_instance(&instance_spec(a, Mode::DiscreteLenses))?;
            manifest.extend([kv("rho", inst.rho), kv("lens_eps", format!("{:e}", inst.eps))]);
            (vec![("curves.txt", io::format_curves(&inst.curves))], Some(inst.construction))
        }
        GenMode::ContinuousZigzag => {
            let inst = build_continuous_instance(&instance_spec(a, Mode::ContinuousZigzag))?;
            manifest.extend([kv("rho", inst.rho), kv("curves", inst.curves.len())]);
            (vec![("curves.txt", io::format_curves(&inst.curves))], Some(inst.construction))
        }
    };
    if let Some(c) = &construction {
        manifest.extend([kv("tau_arg", opt(a.tau)), kv("eps_arg", opt(a.eps))]);
        manifest.extend(c.manifest());
        if a.verify {
            let rep = verify_construction(c, 10_000, 100, a.seed.wrapping_add(VERIFY_SEED_OFFSET))?;
            manifest.extend(rep.lines());
        }
    }
    Ok(Generated { files, manifest, construction })
}

fn gen(a: &GenArgs) -> Result<(), CliError> {
    let g = generate(a)?;
    for (name, text) in &g.files {
        io::write_file(&a.out.join(name), text)?;
    }
    io::write_file(&a.out.join("manifest.txt"), io::format_manifest(&g.manifest))?;
    Ok(())
}

fn build(a: &BuildArgs) -> Result<(), CliError> {
    let curves = io::read_curves(&a.data)?;
    if curves.is_empty() {
        return Err(invalid(format!("{}: no curves", a.data.display())));
    }
    let ds = Dataset::new(curves);
    let params = BuildParams { eps: a.eps, leaf_cap: a.leaf_cap, ..BuildParams::default() };
    let (index, mut manifest) = engine::build_index(&ds, a.mode, a.rho, params)?;
    manifest.insert(0, kv("data", a.data.display()));
    io::write_file(&a.out, index.to_bytes())?;
    io::write_file(&sidecar(&a.out), io::format_manifest(&manifest))?;
    Ok(())
}

pub fn sidecar(index: &Path) -> PathBuf {
    let mut s = index.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

pub fn load_index(path: &Path) -> Result<MultilevelIndex, CliError> {
    let bytes = fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(MultilevelIndex::from_bytes(&bytes)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => io::write_file(p, text),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn query(a: &QueryArgs) -> Result<(), CliError> {
    let index = load_index(&a.index)?;
    let queries = io::read_curves(&a.queries)?;
    let answers = engine::run_queries(&index, &queries, a.rho)?;
    if a.stats {
        for (rec, tm) in &answers {
            eprintln!(
                "{} k={} canonical_sets={} visited={} plan_ms={:.4} search_ms={:.4} report_ms={:.4}",
                rec.qid,
                rec.ids.len(),
                tm.canonical_sets,
                tm.visited,
                tm.plan_ms,
                tm.search_ms,
                tm.report_ms
            );
        }
    }
    let recs: Vec<_> = answers.into_iter().map(|(r, _)| r).collect();
    emit(a.out.as_deref(), &io::format_results(&recs))
}

fn oracle(a: &OracleArgs) -> Result<(), CliError> {
    if !(a.rho >= 0.0 && a.rho.is_finite()) {
        return Err(invalid(format!("radius must be non-negative, got {}", a.rho)));
    }
    let curves = io::read_curves(&a.data)?;
    let queries = io::read_curves(&a.queries)?;
    let recs = engine::oracle(&curves, &queries, a.mode, a.rho);
    emit(a.out.as_deref(), &io::format_results(&recs))
}

fn bench(a: &BenchArgs) -> Result<(), CliError> {
    if a.log_n_min > a.log_n_max || a.log_n_max > 24 {
        return Err(invalid("need log-n-min <= log-n-max <= 24"));
    }
    if a.t == 0 {
        return Err(invalid("t must be at least 1"));
    }
    let cfg = BenchConfig {
        kind: a.kind,
        t: a.t,
        log_n: a.log_n_min..=a.log_n_max,
        queries: a.queries,
        tq: a.tq,
        rho: a.rho,
        seed: a.seed,
        params: BuildParams::default(),
    };
    let rows = engine::run_bench(&cfg)?;
    emit(a.out.as_deref(), &engine::bench_csv(&rows))?;
    if rows.len() >= 2 {
        let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.canonical_sets.max(1.0)).collect();
        eprintln!("canonical_sets loglog slope = {:.3}", engine::loglog_slope(&xs, &ys));
    }
    Ok(())
}

fn gen_args_from_manifest(m: &Manifest, dir: &Path) -> Result<GenArgs, CliError> {
    let name = io::manifest_get(m, "gen_mode").ok_or_else(|| invalid("manifest lacks gen_mode"))?;
    let mode = match GenMode::from_str(name, false) {
        Ok(GenMode::Random) => return Err(invalid("random datasets carry no structure to verify")),
        Ok(mode) => mode,
        Err(_) => return Err(invalid(format!("manifest gen_mode {name:?} is not a generated instance"))),
    };
    let opt = |k: &str| -> Result<Option<f64>, CliError> {
        match io::manifest_get(m, k) {
            None | Some("auto") => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| invalid(format!("manifest {k}={v} does not parse"))),
        }
    };
    Ok(GenArgs {
        mode,
        n: io::manifest_parse(m, "n")?,
        r: io::manifest_parse(m, "r")?,
        t: io::manifest_parse(m, "t")?,
        big_r: io::manifest_parse(m, "R")?,
        l: io::manifest_parse(m, "l")?,
        seed: io::manifest_parse(m, "seed")?,
        tau: opt("tau_arg")?,
        eps: opt("eps_arg")?,
        queries: 0,
        tq: 2,
        verify: io::manifest_get(m, "verify_samples").is_some(),
        out: dir.to_path_buf(),
    })
}

fn verify_lb(a: &VerifyArgs) -> Result<(), CliError> {
    let m = io::read_manifest(&a.dir.join("manifest.txt"))?;
    let args = gen_args_from_manifest(&m, &a.dir)?;
    let regen = generate(&args)?;
    let mut problems = Vec::new();
    let mut report = String::new();
    for (name, text) in &regen.files {
        let on_disk = fs::read_to_string(a.dir.join(name)).map_err(|e| invalid(format!("{name}: {e}")))?;
        let same = on_disk == *text;
        let _ = writeln!(report, "{name}={}", if same { "reproduced" } else { "differs" });
        if !same {
            problems.push(format!("{name} differs from a fresh generation"));
        }
    }
    let c = regen.construction.as_ref().expect("structured modes carry a construction");
    let rep = verify_construction(c, a.samples, a.pairs, args.seed.wrapping_add(VERIFY_SEED_OFFSET))?;
    for (k, v) in c.manifest().iter().chain(rep.lines().iter()) {
        let _ = writeln!(report, "{k}={v}");
    }
    emit(None, &report)?;
    if !rep.coverage_exact() {
        problems.push("coverage is not exactly one tile per family".into());
    }
    if !(rep.volume_constant <= 64.0) {
        problems.push(format!("volume constant {} exceeds 64", rep.volume_constant));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Internal(problems.join("; ")))
    }
}
