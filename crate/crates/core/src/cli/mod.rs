//! Command-line front end.
//!
//! Every command merges three layers of settings: built-in defaults, the
//! file given with `--config`, then explicit flags. The merged result is
//! written as `run.conf` into the output directory, and
//! `croute --config <dir>/run.conf` replays the run.
//!
//! Exit codes: 0 success, 1 usage, 2 bad input or configuration, 3 violated
//! internal guarantee (routing loop, stretch above 3 for Cowen or TZ).

pub mod config;

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::eval::{self, report, SchemeEvaluation, SweepConfig};
use crate::graph::{degree_ccdf_slope, stats, Graph};
use crate::rng::subseed;
use crate::schemes::{build_scheme, SchemeKind, SchemeParams};
use crate::topology::{self, GenConfig, Model};
use config::{ConfigError, Settings};

pub const DEFAULT_PAIR_BUDGET: u64 = 100_000;
pub const DEFAULT_OUT: &str = "out";

#[derive(Debug, Parser)]
#[command(name = "croute", version, about = "Compact routing experiments on AS-level and synthetic graphs")]
pub struct Cli {
    /// Master seed; every stage derives its own seed from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Pair budget for distance and stretch measurements.
    #[arg(long = "pair-budget", global = true)]
    pair_budget: Option<u64>,
    /// Suppress the summary on standard output.
    #[arg(long, global = true)]
    quiet: bool,
    /// Flat `key = value` settings file; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic scale-free graph.
    Gen(GenArgs),
    /// Sanitize an AS-relationship file into its giant component.
    Ingest {
        input: Option<PathBuf>,
    },
    /// Build one scheme on a graph and measure it.
    Eval {
        input: Option<PathBuf>,
        #[arg(long)]
        scheme: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        /// Also write the routing tables and labels as JSON.
        #[arg(long)]
        artifacts: bool,
    },
    /// Measure schemes over a range of generated graph sizes.
    Sweep {
        #[command(flatten)]
        gen: GenArgs,
        /// Comma-separated node counts, ascending.
        #[arg(long)]
        sizes: Option<String>,
        /// Comma-separated scheme names.
        #[arg(long)]
        schemes: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Evaluate several schemes on one graph side by side.
    Compare {
        input: Option<PathBuf>,
        #[arg(long)]
        schemes: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// preferential or powerlaw-config
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "m-attach")]
    m_attach: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// TZ landmark target (default ceil(sqrt(n))).
    #[arg(long)]
    s: Option<usize>,
    /// TZ cluster cap factor.
    #[arg(long)]
    cap: Option<f64>,
    /// Cowen ball exponent.
    #[arg(long)]
    alpha: Option<f64>,
    /// Hierarchical cluster count (default ceil(sqrt(n))).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Run(e) if e.is_internal_assertion() => 3,
            CliError::Run(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn flag_layer(cli: &Cli) -> Settings {
    let mut s = Settings::default();
    s.set_opt("seed", cli.seed);
    s.set_opt("out", cli.out.as_ref().map(|p| p.display()));
    s.set_opt("pair_budget", cli.pair_budget);
    if cli.quiet {
        s.set("quiet", true);
    }
    let gen = |s: &mut Settings, g: &GenArgs| {
        s.set_opt("model", g.model.as_ref());
        s.set_opt("n", g.n);
        s.set_opt("m_attach", g.m_attach);
        s.set_opt("gamma", g.gamma);
    };
    let params = |s: &mut Settings, p: &ParamArgs| {
        s.set_opt("s", p.s);
        s.set_opt("cap", p.cap);
        s.set_opt("alpha", p.alpha);
        s.set_opt("k", p.k);
    };
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    match &cli.command {
        None => {}
        Some(Command::Gen(g)) => {
            s.set("command", "gen");
            gen(&mut s, g);
        }
        Some(Command::Ingest { input }) => {
            s.set("command", "ingest");
            s.set_opt("input", path(input));
        }
        Some(Command::Eval {
            input,
            scheme,
            params: p,
            artifacts,
        }) => {
            s.set("command", "eval");
            s.set_opt("input", path(input));
            s.set_opt("scheme", scheme.as_ref());
            params(&mut s, p);
            if *artifacts {
                s.set("artifacts", true);
            }
        }
        Some(Command::Sweep {
            gen: g,
            sizes,
            schemes,
            params: p,
        }) => {
            s.set("command", "sweep");
            gen(&mut s, g);
            s.set_opt("sizes", sizes.as_ref());
            s.set_opt("schemes", schemes.as_ref());
            params(&mut s, p);
        }
        Some(Command::Compare {
            input,
            schemes,
            params: p,
        }) => {
            s.set("command", "compare");
            s.set_opt("input", path(input));
            s.set_opt("schemes", schemes.as_ref());
            params(&mut s, p);
        }
    }
    s
}

fn merged_settings(cli: &Cli) -> CliResult<Settings> {
    let flags = flag_layer(cli);
    let mut merged = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::io(format!("reading config {}", path.display()), e))?;
            Settings::parse(&text)?
        }
        None => Settings::default(),
    };
    if let (Some(file_cmd), Some(flag_cmd)) = (merged.raw("command"), flags.raw("command")) {
        if file_cmd != flag_cmd {
            return Err(CliError::Usage(format!(
                "config is for `{file_cmd}`, command line asks for `{flag_cmd}`"
            )));
        }
    }
    merged.overlay(&flags);
    Ok(merged)
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let mut s = merged_settings(&cli)?;
    let command: String = s
        .require("command")
        .map_err(|_| CliError::Usage("no command given (gen, ingest, eval, sweep, compare)".into()))?;
    let seed: u64 = s.get("seed")?.unwrap_or(0);
    let pair_budget: u64 = s.get("pair_budget")?.unwrap_or(DEFAULT_PAIR_BUDGET);
    let out: PathBuf = s.get("out")?.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    s.set("seed", seed);
    s.set("pair_budget", pair_budget);
    s.set("out", out.display());
    let quiet = s.flag_set("quiet")?;
    let mut sink: Box<dyn Write> = if quiet {
        Box::new(std::io::sink())
    } else {
        Box::new(stdout)
    };
    let w = sink.as_mut();
    fs::create_dir_all(&out).map_err(|e| Error::io(format!("creating {}", out.display()), e))?;
    let keys: &[&str] = match command.as_str() {
        "gen" => {
            cmd_gen(&mut s, &out, w)?;
            &["command", "seed", "out", "quiet", "model", "n", "m_attach", "gamma"]
        }
        "ingest" => {
            cmd_ingest(&s, &out, w)?;
            &["command", "seed", "out", "pair_budget", "quiet", "input"]
        }
        "eval" => {
            cmd_eval(&mut s, &out, w)?;
            &[
                "command", "seed", "out", "pair_budget", "quiet", "input", "scheme", "s", "cap", "alpha", "k",
                "artifacts",
            ]
        }
        "sweep" => {
            cmd_sweep(&mut s, &out, w)?;
            &[
                "command", "seed", "out", "pair_budget", "quiet", "model", "m_attach", "gamma", "sizes", "schemes",
                "s", "cap", "alpha", "k",
            ]
        }
        "compare" => {
            cmd_compare(&mut s, &out, w)?;
            &[
                "command", "seed", "out", "pair_budget", "quiet", "input", "schemes", "s", "cap", "alpha", "k",
            ]
        }
        other => return Err(CliError::Usage(format!("unknown command {other:?}"))),
    };
    let path = out.join("run.conf");
    fs::write(&path, s.restricted(keys).render())
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
    Ok(())
}

fn say(w: &mut dyn Write, line: String) -> CliResult<()> {
    writeln!(w, "{line}").map_err(|e| Error::io("writing to stdout", e).into())
}

fn gen_config(s: &mut Settings, n: usize, seed: u64) -> CliResult<GenConfig> {
    let model: Model = s
        .get::<String>("model")?
        .unwrap_or_else(|| "preferential".into())
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    s.set("model", model.name());
    let cfg = match model {
        Model::Preferential => {
            let m: usize = s.get("m_attach")?.unwrap_or(2);
            s.set("m_attach", m);
            GenConfig::preferential(n, m, seed)
        }
        Model::PowerlawConfig => {
            let gamma: f64 = s.get("gamma")?.unwrap_or(2.1);
            s.set("gamma", gamma);
            GenConfig::powerlaw(n, gamma, seed)
        }
    };
    Ok(cfg)
}

fn scheme_params(s: &mut Settings) -> CliResult<SchemeParams> {
    let d = SchemeParams::default();
    let p = SchemeParams {
        s: s.get("s")?,
        cap: s.get("cap")?.unwrap_or(d.cap),
        alpha: s.get("alpha")?.unwrap_or(d.alpha),
        k: s.get("k")?,
    };
    s.set("cap", p.cap);
    s.set("alpha", p.alpha);
    Ok(p)
}

fn write_edges(g: &Graph, path: &Path) -> CliResult<()> {
    let mut buf = Vec::new();
    topology::write_edge_list(g, &mut buf).map_err(|e| Error::io("formatting edge list", e))?;
    fs::write(path, buf).map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
    Ok(())
}

fn cmd_gen(s: &mut Settings, out: &Path, w: &mut dyn Write) -> CliResult<()> {
    let n: usize = s.require("n")?;
    let seed: u64 = s.require("seed")?;
    let cfg = gen_config(s, n, subseed(seed, "gen"))?;
    let g = topology::generate(&cfg)?;
    write_edges(&g, &out.join("graph.edges"))?;
    let slope = degree_ccdf_slope(&g).map(|x| x.to_string()).unwrap_or_else(|_| "nan".into());
    say(w, format!("n = {}", g.node_count()))?;
    say(w, format!("m = {}", g.edge_count()))?;
    say(w, format!("ccdf_slope = {slope}"))
}

fn cmd_ingest(s: &Settings, out: &Path, w: &mut dyn Write) -> CliResult<()> {
    let input: PathBuf = s.require("input")?;
    let file = fs::File::open(&input).map_err(|e| Error::io(format!("opening {}", input.display()), e))?;
    let records = topology::parse_asrel_reader(BufReader::new(file))?;
    let g = topology::asrel_to_graph(&records)?;
    write_edges(&g, &out.join("graph.edges"))?;
    let seed: u64 = s.require("seed")?;
    let budget: u64 = s.require("pair_budget")?;
    let st = stats(&g, budget, subseed(seed, "stats"))?;
    report::write_json(&out.join("stats.json"), &st)?;
    say(w, format!("records = {}", records.len()))?;
    say(w, format!("n = {}", st.n))?;
    say(w, format!("m = {}", st.m))?;
    say(w, format!("avg_degree = {}", st.avg_degree))?;
    say(w, format!("max_degree = {}", st.max_degree))?;
    say(w, format!("pairs = {} ({})", st.pair_count, st.pair_mode.label()))?;
    say(w, format!("avg_distance = {}", st.avg_distance))?;
    say(w, format!("pct_2_to_4 = {}", st.pct_2_to_4))?;
    say(w, format!("clustering = {}", st.clustering))
}

fn load_graph(s: &Settings) -> CliResult<Graph> {
    let input: PathBuf = s.require("input")?;
    Ok(topology::read_edge_list(&input)?)
}

fn parse_kind(name: &str) -> CliResult<SchemeKind> {
    name.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn parse_kinds(s: &Settings, default: &[SchemeKind]) -> CliResult<Vec<SchemeKind>> {
    match s.list::<String>("schemes")? {
        None => Ok(default.to_vec()),
        Some(names) if names.is_empty() => Err(CliError::Usage("empty --schemes".into())),
        Some(names) => names.iter().map(|x| parse_kind(x)).collect(),
    }
}

fn join_kinds(kinds: &[SchemeKind]) -> String {
    kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(",")
}

fn evaluate_kind(
    g: &Graph,
    kind: SchemeKind,
    params: &SchemeParams,
    seed: u64,
    budget: u64,
) -> CliResult<(crate::schemes::SchemeArtifacts, SchemeEvaluation)> {
    let art = build_scheme(g, kind, params, subseed(seed, &format!("build/{kind}")))?;
    let ev = eval::evaluate(&art, g, budget, subseed(seed, "pairs"))?;
    Ok((art, ev))
}

fn write_evaluations(out: &Path, evs: &[SchemeEvaluation]) -> CliResult<()> {
    let stretch: Vec<_> = evs.iter().map(|e| e.stretch.clone()).collect();
    let tables: Vec<_> = evs.iter().map(|e| e.tables.clone()).collect();
    let reins: Vec<_> = evs.iter().map(|e| e.reinsertion.clone()).collect();
    report::write_csv_file(&out.join("stretch.csv"), |b| report::write_stretch_csv(b, &stretch))?;
    report::write_json(&out.join("stretch.json"), &stretch)?;
    report::write_csv_file(&out.join("tables.csv"), |b| report::write_tables_csv(b, &tables))?;
    report::write_json(&out.join("tables.json"), &tables)?;
    report::write_csv_file(&out.join("reinsertion.csv"), |b| report::write_reinsertion_csv(b, &reins))?;
    report::write_json(&out.join("reinsertion.json"), &reins)?;
    Ok(())
}

fn summarize(w: &mut dyn Write, ev: &SchemeEvaluation) -> CliResult<()> {
    say(
        w,
        format!(
            "{}: avg_table = {} max_table = {} avg_stretch = {} max_stretch = {} avg_stretch_len1 = {} violating_adjacencies = {}",
            ev.kind(),
            ev.tables.avg_entries,
            ev.tables.max_entries,
            ev.stretch.avg_stretch,
            ev.stretch.max_stretch,
            ev.stretch.avg_stretch_len1,
            ev.reinsertion.violating_adjacencies
        ),
    )
}

fn cmd_eval(s: &mut Settings, out: &Path, w: &mut dyn Write) -> CliResult<()> {
    let g = load_graph(s)?;
    let kind = parse_kind(&s.require::<String>("scheme")?)?;
    s.set("scheme", kind.name());
    let mut params = scheme_params(s)?;
    let n = g.node_count();
    match kind {
        SchemeKind::Tz => {
            params.s = Some(params.resolved_s(n));
            s.set_opt("s", params.s);
        }
        SchemeKind::Hierarchical => {
            params.k = Some(params.resolved_k(n));
            s.set_opt("k", params.k);
        }
        _ => {}
    }
    let (art, ev) = evaluate_kind(&g, kind, &params, s.require("seed")?, s.require("pair_budget")?)?;
    write_evaluations(out, std::slice::from_ref(&ev))?;
    if s.flag_set("artifacts")? {
        report::write_json(&out.join("artifacts.json"), &art.to_json(&g))?;
    }
    say(w, format!("graph: {}", g.fingerprint()))?;
    summarize(w, &ev)
}

fn cmd_sweep(s: &mut Settings, out: &Path, w: &mut dyn Write) -> CliResult<()> {
    let sizes: Vec<usize> = s
        .list("sizes")?
        .ok_or_else(|| CliError::Usage("missing required --sizes".into()))?;
    let template = gen_config(s, 0, 0)?;
    let schemes = parse_kinds(s, &[SchemeKind::Trivial, SchemeKind::Tz])?;
    s.set("schemes", join_kinds(&schemes));
    s.set(
        "sizes",
        sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
    );
    let params = scheme_params(s)?;
    let cfg = SweepConfig {
        template,
        sizes,
        schemes,
        params,
        pair_budget: s.require("pair_budget")?,
        seed: s.require("seed")?,
    };
    if let Err(e) = cfg.validate() {
        return Err(CliError::Usage(e.to_string()));
    }
    let rep = eval::sweep(&cfg)?;
    report::write_csv_file(&out.join("sweep.csv"), |b| report::write_sweep_csv(b, &rep))?;
    report::write_csv_file(&out.join("sweep_exponents.csv"), |b| report::write_exponents_csv(b, &rep))?;
    report::write_json(&out.join("sweep.json"), &rep)?;
    for p in &rep.points {
        say(
            w,
            format!(
                "n = {} {}: avg_table = {} max_table = {} avg_stretch = {} avg_stretch_len1 = {}",
                p.n, p.scheme, p.avg_table, p.max_table, p.avg_stretch, p.avg_stretch_len1
            ),
        )?;
    }
    for e in &rep.fitted_exponents {
        say(
            w,
            format!(
                "{}: avg_table_exponent = {} max_table_exponent = {}",
                e.scheme, e.avg_table_exponent, e.max_table_exponent
            ),
        )?;
    }
    Ok(())
}

fn cmd_compare(s: &mut Settings, out: &Path, w: &mut dyn Write) -> CliResult<()> {
    let g = load_graph(s)?;
    let kinds = parse_kinds(s, &SchemeKind::ALL)?;
    s.set("schemes", join_kinds(&kinds));
    let params = scheme_params(s)?;
    let seed: u64 = s.require("seed")?;
    let budget: u64 = s.require("pair_budget")?;
    let mut evs = Vec::new();
    for &kind in &kinds {
        evs.push(evaluate_kind(&g, kind, &params, seed, budget)?.1);
    }
    let table = eval::compare(&evs)?;
    write_evaluations(out, &evs)?;
    report::write_csv_file(&out.join("comparison.csv"), |b| report::write_comparison_csv(b, &table))?;
    report::write_json(&out.join("comparison.json"), &table)?;
    say(w, format!("graph: {}", table.fingerprint))?;
    for ev in &evs {
        summarize(w, ev)?;
    }
    Ok(())
}
