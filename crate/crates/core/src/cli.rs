//! The `isogrowth` command line driver.
//!
//! Every subcommand writes its primary artifact to `--out` (atomically) or to
//! stdout. Text artifacts begin with a `config = {...}` line holding the
//! [`RunConfig`]; CSV artifacts get it in a `<out>.run.json` sidecar.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{make_oracle, GeneratorSpec};
use crate::graph::io::{atomic_write, read_truncated_graph, read_vertex_set, write_edge_list};
use crate::graph::{materialize, FiniteGraph, Truncation, VertexSet};
use crate::growth::{growth_profile, phi, pinch_fit, pinch_report, pinch_verify_profile, stratified_sample, write_profile_csv};
use crate::isoperimetry::{
    bound_report, branch_point_check, certificate_bounds_check, warmup_check, write_report_csv, write_report_text,
    z_certificate, ReportOptions,
};
use crate::plot::emit_plot;
use crate::search::{exact_profile, heuristic_profile, write_witness_files, ExactMode, SearchConfig, DEFAULT_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "isogrowth", version, about = "Ball growth, vertex boundaries and isoperimetric certificates")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Default)]
struct GraphArgs {
    /// Generator spec, e.g. tree:3, grid:2, lamplighter, comb, subdiv:4.
    #[arg(short = 'f', long = "family", conflicts_with = "graph")]
    family: Option<String>,
    /// Edge-list file (with optional truncation header).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Truncation radius when materializing a family.
    #[arg(long)]
    radius: Option<u32>,
}

#[derive(Debug, Args, Clone)]
struct OutArg {
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Default)]
struct PinchArgs {
    /// Growth constants `a,c`; otherwise fitted from balls up to --rmax.
    #[arg(long, value_parser = parse_pinch)]
    pinch: Option<(f64, f64)>,
    #[arg(long)]
    rmax: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Materialize a family and write it as an edge list.
    Gen {
        spec: Option<String>,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Ball sizes on a stratified sample (CSV: vertex,r,ball_size).
    Growth {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        rmax: u32,
        /// Extra sample vertices.
        #[arg(long)]
        set: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fit pinch constants, or verify given ones with --pinch.
    Pinch {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        rmax: u32,
        #[arg(long, value_parser = parse_pinch)]
        pinch: Option<(f64, f64)>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Inverse growth function phi(n) at the truncation root.
    Phi {
        n: usize,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Bound report for one or more vertex sets (CSV; text summary beside it).
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, required = true)]
        set: Vec<PathBuf>,
        #[command(flatten)]
        pinch: PinchArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Z-certificate with explicit constants.
    Certificate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        pinch: PinchArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two-dimensional warm-up argument.
    Warmup {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        pinch: PinchArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Minimum-boundary profile (CSV: n,min_boundary,method,witness).
    Profile {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value = "connected")]
        mode: String,
        /// Search region; defaults to the safe interior.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Branch-point check on a tree truncation.
    Branchcheck {
        k: usize,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Gnuplot script (and SVG for growth/ratio data) from a CSV this tool wrote.
    Plot {
        csv: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_pinch(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, c) = s.split_once(',').ok_or_else(|| format!("expected a,c but got {s:?}"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("bad a: {e}"))?;
    let c = c.trim().parse::<f64>().map_err(|e| format!("bad c: {e}"))?;
    Ok((a, c))
}

/// Everything that determines a run's output.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub family: Option<String>,
    pub graph: Option<PathBuf>,
    pub radius: Option<u32>,
    pub params: BTreeMap<String, String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    fn new(command: &str, graph: &GraphArgs, out: &OutArg, jobs: Option<usize>) -> Self {
        RunConfig {
            command: command.to_string(),
            family: graph.family.clone(),
            graph: graph.graph.clone(),
            radius: graph.radius,
            out: out.out.clone(),
            jobs,
            ..Default::default()
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("bad run config: {e}")))
    }
}

struct Loaded {
    g: FiniteGraph,
    t: Truncation,
    /// Degree of the underlying family when it is regular.
    degree: Option<usize>,
}

fn load(args: &GraphArgs) -> Result<Loaded> {
    match (&args.family, &args.graph) {
        (Some(spec), None) => {
            let spec: GeneratorSpec = spec.parse()?;
            let radius = match (args.radius, spec.is_finite()) {
                (Some(r), _) => r,
                (None, true) => u32::MAX,
                (None, false) => {
                    return Err(Error::InvalidParameter("--radius is required for infinite families".into()))
                }
            };
            let oracle = make_oracle(&spec)?;
            let root = oracle
                .default_root()
                .ok_or_else(|| Error::InvalidParameter(format!("family {spec} has no vertices")))?;
            let (g, t) = materialize(&*oracle, &root, radius)?;
            Ok(Loaded { g, t, degree: oracle.uniform_degree() })
        }
        (None, Some(path)) => {
            if args.radius.is_some() {
                return Err(Error::InvalidParameter("--radius only applies to --family".into()));
            }
            let (g, t) = read_truncated_graph(path)?;
            let degree = interior_degree(&g, &t);
            Ok(Loaded { g, t, degree })
        }
        _ => Err(Error::InvalidParameter("exactly one of --family or --graph is required".into())),
    }
}

/// The common degree of all safe-interior vertices, if there is one.
fn interior_degree(g: &FiniteGraph, t: &Truncation) -> Option<usize> {
    let interior = t.safe_interior();
    let mut degrees = interior.iter().map(|v| g.degree(v));
    let d = degrees.next()?;
    degrees.all(|e| e == d).then_some(d)
}

fn emit(out: &OutArg, bytes: &[u8]) -> Result<()> {
    match &out.out {
        Some(p) => atomic_write(p, bytes),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes a CSV artifact and, with `--out`, its config sidecar.
fn emit_csv(out: &OutArg, bytes: &[u8], cfg: &RunConfig) -> Result<()> {
    if let Some(p) = &out.out {
        atomic_write(sidecar(p, ".run.json"), format!("{}\n", cfg.to_json()).as_bytes())?;
    }
    emit(out, bytes)
}

fn text_header(cfg: &RunConfig) -> String {
    format!("# isogrowth {}\nconfig = {}\n", cfg.command, cfg.to_json())
}

/// Constants from `--pinch`, or fitted on a stratified sample up to `--rmax`.
fn constants(l: &Loaded, p: &PinchArgs, text: &mut String) -> Result<(f64, f64)> {
    if let Some(ac) = p.pinch {
        let _ = writeln!(text, "constants = given");
        return Ok(ac);
    }
    let rmax = p.rmax.ok_or_else(|| Error::InvalidParameter("need --pinch a,c or --rmax to fit them".into()))?;
    let profile = growth_profile(&l.g, &l.t, &stratified_sample(&l.t, rmax), rmax);
    let est = pinch_fit(&profile)?;
    let _ = writeln!(text, "constants = fitted on {} vertices, radii 1..{rmax}", profile.rows.len());
    Ok((est.a, est.c))
}

fn set_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn run_command(cli: Cli) -> Result<()> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Gen { spec, mut graph, out } => {
            if let Some(s) = spec {
                if graph.family.is_some() {
                    return Err(Error::InvalidParameter("give the spec positionally or with --family, not both".into()));
                }
                graph.family = Some(s);
            }
            if graph.family.is_none() {
                return Err(Error::InvalidParameter("gen needs a generator spec".into()));
            }
            let cfg = RunConfig::new("gen", &graph, &out, jobs);
            let l = load(&graph)?;
            let mut buf = format!("# config = {}\n", cfg.to_json()).into_bytes();
            write_edge_list(&l.g, Some(&l.t), &mut buf)?;
            emit(&out, &buf)
        }
        Command::Growth { graph, rmax, set, out } => {
            let cfg = RunConfig::new("growth", &graph, &out, jobs).param("rmax", rmax);
            let cfg = match &set {
                Some(p) => cfg.param("set", p.display()),
                None => cfg,
            };
            let l = load(&graph)?;
            let mut sample = stratified_sample(&l.t, rmax);
            if let Some(p) = &set {
                sample.extend(read_vertex_set(&l.g, p)?.iter());
            }
            if sample.is_empty() {
                return Err(Error::Margin(format!("no vertex has an exact ball of radius {rmax}")));
            }
            let profile = growth_profile(&l.g, &l.t, &sample, rmax);
            let mut buf = Vec::new();
            write_profile_csv(&profile, &mut buf)?;
            emit_csv(&out, &buf, &cfg)
        }
        Command::Pinch { graph, rmax, pinch, out } => {
            let mut cfg = RunConfig::new("pinch", &graph, &out, jobs).param("rmax", rmax);
            if let Some((a, c)) = pinch {
                cfg = cfg.param("pinch", format!("{a},{c}"));
            }
            let l = load(&graph)?;
            let profile = growth_profile(&l.g, &l.t, &stratified_sample(&l.t, rmax), rmax);
            let mut text = text_header(&cfg);
            let _ = writeln!(text, "sample = {}", profile.rows.len());
            let _ = writeln!(text, "dropped = {}", profile.dropped.len());
            match pinch {
                None => text.push_str(&pinch_report(&pinch_fit(&profile)?)),
                Some((a, c)) => {
                    let violations = pinch_verify_profile(&profile, a, c, rmax)?;
                    let _ = writeln!(text, "a = {a}\nc = {c}\nradius_range = 1..{rmax}\nviolations = {}", violations.len());
                    for v in &violations {
                        let _ = writeln!(text, "violation = {v}");
                    }
                }
            }
            emit(&out, text.as_bytes())
        }
        Command::Phi { n, graph, out } => {
            let cfg = RunConfig::new("phi", &graph, &out, jobs).param("n", n);
            let l = load(&graph)?;
            let r = phi(&l.g, &l.t, l.t.root(), n)?;
            let text = format!("{}anchor = {}\nn = {n}\nphi = {r}\n", text_header(&cfg), l.g.id(l.t.root()));
            emit(&out, text.as_bytes())
        }
        Command::Check { graph, set, pinch, out } => {
            let mut cfg = RunConfig::new("check", &graph, &out, jobs);
            for (i, p) in set.iter().enumerate() {
                cfg = cfg.param(&format!("set.{i}"), p.display());
            }
            cfg = pinch_params(cfg, &pinch);
            let l = load(&graph)?;
            let mut text = text_header(&cfg);
            let ac = if pinch.pinch.is_some() || pinch.rmax.is_some() { Some(constants(&l, &pinch, &mut text)?) } else { None };
            if let Some((a, c)) = ac {
                let _ = writeln!(text, "a = {a}\nc = {c}");
            }
            let sets = set
                .iter()
                .map(|p| Ok((set_id(p), read_vertex_set(&l.g, p)?)))
                .collect::<Result<Vec<(String, VertexSet)>>>()?;
            let reports = bound_report(&l.g, &l.t, &sets, &ReportOptions { degree: l.degree, pinch: ac })?;
            text.push('\n');
            text.push_str(&write_report_text(&reports));
            match &out.out {
                Some(p) => {
                    let mut buf = Vec::new();
                    write_report_csv(&reports, &mut buf)?;
                    atomic_write(sidecar(p, ".txt"), text.as_bytes())?;
                    emit_csv(&out, &buf, &cfg)
                }
                None => emit(&out, text.as_bytes()),
            }
        }
        Command::Certificate { graph, set, pinch, out } => {
            let cfg = pinch_params(RunConfig::new("certificate", &graph, &out, jobs).param("set", set.display()), &pinch);
            let l = load(&graph)?;
            let mut text = text_header(&cfg);
            let (a, c) = constants(&l, &pinch, &mut text)?;
            let a_set = read_vertex_set(&l.g, &set)?;
            let cert = z_certificate(&l.g, &l.t, &a_set, a, c)?;
            let check = certificate_bounds_check(&cert, &cert.constants);
            let _ = writeln!(text, "a = {a}\nc = {c}\nradius = {}", cert.radius);
            let _ = writeln!(text, "set_size = {}\nboundary_size = {}", cert.set_size, cert.boundary_size);
            let _ = writeln!(text, "z = {}\nz_direct = {}", cert.z, cert.z_direct);
            let _ = writeln!(text, "kappa1 = {}\nkappa1_size = {}", cert.kappa1, check.kappa_size);
            let _ = writeln!(text, "beta = {}\nmax_z_u = {}", check.beta, check.max_z_u);
            let _ = writeln!(text, "lower_ok = {}\nupper_ok = {}", check.lower_ok, check.upper_ok);
            let _ = writeln!(text, "lower_slack = {}\nupper_slack = {}", check.lower_slack, check.upper_slack);
            let _ = writeln!(text, "boundary_lower = {}\nimplied_lower = {}", check.boundary_lower, check.implied_lower);
            for term in &cert.terms {
                let hist: Vec<String> = term.histogram.iter().map(|(r, m)| format!("{r}:{m}")).collect();
                let _ = writeln!(text, "term = {} z={} hist={}", term.vertex, term.z, hist.join(","));
            }
            emit(&out, text.as_bytes())
        }
        Command::Warmup { graph, set, pinch, out } => {
            let cfg = pinch_params(RunConfig::new("warmup", &graph, &out, jobs).param("set", set.display()), &pinch);
            let l = load(&graph)?;
            let mut text = text_header(&cfg);
            let (a, c) = constants(&l, &pinch, &mut text)?;
            let w = warmup_check(&l.g, &l.t, &read_vertex_set(&l.g, &set)?, a, c)?;
            let _ = writeln!(text, "a = {a}\nc = {c}");
            let _ = writeln!(text, "center = {}\nradius = {}", w.center, w.radius);
            let _ = writeln!(text, "set_size = {}\nboundary_size = {}", w.set_size, w.boundary_size);
            let _ = writeln!(text, "ball_size = {}\ncover_size = {}", w.ball_size, w.cover_size);
            let _ = writeln!(text, "ball_covered = {}\nset_covered = {}", w.ball_covered, w.set_covered);
            let _ = writeln!(text, "pinch_violations = {}", w.pinch_violations);
            let _ = writeln!(text, "growth_ok = {}\nvolume_ok = {}", w.growth_ok, w.volume_ok);
            let _ = writeln!(text, "slack = {}", w.slack);
            emit(&out, text.as_bytes())
        }
        Command::Profile { graph, nmax, mode, set, seed, budget, out } => {
            let mut cfg = RunConfig::new("profile", &graph, &out, jobs).param("nmax", nmax).param("mode", &mode);
            cfg.seed = Some(seed);
            cfg.budget = Some(budget);
            if let Some(p) = &set {
                cfg = cfg.param("set", p.display());
            }
            let l = load(&graph)?;
            let region = match &set {
                Some(p) => read_vertex_set(&l.g, p)?,
                None => l.t.safe_interior(),
            };
            let profile = match mode.as_str() {
                "heuristic" => heuristic_profile(&l.g, &l.t, &SearchConfig::new(region, nmax, seed))?,
                m => exact_profile(&l.g, &l.t, &region, nmax, m.parse::<ExactMode>()?, budget)?,
            };
            let mut buf = Vec::new();
            crate::search::write_profile_csv(&l.g, &profile, &mut buf)?;
            if let Some(p) = &out.out {
                write_witness_files(&l.g, &profile, sidecar(p, ".witnesses"))?;
            }
            emit_csv(&out, &buf, &cfg)
        }
        Command::Branchcheck { k, graph, out } => {
            let cfg = RunConfig::new("branchcheck", &graph, &out, jobs).param("k", k);
            let l = load(&graph)?;
            let r = branch_point_check(&l.g, &l.t, k)?;
            let mut text = text_header(&cfg);
            let _ = writeln!(text, "k = {k}\nholds = {}", r.holds);
            let _ = writeln!(text, "interior = {}\nbranch_points = {}", r.interior, r.branch_points);
            let _ = writeln!(text, "density = {}\nlongest_free_path = {}", r.density(), r.longest_free_path);
            if let Some(w) = &r.witness {
                let ids: Vec<String> = w.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "witness = {}", ids.join(" "));
            }
            emit(&out, text.as_bytes())
        }
        Command::Plot { csv, out } => {
            let result = emit_plot(&csv, out.out.as_deref())?;
            log::info!("wrote {}", result.script.display());
            Ok(())
        }
    }
}

fn pinch_params(mut cfg: RunConfig, p: &PinchArgs) -> RunConfig {
    if let Some((a, c)) = p.pinch {
        cfg = cfg.param("pinch", format!("{a},{c}"));
    }
    if let Some(r) = p.rmax {
        cfg = cfg.param("rmax", r);
    }
    cfg
}

/// Parses `args` and runs the command. Exit code 2 for usage and validation
/// errors (including margin violations), 1 for I/O failures.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run_command(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
