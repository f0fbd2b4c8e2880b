//! Command-line front end. The binary only forwards its arguments to [`run`].
//!
//! Exit codes: 0 when every requested check passes, 1 on a verification
//! failure, 2 on bad input (parse errors, axiom violations, I/O).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chow::ChowSpace;
use crate::convexity::SubmodularFunction;
use crate::error::{Error, Result};
use crate::fan::FanDocument;
use crate::linalg::Matrix;
use crate::matroid::Matroid;
use crate::rational::to_pq;
use crate::theorem::{verify_main_theorem, MainTheoremReport, Mode, VerifyOptions};
use crate::tower::DeletionTower;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Reserved; every computation is deterministic and never reads it.
pub const SEED_VAR: &str = "HODGE_FORGE_SEED";

#[derive(Parser, Debug)]
#[command(name = "hodge-forge", version, about = "Chow rings of Bergman fans, with exact Hard Lefschetz and Hodge-Riemann checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, flat counts, coloops and deletion data of a matroid.
    Info {
        /// Matroid JSON file (ground size and lattice of flats).
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Poincaré duality, Hard Lefschetz and Hodge-Riemann for the Bergman fan.
    Verify {
        /// Matroid JSON file (ground size and lattice of flats).
        #[arg(long)]
        matroid: PathBuf,
        /// `direct` or `tower`.
        #[arg(long, default_value = "direct", value_parser = parse_mode)]
        mode: Mode,
        /// Element deleted in tower mode.
        #[arg(long)]
        element: Option<usize>,
        /// `default`, `cubic`, or a JSON file of flat values.
        #[arg(long, default_value = "default")]
        witness: String,
        /// Samples on the deformation segment.
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// The Bergman fan as JSON.
    Fan {
        /// Matroid JSON file (ground size and lattice of flats).
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Hilbert function and standard-monomial basis of the Chow ring.
    Chow {
        /// Matroid JSON file (ground size and lattice of flats).
        #[arg(long)]
        matroid: PathBuf,
    },
    /// The deletion tower of an element.
    Tower {
        /// Matroid JSON file (ground size and lattice of flats).
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        element: Option<usize>,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Where a witness class comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    Default,
    Cubic,
    File(PathBuf),
}

impl WitnessSource {
    pub fn parse(s: &str) -> Self {
        match s {
            "default" => WitnessSource::Default,
            "cubic" => WitnessSource::Cubic,
            path => WitnessSource::File(PathBuf::from(path)),
        }
    }

    pub fn load(&self) -> Result<SubmodularFunction> {
        match self {
            WitnessSource::Default => Ok(SubmodularFunction::Default),
            WitnessSource::Cubic => Ok(SubmodularFunction::Cubic),
            WitnessSource::File(p) => SubmodularFunction::from_json(&read(p)?),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Info,
    Verify,
    Fan,
    Chow,
    Tower,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: PathBuf,
    pub mode: Mode,
    pub witness: WitnessSource,
    pub format: Format,
    pub element: Option<usize>,
    pub steps: usize,
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: CommandKind, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            mode: Mode::Direct,
            witness: WitnessSource::Default,
            format: Format::Json,
            element: None,
            steps: 16,
            jobs: 0,
            out: None,
        }
    }

    fn from_cli(cli: Cli) -> Self {
        let g = cli.global;
        let mut cfg = match cli.command {
            Command::Info { matroid } => RunConfig::new(CommandKind::Info, matroid),
            Command::Fan { matroid } => RunConfig::new(CommandKind::Fan, matroid),
            Command::Chow { matroid } => RunConfig::new(CommandKind::Chow, matroid),
            Command::Tower { matroid, element } => {
                RunConfig { element, ..RunConfig::new(CommandKind::Tower, matroid) }
            }
            Command::Verify { matroid, mode, element, witness, steps } => RunConfig {
                mode,
                element,
                witness: WitnessSource::parse(&witness),
                steps,
                ..RunConfig::new(CommandKind::Verify, matroid)
            },
        };
        cfg.format = g.format;
        cfg.out = g.out;
        cfg.jobs = g.jobs;
        cfg
    }
}

/// A rendered report and whether it counts as a pass.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_matroid(cfg: &RunConfig) -> Result<Matroid> {
    Matroid::from_json(&read(&cfg.input)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", cfg.input.display())),
        other => other,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn default_element(m: &Matroid, requested: Option<usize>) -> Result<usize> {
    match requested {
        Some(e) => {
            if m.position(e).is_none() {
                return Err(Error::InvalidInput(format!("element {e} is not in the ground set")));
            }
            Ok(e)
        }
        None => m
            .elements()
            .iter()
            .copied()
            .find(|&e| !m.is_coloop(e).unwrap_or(true))
            .ok_or_else(|| Error::InvalidInput("every element is a coloop".into())),
    }
}

#[derive(Serialize)]
struct InfoReport {
    name: Option<String>,
    ground_size: usize,
    rank: usize,
    flat_counts_by_rank: Vec<usize>,
    coloops: Vec<usize>,
    boolean: bool,
    /// `|S_i|` for every non-coloop `i`.
    deletion_pairs: Vec<DeletionPairs>,
}

#[derive(Serialize)]
struct DeletionPairs {
    element: usize,
    count: usize,
}

pub fn cmd_matroid_info(cfg: &RunConfig) -> Result<Outcome> {
    let m = load_matroid(cfg)?;
    let coloops = m.coloops();
    let mut deletion_pairs = Vec::new();
    for &e in m.elements() {
        if !coloops.contains(&e) {
            deletion_pairs.push(DeletionPairs { element: e, count: m.deletion_flat_pairs(e)?.len() });
        }
    }
    let report = InfoReport {
        name: m.name().map(str::to_string),
        ground_size: m.ground_size(),
        rank: m.rank(),
        flat_counts_by_rank: m.flat_counts_by_rank(),
        coloops,
        boolean: m.is_boolean(),
        deletion_pairs,
    };
    let output = match cfg.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "ground size: {}", report.ground_size).unwrap();
            writeln!(s, "rank: {}", report.rank).unwrap();
            writeln!(s, "flats by rank: {:?}", report.flat_counts_by_rank).unwrap();
            if report.coloops.len() == report.ground_size {
                writeln!(s, "coloops: all").unwrap();
            } else if report.coloops.is_empty() {
                writeln!(s, "coloops: none").unwrap();
            } else {
                writeln!(s, "coloops: {:?}", report.coloops).unwrap();
            }
            for d in &report.deletion_pairs {
                writeln!(s, "|S_{}| = {}", d.element, d.count).unwrap();
            }
            s
        }
    };
    Ok(Outcome { output, passed: true })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<(Outcome, MainTheoremReport)> {
    if cfg.steps == 0 {
        return Err(Error::InvalidInput("--steps must be at least 1".into()));
    }
    let m = load_matroid(cfg)?;
    if let Some(e) = cfg.element {
        if m.position(e).is_none() {
            return Err(Error::InvalidInput(format!("element {e} is not in the ground set")));
        }
    }
    let opts = VerifyOptions { mode: cfg.mode, element: cfg.element, witness: cfg.witness.load()?, steps: cfg.steps, order: None };
    let report = verify_main_theorem(&m, &opts)?;
    let output = match cfg.format {
        Format::Json => to_json(&report),
        Format::Text => render_verify(&report),
    };
    Ok((Outcome { output, passed: report.passed }, report))
}

fn render_verify(r: &MainTheoremReport) -> String {
    let mut s = String::new();
    writeln!(s, "matroid: {} (rank {})", if r.matroid.is_empty() { "-" } else { &r.matroid }, r.rank).unwrap();
    write!(s, "mode: {}", r.mode).unwrap();
    if let Some(e) = r.element {
        write!(s, ", element {e}").unwrap();
    }
    if let Some(k) = r.subdivisions {
        write!(s, ", k = {k}").unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "hilbert: {:?}", r.hilbert).unwrap();
    for g in &r.lefschetz.degrees {
        let sig = g.form_signature;
        writeln!(
            s,
            "  CH^{}: dim {}, rank ℓ^{} = {}, Q signature ({}, {}, {}), dim P = {}",
            g.degree,
            g.dim,
            r.lefschetz.top_degree - 2 * g.degree,
            g.lefschetz_rank,
            sig.positive,
            sig.negative,
            sig.zero,
            g.primitive_dim.map_or("-".to_string(), |p| p.to_string()),
        )
        .unwrap();
    }
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(s, "{tag} {}", c.name).unwrap();
        } else {
            writeln!(s, "{tag} {}: {}", c.name, c.detail).unwrap();
        }
    }
    writeln!(s, "{}", if r.passed { "all checks passed" } else { "verification failed" }).unwrap();
    s
}

pub fn cmd_fan_dump(cfg: &RunConfig) -> Result<Outcome> {
    let m = load_matroid(cfg)?;
    let doc = crate::bergman::bergman_fan(&m).to_document();
    let output = match cfg.format {
        Format::Json => to_json(&doc),
        Format::Text => render_fan(&doc),
    };
    Ok(Outcome { output, passed: true })
}

fn render_fan(doc: &FanDocument) -> String {
    let mut s = String::new();
    writeln!(s, "ambient dimension {}, {} rays", doc.ambient_dim, doc.rays.len()).unwrap();
    for (i, r) in doc.rays.iter().enumerate() {
        let label = doc.labels.as_ref().and_then(|l| l.get(&i.to_string())).map_or("", String::as_str);
        writeln!(s, "  ray {i} {label}: ({})", r.join(", ")).unwrap();
    }
    writeln!(s, "{} maximal cones", doc.max_cones.len()).unwrap();
    for c in &doc.max_cones {
        writeln!(s, "  {c:?}").unwrap();
    }
    s
}

#[derive(Serialize)]
struct ChowReport {
    rays: usize,
    /// Number of linear relations `θ_j`, one per ambient coordinate.
    relations: usize,
    top_degree: usize,
    hilbert: Vec<usize>,
    /// Standard monomials per degree, written `r^e*r^e` over ray indices.
    basis: Vec<Vec<String>>,
}

pub fn cmd_chow_report(cfg: &RunConfig) -> Result<Outcome> {
    let m = load_matroid(cfg)?;
    let fan = crate::bergman::bergman_fan(&m);
    let ch = ChowSpace::new(&fan);
    let d = ch.top_degree();
    let report = ChowReport {
        rays: fan.num_rays(),
        relations: fan.ambient_dim(),
        top_degree: d,
        hilbert: ch.hilbert(),
        basis: (0..=d).map(|k| ch.basis(k).iter().map(ToString::to_string).collect()).collect(),
    };
    let output = match cfg.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "hilbert: {:?}", report.hilbert).unwrap();
            for (k, b) in report.basis.iter().enumerate() {
                writeln!(s, "  CH^{k}: {}", b.join(" ")).unwrap();
            }
            s
        }
    };
    Ok(Outcome { output, passed: true })
}

#[derive(Serialize)]
struct TowerReport {
    element: usize,
    subdivisions: usize,
    /// `S_i` in the order used, as element labels.
    flat_pairs: Vec<Vec<usize>>,
    steps: Vec<SubdivisionRecord>,
    projection: Vec<Vec<String>>,
    contracted_ray: Option<usize>,
    target: FanDocument,
}

#[derive(Serialize)]
struct SubdivisionRecord {
    step: usize,
    /// The cone `{i} < F_j ∪ i` of the coarser fan.
    cone: Vec<usize>,
    /// Ray of the finer fan spanned by `e_{F_j ∪ i}`.
    new_ray: usize,
    coarse: FanDocument,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(to_pq).collect()).collect()
}

pub fn cmd_tower_dump(cfg: &RunConfig) -> Result<Outcome> {
    let m = load_matroid(cfg)?;
    let element = default_element(&m, cfg.element)?;
    let tower = DeletionTower::build(&m, element)?;
    let report = TowerReport {
        element,
        subdivisions: tower.len(),
        flat_pairs: tower.flat_pairs.iter().map(|&f| m.labels_of(f)).collect(),
        steps: (1..=tower.len())
            .map(|j| SubdivisionRecord {
                step: j,
                cone: tower.subdivided_cones[j - 1].clone(),
                new_ray: tower.new_rays[j - 1],
                coarse: tower.fans[j].to_document(),
            })
            .collect(),
        projection: matrix_strings(tower.projection.matrix()),
        contracted_ray: tower.contracted_ray,
        target: tower.target.to_document(),
    };
    let output = match cfg.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "element {element}: {} subdivisions", report.subdivisions).unwrap();
            for (j, f) in report.flat_pairs.iter().enumerate() {
                writeln!(s, "  F_{} = {f:?}, subdivide cone {:?}", j + 1, report.steps[j].cone).unwrap();
            }
            writeln!(s, "projection:").unwrap();
            for row in &report.projection {
                writeln!(s, "  [{}]", row.join(", ")).unwrap();
            }
            s
        }
    };
    Ok(Outcome { output, passed: true })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailure(_) | Error::InternalMismatch(_) | Error::PreconditionFailure(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

/// Runs one command; returns the process exit code.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    pool.install(|| match cfg.command {
        CommandKind::Info => cmd_matroid_info(cfg),
        CommandKind::Verify => cmd_verify(cfg).map(|(o, _)| o),
        CommandKind::Fan => cmd_fan_dump(cfg),
        CommandKind::Chow => cmd_chow_report(cfg),
        CommandKind::Tower => cmd_tower_dump(cfg),
    })
}

/// Parses arguments, runs the command, writes the report, and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let cfg = RunConfig::from_cli(cli);
    match execute(&cfg) {
        Ok(outcome) => {
            let written = match &cfg.out {
                Some(p) => std::fs::write(p, &outcome.output),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return EXIT_INPUT;
            }
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
