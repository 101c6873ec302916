//! The `prolong` command line front end.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{are_equivalent, brute_force_coverings, difference_cocycle, enumerate_classes, ClassifyError, DEFAULT_MAX_ORDER};
use crate::cohomology::{CohomologyError, PiModule};
use crate::extension::{pullback, validate_prolongation, ExtensionError, Frame, Prolongation};
use crate::group::{FiniteGroup, Homomorphism};
use crate::io::{self, IoError, Mode, Scenario};
use crate::obstruction::{
    build_prolongation, obstruction_class_with, validate_pre, verify_covering, ObstructionError, PreProlongation, SectionChoice,
};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OBSTRUCTED: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "prolong", version, about = "Prolongations of central extensions of finite groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for the section and lift choices of `obstruction`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest |B| examined by the exhaustive covering search.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, global = true)]
    pub max_order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a scenario and report every violated condition.
    Validate { scenario: PathBuf },
    /// Invariant factors of Hⁿ(Π, A).
    Cohomology {
        scenario: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// Also print representative cocycles of a basis.
        #[arg(long)]
        basis: bool,
    },
    /// The obstruction class in H³(Coker γ, A).
    Obstruction {
        scenario: PathBuf,
        /// Write the built prolongation as a full-ladder scenario.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a covering prolongation.
    Build {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One covering per element of H²(Coker γ, A).
    Classify { scenario: PathBuf },
    /// Decide whether two full-ladder scenarios are equivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Compare the exhaustive covering search with the classification.
    Oracle { scenario: PathBuf },
    /// Pull an extension back along a homomorphism.
    Pullback {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("invalid scenario")]
    Invalid(Report),
    #[error("command {command} does not apply to a {mode} scenario")]
    WrongMode { command: &'static str, mode: &'static str },
    #[error("scenario has no {0} section")]
    MissingSection(&'static str),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Obstruction(ObstructionError::ObstructionNonzero { .. })
            | CliError::Classify(ClassifyError::Obstruction(ObstructionError::ObstructionNonzero { .. })) => EXIT_OBSTRUCTED,
            _ => EXIT_INVALID,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Io(_) => "parse",
            CliError::Invalid(_) => "invalid",
            CliError::WrongMode { .. } | CliError::MissingSection(_) => "mode",
            CliError::Obstruction(ObstructionError::ObstructionNonzero { .. }) => "obstructed",
            CliError::Obstruction(_) => "obstruction",
            CliError::Classify(ClassifyError::SearchBoundExceeded { .. }) => "bound",
            CliError::Classify(_) => "classify",
            CliError::Extension(_) => "extension",
            CliError::Cohomology(_) => "cohomology",
        }
    }

    fn witness(&self) -> Value {
        match self {
            CliError::Invalid(r) | CliError::Obstruction(ObstructionError::InvalidPre(r)) => json!(r),
            CliError::Obstruction(ObstructionError::ObstructionNonzero { factors, coordinates })
            | CliError::Classify(ClassifyError::Obstruction(ObstructionError::ObstructionNonzero { factors, coordinates })) => {
                json!({ "h3": factors, "coordinates": coordinates })
            }
            CliError::Classify(ClassifyError::SearchBoundExceeded { size, bound }) => {
                json!({ "size": size.to_string(), "bound": bound.to_string() })
            }
            _ => Value::Null,
        }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string(), "witness": self.witness() } })
    }
}

/// A command result: exit code, JSON document and human summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, json: Value, text: impl Into<String>) -> Self {
        Outcome { code, json, text: text.into() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Text => self.text.clone(),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and prints
/// the result on stdout. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cli);
    println!("{}", out.render(cli.format));
    out.code
}

/// Runs a parsed command without printing.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate { scenario } => load(scenario).and_then(|s| validate(&s)),
        Command::Cohomology { scenario, degree, basis } => load(scenario).and_then(|s| cohomology(&s, *degree, *basis)),
        Command::Obstruction { scenario, out } => load(scenario).and_then(|s| obstruction(&s, cli.seed, out.as_deref())),
        Command::Build { scenario, out } => load(scenario).and_then(|s| build(&s, out.as_deref())),
        Command::Classify { scenario } => load(scenario).and_then(|s| classify(&s)),
        Command::Equiv { first, second } => load(first).and_then(|a| load(second).and_then(|b| equiv(&a, &b))),
        Command::Oracle { scenario } => load(scenario).and_then(|s| oracle(&s, cli.max_order)),
        Command::Pullback { scenario, out } => load(scenario).and_then(|s| pullback_cmd(&s, out.as_deref())),
    };
    result.unwrap_or_else(|e| Outcome::new(e.exit_code(), e.to_json(), format!("error: {e}")))
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.display().to_string(), message: e.to_string() })?;
    Ok(io::parse_scenario(&text)?)
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    std::fs::write(path, text).map_err(|e| CliError::Write { path: path.display().to_string(), message: e.to_string() })
}

fn ladder(s: &Scenario, command: &'static str) -> Result<Prolongation, CliError> {
    match (&s.mode, &s.ladder) {
        (Mode::FullLadder, Some(p)) => Ok(p.clone()),
        _ => Err(CliError::WrongMode { command, mode: s.mode.as_str() }),
    }
}

/// The pre-prolongation a scenario describes: the explicit θ, or the one
/// induced by a full ladder.
fn pre_of(s: &Scenario, command: &'static str) -> Result<PreProlongation, CliError> {
    match s.mode {
        Mode::FullLadder => {
            let p = ladder(s, command)?;
            let report = validate_prolongation(&p);
            if !report.passed() {
                return Err(CliError::Invalid(report));
            }
            Ok(PreProlongation::from_prolongation(&p)?)
        }
        Mode::PreProlongation => {
            let (e0, alpha, gamma) = base(s)?;
            let frame = Frame::new(&e0, &alpha, &gamma).map_err(|_| CliError::Invalid(validate_pre(&e0, &alpha, &gamma, &[])))?;
            let theta = s.theta_for(&frame)?.ok_or(CliError::MissingSection("theta"))?;
            Ok(PreProlongation::new(e0, alpha, gamma, theta)?)
        }
        Mode::CohomologyOnly => Err(CliError::WrongMode { command, mode: s.mode.as_str() }),
    }
}

fn base(s: &Scenario) -> Result<(crate::extension::ShortExtension, Homomorphism, Homomorphism), CliError> {
    Ok((
        s.e0.clone().ok_or(CliError::MissingSection("extension0"))?,
        s.alpha.clone().ok_or(CliError::MissingSection("alpha"))?,
        s.gamma.clone().ok_or(CliError::MissingSection("gamma"))?,
    ))
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table_rows() })
}

fn prolongation_json(p: &Prolongation) -> Value {
    json!({
        "b": group_json(p.e.b()),
        "j": p.e.j().map(),
        "p": p.e.p().map(),
        "beta": p.beta.map(),
        "order_profile": p.e.b().order_profile(),
    })
}

fn report_text(r: &Report) -> String {
    r.to_string()
}

fn validate(s: &Scenario) -> Result<Outcome, CliError> {
    let report = match s.mode {
        Mode::FullLadder => {
            let p = ladder(s, "validate")?;
            let mut r = validate_prolongation(&p);
            if r.passed() {
                if let Some(theta) = p.frame().ok().and_then(|f| s.theta_for(&f).transpose()) {
                    match theta {
                        Ok(theta) => {
                            let pre = PreProlongation::new(p.e0.clone(), p.alpha.clone(), p.gamma.clone(), theta);
                            let ok = pre.map(|pre| verify_covering(&p, &pre).unwrap_or(false)).unwrap_or(false);
                            r.check("ThetaMatchesInduced", (!ok).then(|| "declared theta differs from the induced one".to_string()));
                        }
                        Err(e) => r.fail("ThetaNotAutomorphism", e.to_string()),
                    }
                }
            }
            r
        }
        Mode::PreProlongation => {
            let (e0, alpha, gamma) = base(s)?;
            match Frame::new(&e0, &alpha, &gamma) {
                Err(e) => {
                    let mut r = validate_pre(&e0, &alpha, &gamma, &[]);
                    if r.passed() {
                        r.fail("Frame", e.to_string());
                    }
                    r
                }
                Ok(frame) => match s.theta_for(&frame) {
                    Ok(Some(theta)) => validate_pre(&e0, &alpha, &gamma, &theta),
                    Ok(None) => return Err(CliError::MissingSection("theta")),
                    Err(e) => {
                        let mut r = Report::new();
                        r.fail("ThetaNotAutomorphism", e.to_string());
                        r
                    }
                },
            }
        }
        Mode::CohomologyOnly => {
            let mut r = Report::new();
            r.pass("ModuleAction");
            r
        }
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_INVALID };
    let text = if report.passed() { "all checks pass".to_string() } else { report_text(&report) };
    Ok(Outcome::new(code, json!({ "mode": s.mode.as_str(), "passed": report.passed(), "report": report }), text))
}

fn module_of(s: &Scenario) -> Result<PiModule, CliError> {
    match &s.module {
        Some(m) => Ok(m.clone()),
        None => Ok(pre_of(s, "cohomology")?.module().clone()),
    }
}

fn cohomology(s: &Scenario, degree: Option<usize>, basis: bool) -> Result<Outcome, CliError> {
    let m = module_of(s)?;
    let degrees: Vec<usize> = match degree.or(s.degree) {
        Some(d) => vec![d],
        None => (1..=3).collect(),
    };
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for n in degrees {
        let h = m.cohomology_group(n)?;
        let mut row = json!({ "degree": n, "invariant_factors": h.invariant_factors(), "order": h.order().to_string() });
        if basis {
            row["basis"] = json!(h.basis().iter().map(|c| c.values().to_vec()).collect::<Vec<_>>());
        }
        text.push(format!("H^{n} = {h}"));
        rows.push(row);
    }
    Ok(Outcome::new(EXIT_OK, json!({ "cohomology": rows }), text.join("\n")))
}

fn obstruction(s: &Scenario, seed: Option<u64>, out: Option<&Path>) -> Result<Outcome, CliError> {
    let pre = pre_of(s, "obstruction")?;
    let choice = seed.map_or(SectionChoice::Canonical, SectionChoice::Seeded);
    let obs = obstruction_class_with(&pre, choice)?;
    let mut v = json!({
        "h3": obs.h3.invariant_factors(),
        "coordinates": obs.coordinates,
        "class": if obs.is_zero() { "0" } else { "nonzero" },
        "vanishes": obs.is_zero(),
        "cocycle": obs.cocycle.values(),
    });
    if !obs.is_zero() {
        let text = format!("obstruction nonzero in H^3 = {}: coordinates {:?}", obs.h3, obs.coordinates);
        return Ok(Outcome::new(EXIT_OBSTRUCTED, v, text));
    }
    let cf = build_prolongation(&pre)?;
    v["prolongation"] = prolongation_json(&cf.prolongation);
    if let Some(path) = out {
        write_json(path, &io::prolongation_to_scenario(&cf.prolongation, Some(pre.theta()), None))?;
    }
    let text = format!("obstruction class 0 in H^3 = {}; built B of order {}", obs.h3, cf.b().order());
    Ok(Outcome::new(EXIT_OK, v, text))
}

fn build(s: &Scenario, out: Option<&Path>) -> Result<Outcome, CliError> {
    let pre = pre_of(s, "build")?;
    let cf = build_prolongation(&pre)?;
    if let Some(path) = out {
        write_json(path, &io::prolongation_to_scenario(&cf.prolongation, Some(pre.theta()), None))?;
    }
    let n = pre.pi0().order();
    let v = json!({
        "prolongation": prolongation_json(&cf.prolongation),
        "section": cf.u,
        "phi": cf.phi.iter().map(|a| a.perm().to_vec()).collect::<Vec<_>>(),
        "h": cf.h.chunks(n.max(1)).map(|r| r.to_vec()).collect::<Vec<_>>(),
    });
    let text = format!("built B of order {} with order profile {:?}", cf.b().order(), cf.b().order_profile());
    Ok(Outcome::new(EXIT_OK, v, text))
}

fn classify(s: &Scenario) -> Result<Outcome, CliError> {
    let pre = pre_of(s, "classify")?;
    let h2 = pre.module().cohomology_group(2)?;
    let classes = enumerate_classes(&pre)?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| json!({ "coordinates": c.coordinates, "h": c.h, "prolongation": prolongation_json(&c.representative) }))
        .collect();
    let mut text = vec![format!("H^2 = {h2}, {} classes", classes.len())];
    for c in &classes {
        text.push(format!("  {:?}: order profile {:?}", c.coordinates, c.representative.e.b().order_profile()));
    }
    let v = json!({
        "h2": h2.invariant_factors(),
        "h2_order": h2.order().to_string(),
        "class_count": classes.len(),
        "classes": rows,
    });
    Ok(Outcome::new(EXIT_OK, v, text.join("\n")))
}

fn equiv(a: &Scenario, b: &Scenario) -> Result<Outcome, CliError> {
    let (p1, p2) = (ladder(a, "equiv")?, ladder(b, "equiv")?);
    for p in [&p1, &p2] {
        let r = validate_prolongation(p);
        if !r.passed() {
            return Err(CliError::Invalid(r));
        }
    }
    let found = are_equivalent(&p1, &p2)?;
    let mut v = json!({ "equivalent": found.is_some() });
    let text = match &found {
        Some(w) => {
            v["beta_star"] = json!(w.beta_star.map());
            "equivalent".to_string()
        }
        None => {
            v["difference"] = json!(difference_cocycle(&p1, &p2)?.values());
            "not equivalent".to_string()
        }
    };
    Ok(Outcome::new(EXIT_OK, v, text))
}

fn oracle(s: &Scenario, max_order: usize) -> Result<Outcome, CliError> {
    let pre = pre_of(s, "oracle")?;
    let obs = obstruction_class_with(&pre, SectionChoice::Canonical)?;
    let brute = brute_force_coverings(&pre, max_order)?;
    let classes = if obs.is_zero() { enumerate_classes(&pre)?.len() } else { 0 };
    let agree = obs.is_zero() == !brute.is_empty() && classes == brute.len();
    let v = json!({
        "vanishes": obs.is_zero(),
        "classes": classes,
        "brute_force": brute.len(),
        "agree": agree,
    });
    let text = format!("classes {classes}, brute force {}: {}", brute.len(), if agree { "agree" } else { "MISMATCH" });
    Ok(Outcome::new(if agree { EXIT_OK } else { EXIT_MISMATCH }, v, text))
}

fn pullback_cmd(s: &Scenario, out: Option<&Path>) -> Result<Outcome, CliError> {
    let (ext, g) = s.pullback.clone().ok_or(CliError::MissingSection("pullback"))?;
    let (pulled, phi) = pullback(&ext, &g)?;
    let v = json!({
        "b": group_json(pulled.b()),
        "j": pulled.j().map(),
        "p": pulled.p().map(),
        "phi": phi.map(),
    });
    if let Some(path) = out {
        write_json(path, &v)?;
    }
    let text = format!("pulled back to B' of order {} over G' of order {}", pulled.b().order(), pulled.g().order());
    Ok(Outcome::new(EXIT_OK, v, text))
}
