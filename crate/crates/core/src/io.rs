//! JSON formats for groups, homomorphisms, cocycles, θ-tables and scenarios.
//!
//! Group references are either a fixture name (`"S3"`, `"Z4"`, …) or an
//! inline `{"name", "order", "table", "labels"?}` object. When the
//! `PROLONG_FIXTURES` environment variable names a directory, a reference
//! `"X"` is first looked up as `X.json` there.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cohomology::{Cochain, CohomologyError, PiModule};
use crate::extension::{make_extension, ExtensionError, Frame, Prolongation, ShortExtension};
use crate::fixtures;
use crate::group::{Automorphism, FiniteGroup, GroupError, Homomorphism, HomomorphismError};
use crate::obstruction::PreProlongation;

/// Largest group order accepted from JSON.
pub const MAX_LOADED_ORDER: usize = 256;

pub const FIXTURE_ENV: &str = "PROLONG_FIXTURES";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("unknown homomorphism {0:?}")]
    UnknownHomomorphism(String),
    #[error("missing field {0:?}")]
    MissingField(&'static str),
    #[error("group {name:?} declares order {declared} but its table has {actual} rows")]
    OrderMismatch { name: String, declared: usize, actual: usize },
    #[error("group {name:?} has order {order}, above the loader bound {bound}")]
    TooLarge { name: String, order: usize, bound: usize },
    #[error("group {name:?}: {source}")]
    Group { name: String, source: GroupError },
    #[error("homomorphism {name:?}: {source}")]
    Homomorphism { name: String, source: HomomorphismError },
    #[error("{what} entry {index} is not an automorphism: {source}")]
    Automorphism { what: &'static str, index: usize, source: HomomorphismError },
    #[error("extension {name:?}: {source}")]
    Extension { name: &'static str, source: ExtensionError },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("scenario mode {mode} needs {need}")]
    Incomplete { mode: &'static str, need: &'static str },
}

type Result<T> = std::result::Result<T, IoError>;

fn json_err(e: serde_json::Error) -> IoError {
    IoError::Json(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismJson {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

impl GroupJson {
    pub fn from_group(name: &str, g: &FiniteGroup) -> Self {
        GroupJson { name: name.to_string(), order: g.order(), table: g.table_rows(), labels: g.labels().map(|l| l.to_vec()) }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        let name = self.name;
        if self.order > MAX_LOADED_ORDER || self.table.len() > MAX_LOADED_ORDER {
            return Err(IoError::TooLarge { order: self.order.max(self.table.len()), name, bound: MAX_LOADED_ORDER });
        }
        if self.order != self.table.len() {
            return Err(IoError::OrderMismatch { name, declared: self.order, actual: self.table.len() });
        }
        FiniteGroup::from_table(self.table, self.labels).map_err(|source| IoError::Group { name, source })
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let g: GroupJson = serde_json::from_str(text).map_err(json_err)?;
    g.into_group()
}

pub fn group_to_json(name: &str, g: &FiniteGroup) -> Value {
    serde_json::to_value(GroupJson::from_group(name, g)).expect("serializable")
}

fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_ENV).map(PathBuf::from)
}

/// Resolves a fixture name, consulting the override directory first.
pub fn resolve_group_name(name: &str) -> Result<FiniteGroup> {
    if let Some(dir) = fixture_dir() {
        // Names are plain identifiers; never let them escape the directory.
        if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            let path = dir.join(format!("{name}.json"));
            if path.is_file() {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })?;
                return parse_group(&text);
            }
        }
    }
    fixtures::by_name(name).ok_or_else(|| IoError::UnknownGroup(name.to_string()))
}

pub fn resolve_group(r: GroupRef) -> Result<FiniteGroup> {
    match r {
        GroupRef::Name(n) => resolve_group_name(&n),
        GroupRef::Inline(g) => g.into_group(),
    }
}

pub fn parse_homomorphism(text: &str, groups: &BTreeMap<String, FiniteGroup>) -> Result<Homomorphism> {
    let h: HomomorphismJson = serde_json::from_str(text).map_err(json_err)?;
    resolve_homomorphism("homomorphism", h, groups)
}

fn lookup<'a>(groups: &'a BTreeMap<String, FiniteGroup>, name: &str) -> Result<&'a FiniteGroup> {
    groups.get(name).ok_or_else(|| IoError::UnknownGroup(name.to_string()))
}

fn resolve_homomorphism(name: &str, h: HomomorphismJson, groups: &BTreeMap<String, FiniteGroup>) -> Result<Homomorphism> {
    let s = lookup(groups, &h.source)?.clone();
    let t = lookup(groups, &h.target)?.clone();
    Homomorphism::new(s, t, h.map).map_err(|source| IoError::Homomorphism { name: name.to_string(), source })
}

pub fn homomorphism_to_json(source: &str, target: &str, h: &Homomorphism) -> Value {
    json!({ "source": source, "target": target, "map": h.map() })
}

/// Validates a list of permutations as automorphisms of `g`.
pub fn automorphisms_from_perms(what: &'static str, g: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Vec<Automorphism>> {
    perms
        .into_iter()
        .enumerate()
        .map(|(index, p)| Automorphism::from_perm(g, p).map_err(|source| IoError::Automorphism { what, index, source }))
        .collect()
}

/// θ JSON: an array over `G` of permutations of `E₀`.
pub fn parse_theta(text: &str, e0: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<Automorphism>> {
    let perms: Vec<Vec<usize>> = serde_json::from_str(text).map_err(json_err)?;
    if perms.len() != g.order() {
        return Err(IoError::Incomplete { mode: "theta", need: "one permutation per element of G" });
    }
    automorphisms_from_perms("theta", e0, perms)
}

pub fn theta_to_json(theta: &[Automorphism]) -> Value {
    Value::Array(theta.iter().map(|t| json!(t.perm())).collect())
}

#[derive(Debug, Clone, Deserialize)]
pub struct CocycleJson {
    pub degree: usize,
    pub pi: GroupRef,
    pub a: GroupRef,
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    pub values: Vec<usize>,
}

fn module_from(pi: FiniteGroup, a: FiniteGroup, action: Option<Vec<Vec<usize>>>) -> Result<PiModule> {
    match action {
        None => Ok(PiModule::trivial(pi, a)?),
        Some(perms) => {
            let auts = automorphisms_from_perms("action", &a, perms)?;
            Ok(PiModule::new(pi, a, auts)?)
        }
    }
}

/// Cocycle JSON: `{"degree", "pi", "a", "action"?, "values"}` with values in
/// row-major order over argument tuples.
pub fn parse_cocycle(text: &str) -> Result<(PiModule, Cochain)> {
    let c: CocycleJson = serde_json::from_str(text).map_err(json_err)?;
    let pi = resolve_group(c.pi)?;
    let a = resolve_group(c.a)?;
    let m = module_from(pi, a, c.action)?;
    let cochain = m.cochain(c.degree, c.values)?;
    Ok((m, cochain))
}

pub fn cochain_to_json(pi: &str, a: &str, m: &PiModule, c: &Cochain) -> Value {
    let mut v = json!({ "degree": c.degree(), "pi": pi, "a": a, "values": c.values() });
    if !m.is_trivial_action() {
        v["action"] = json!(m.action().iter().map(|t| t.perm().to_vec()).collect::<Vec<_>>());
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PreProlongation,
    FullLadder,
    CohomologyOnly,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::PreProlongation => "pre-prolongation",
            Mode::FullLadder => "full-ladder",
            Mode::CohomologyOnly => "cohomology-only",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct ExtensionJson {
    j: String,
    p: String,
}

#[derive(Debug, Clone, Deserialize)]
struct LadderJson {
    j: String,
    p: String,
    beta: String,
}

#[derive(Debug, Clone, Deserialize)]
struct PullbackJson {
    extension: ExtensionJson,
    map: String,
}

#[derive(Debug, Clone, Deserialize)]
struct CohomologyJson {
    pi: String,
    a: String,
    #[serde(default)]
    action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    degree: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
struct ScenarioJson {
    mode: Mode,
    #[serde(default)]
    description: Option<String>,
    groups: BTreeMap<String, GroupRef>,
    #[serde(default)]
    homomorphisms: BTreeMap<String, HomomorphismJson>,
    #[serde(default)]
    extension0: Option<ExtensionJson>,
    #[serde(default)]
    alpha: Option<String>,
    #[serde(default)]
    gamma: Option<String>,
    #[serde(default)]
    theta: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    ladder: Option<LadderJson>,
    #[serde(default)]
    pullback: Option<PullbackJson>,
    #[serde(default)]
    cohomology: Option<CohomologyJson>,
}

/// A loaded scenario with every reference resolved and every table validated.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub mode: Mode,
    pub description: Option<String>,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub homomorphisms: BTreeMap<String, Homomorphism>,
    pub e0: Option<ShortExtension>,
    pub alpha: Option<Homomorphism>,
    pub gamma: Option<Homomorphism>,
    /// θ as raw permutations; they are checked against `E₀` once the frame exists.
    pub theta: Option<Vec<Vec<usize>>>,
    pub ladder: Option<Prolongation>,
    pub pullback: Option<(ShortExtension, Homomorphism)>,
    pub module: Option<PiModule>,
    pub degree: Option<usize>,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: ScenarioJson = serde_json::from_str(text).map_err(json_err)?;
    let mut groups = BTreeMap::new();
    for (name, r) in raw.groups {
        groups.insert(name, resolve_group(r)?);
    }
    let mut homomorphisms = BTreeMap::new();
    for (name, h) in raw.homomorphisms {
        let hom = resolve_homomorphism(&name, h, &groups)?;
        homomorphisms.insert(name, hom);
    }
    let hom = |name: &str| homomorphisms.get(name).cloned().ok_or_else(|| IoError::UnknownHomomorphism(name.to_string()));
    let ext = |label: &'static str, j: &str, p: &str| -> Result<ShortExtension> {
        make_extension(hom(j)?, hom(p)?).map_err(|source| IoError::Extension { name: label, source })
    };
    let e0 = raw.extension0.as_ref().map(|e| ext("extension0", &e.j, &e.p)).transpose()?;
    let alpha = raw.alpha.as_deref().map(hom).transpose()?;
    let gamma = raw.gamma.as_deref().map(hom).transpose()?;
    let ladder = match &raw.ladder {
        None => None,
        Some(l) => {
            let e = ext("ladder", &l.j, &l.p)?;
            let need = |v: Option<Homomorphism>, what| v.ok_or(IoError::Incomplete { mode: "full-ladder", need: what });
            Some(Prolongation {
                e0: e0.clone().ok_or(IoError::Incomplete { mode: "full-ladder", need: "extension0" })?,
                e,
                alpha: need(alpha.clone(), "alpha")?,
                beta: hom(&l.beta)?,
                gamma: need(gamma.clone(), "gamma")?,
            })
        }
    };
    let pullback = match &raw.pullback {
        None => None,
        Some(pb) => Some((ext("pullback", &pb.extension.j, &pb.extension.p)?, hom(&pb.map)?)),
    };
    let (module, degree) = match raw.cohomology {
        None => (None, None),
        Some(c) => {
            if c.degree.is_some_and(|d| !(1..=3).contains(&d)) {
                return Err(CohomologyError::DegreeOutOfRange(c.degree.unwrap_or(0)).into());
            }
            let pi = lookup(&groups, &c.pi)?.clone();
            let a = lookup(&groups, &c.a)?.clone();
            (Some(module_from(pi, a, c.action)?), c.degree)
        }
    };
    let s = Scenario {
        mode: raw.mode,
        description: raw.description,
        groups,
        homomorphisms,
        e0,
        alpha,
        gamma,
        theta: raw.theta,
        ladder,
        pullback,
        module,
        degree,
    };
    let missing = |need| Err(IoError::Incomplete { mode: s.mode.as_str(), need });
    match s.mode {
        Mode::PreProlongation if s.e0.is_none() => missing("extension0"),
        Mode::PreProlongation if s.alpha.is_none() => missing("alpha"),
        Mode::PreProlongation if s.gamma.is_none() => missing("gamma"),
        Mode::PreProlongation if s.theta.is_none() => missing("theta"),
        Mode::FullLadder if s.ladder.is_none() => missing("ladder"),
        Mode::CohomologyOnly if s.module.is_none() => missing("cohomology"),
        _ => Ok(s),
    }
}

impl Scenario {
    /// θ validated against `E₀` of the given frame.
    pub fn theta_for(&self, frame: &Frame) -> Result<Option<Vec<Automorphism>>> {
        match &self.theta {
            None => Ok(None),
            Some(perms) => {
                if perms.len() != frame.g().order() {
                    return Err(IoError::Incomplete { mode: "theta", need: "one permutation per element of G" });
                }
                automorphisms_from_perms("theta", frame.e0_group(), perms.clone()).map(Some)
            }
        }
    }
}

/// A fixture name when `g` is literally a shipped fixture, else an inline table.
pub fn group_ref_json(name: &str, g: &FiniteGroup) -> Value {
    match fixtures::all().into_iter().find(|(_, f)| f == g) {
        Some((fixture, _)) => json!(fixture),
        None => group_to_json(name, g),
    }
}

fn with_description(mut v: Value, description: Option<&str>) -> Value {
    if let Some(d) = description {
        v["description"] = json!(d);
    }
    v
}

/// A pre-prolongation scenario for `(ℰ₀, α, γ, θ)`.
pub fn pre_to_scenario(pre: &PreProlongation, description: Option<&str>) -> Value {
    let e0 = pre.e0ext();
    let mut groups = serde_json::Map::new();
    for (name, g) in [("A0", e0.a()), ("B0", e0.b()), ("G0", e0.g()), ("A", pre.a()), ("G", pre.g())] {
        groups.insert(name.to_string(), group_ref_json(name, g));
    }
    let v = json!({
        "mode": "pre-prolongation",
        "groups": groups,
        "homomorphisms": {
            "j0": homomorphism_to_json("A0", "B0", e0.j()),
            "p0": homomorphism_to_json("B0", "G0", e0.p()),
            "alpha": homomorphism_to_json("A0", "A", pre.alpha()),
            "gamma": homomorphism_to_json("G0", "G", pre.gamma()),
        },
        "extension0": { "j": "j0", "p": "p0" },
        "alpha": "alpha",
        "gamma": "gamma",
        "theta": theta_to_json(pre.theta()),
    });
    with_description(v, description)
}

/// A full-ladder scenario describing `p`, optionally carrying θ.
pub fn prolongation_to_scenario(p: &Prolongation, theta: Option<&[Automorphism]>, description: Option<&str>) -> Value {
    let mut groups = serde_json::Map::new();
    for (name, g) in [("A0", p.e0.a()), ("B0", p.e0.b()), ("G0", p.e0.g()), ("A", p.e.a()), ("B", p.e.b()), ("G", p.e.g())] {
        groups.insert(name.to_string(), group_ref_json(name, g));
    }
    let homs = json!({
        "j0": homomorphism_to_json("A0", "B0", p.e0.j()),
        "p0": homomorphism_to_json("B0", "G0", p.e0.p()),
        "j": homomorphism_to_json("A", "B", p.e.j()),
        "p": homomorphism_to_json("B", "G", p.e.p()),
        "alpha": homomorphism_to_json("A0", "A", &p.alpha),
        "beta": homomorphism_to_json("B0", "B", &p.beta),
        "gamma": homomorphism_to_json("G0", "G", &p.gamma),
    });
    let mut v = json!({
        "mode": "full-ladder",
        "groups": groups,
        "homomorphisms": homs,
        "extension0": { "j": "j0", "p": "p0" },
        "alpha": "alpha",
        "gamma": "gamma",
        "ladder": { "j": "j", "p": "p", "beta": "beta" },
    });
    if let Some(t) = theta {
        v["theta"] = theta_to_json(t);
    }
    with_description(v, description)
}
