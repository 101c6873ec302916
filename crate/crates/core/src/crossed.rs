//! Crossed modules `(B, D, d, θ)` and the ones induced by prolongations.

use thiserror::Error;

use crate::cohomology::{CohomologyError, PiModule};
use crate::extension::{induced_sequence, ExtensionError, Frame, Prolongation};
use crate::group::{inner_automorphism, Automorphism, FiniteGroup, Homomorphism, QuotientData};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("not a crossed module:\n{0}")]
    Invalid(Report),
    #[error("conjugation action is not constant on the fiber over {g}")]
    FiberInconsistency { g: usize },
    #[error("conjugation by j({a}) is not the identity on E0")]
    KernelActsNontrivially { a: usize },
    #[error("theta[{g}] does not preserve the image of A")]
    KernelNotPreserved { g: usize },
    #[error("action of {x} depends on the coset representative")]
    FiberDependentAction { x: usize },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Module(#[from] CohomologyError),
}

type Result<T> = std::result::Result<T, CrossedError>;

/// `d: B → D` with `θ: D → Aut B` such that `θ_{d(b)} = μ_b` and
/// `d(θ_x(b)) = μ_x(d(b))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    d: Homomorphism,
    theta: Vec<Automorphism>,
}

impl CrossedModule {
    pub fn new(d: Homomorphism, theta: Vec<Automorphism>) -> Result<Self> {
        let report = check_parts(&d, &theta);
        if report.passed() {
            Ok(CrossedModule { d, theta })
        } else {
            Err(CrossedError::Invalid(report))
        }
    }

    pub fn b(&self) -> &FiniteGroup {
        self.d.source()
    }

    pub fn d_group(&self) -> &FiniteGroup {
        self.d.target()
    }

    pub fn d(&self) -> &Homomorphism {
        &self.d
    }

    pub fn theta(&self) -> &[Automorphism] {
        &self.theta
    }
}

pub fn check_crossed_module(cm: &CrossedModule) -> Report {
    check_parts(&cm.d, &cm.theta)
}

/// Itemized check of the crossed-module axioms for raw data.
pub fn check_parts(d: &Homomorphism, theta: &[Automorphism]) -> Report {
    let (b, dg) = (d.source(), d.target());
    let mut r = Report::new();
    if theta.len() != dg.order() {
        r.fail("ThetaShape", format!("theta has {} entries, D has order {}", theta.len(), dg.order()));
        return r;
    }
    if let Some(x) = theta.iter().position(|t| t.group() != b) {
        r.fail("ThetaShape", format!("theta[{x}] is not an automorphism of B"));
        return r;
    }
    r.pass("ThetaShape");
    let hom = dg
        .elements()
        .find_map(|x| dg.elements().find(|&y| theta[x].compose(&theta[y]) != theta[dg.mul(x, y)]).map(|y| format!("at ({x}, {y})")));
    r.check("ThetaNotHomomorphism", hom);
    let c1 = b.elements().find_map(|e| {
        let t = &theta[d.apply(e)];
        b.elements().find(|&e2| t.apply(e2) != b.conj(e, e2)).map(|e2| format!("theta[d({e})]({e2}) ≠ {e}·{e2}·{e}⁻¹"))
    });
    r.check("C1", c1);
    let c2 = dg.elements().find_map(|x| {
        b.elements()
            .find(|&e| d.apply(theta[x].apply(e)) != dg.conj(x, d.apply(e)))
            .map(|e| format!("d(theta[{x}]({e})) ≠ {x}·d({e})·{x}⁻¹"))
    });
    r.check("C2", c2);
    r
}

/// The crossed module `(E₀, G, γπ, θ)` of a prolongation, together with the
/// conjugation action `φ: B → Aut E₀` transported through `ε`.
#[derive(Debug, Clone)]
pub struct InducedCrossedModule {
    pub crossed: CrossedModule,
    pub phi: Vec<Automorphism>,
    pub frame: Frame,
    pub epsilon: Homomorphism,
}

pub fn induce_crossed_module(p: &Prolongation) -> Result<InducedCrossedModule> {
    let seq = induced_sequence(p)?;
    let b = p.e.b();
    let e0 = seq.frame.e0_group();
    let eps_inv = seq.epsilon.preimages();
    let phi: Vec<Automorphism> = b
        .elements()
        .map(|x| {
            let perm = e0.elements().map(|e| eps_inv[b.conj(x, seq.epsilon.apply(e))].expect("ε(E₀) is normal")).collect();
            Automorphism::from_perm(e0, perm).expect("conjugation is an automorphism")
        })
        .collect();
    if let Some(a) = p.e.a().elements().find(|&a| !phi[p.e.j().apply(a)].is_identity()) {
        return Err(CrossedError::KernelActsNontrivially { a });
    }
    let g = p.e.g();
    let mut theta: Vec<Option<Automorphism>> = vec![None; g.order()];
    for x in b.elements() {
        let gx = p.e.p().apply(x);
        match &theta[gx] {
            None => theta[gx] = Some(phi[x].clone()),
            Some(t) if *t != phi[x] => return Err(CrossedError::FiberInconsistency { g: gx }),
            Some(_) => {}
        }
    }
    let theta = theta.into_iter().map(|t| t.expect("p is onto")).collect();
    let crossed = CrossedModule::new(seq.frame.gamma_pi.clone(), theta)?;
    Ok(InducedCrossedModule { crossed, phi, frame: seq.frame, epsilon: seq.epsilon })
}

/// `x·a = i⁻¹ θ_{u_x}(i a)`, checked to preserve `i(A)` and to be independent
/// of the representative `u_x` of `x`.
pub fn induced_module_action(cm: &CrossedModule, i: &Homomorphism, coker: &QuotientData) -> Result<PiModule> {
    let a = i.source();
    let i_inv = i.preimages();
    let pi0 = &coker.quotient;
    let mut action = Vec::with_capacity(pi0.order());
    for x in pi0.elements() {
        let mut chosen: Option<Vec<usize>> = None;
        for g in coker.fiber(x) {
            let t = &cm.theta()[g];
            let perm: Option<Vec<usize>> = a.elements().map(|v| i_inv[t.apply(i.apply(v))]).collect();
            let perm = perm.ok_or(CrossedError::KernelNotPreserved { g })?;
            match &chosen {
                None => chosen = Some(perm),
                Some(c) if *c != perm => return Err(CrossedError::FiberDependentAction { x }),
                Some(_) => {}
            }
        }
        let perm = chosen.expect("cosets are nonempty");
        action.push(Automorphism::from_perm(a, perm).map_err(|_| CrossedError::KernelNotPreserved { g: coker.reps[x] })?);
    }
    Ok(PiModule::new(pi0.clone(), a.clone(), action)?)
}

/// Conjugation crossed module `(B, B, id, μ)`.
pub fn conjugation_crossed_module(b: &FiniteGroup) -> CrossedModule {
    let theta = b.elements().map(|x| inner_automorphism(b, x)).collect();
    CrossedModule { d: Homomorphism::identity(b), theta }
}
