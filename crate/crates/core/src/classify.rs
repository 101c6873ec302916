//! Equivalence of prolongations, reduction to crossed products, the
//! `H²(Π₀, A)`-torsor of coverings, and an exhaustive covering search.

use thiserror::Error;

use crate::cohomology::{Cochain, CohomologyError};
use crate::crossed::CrossedError;
use crate::extension::{induced_sequence, ExtensionError, InducedSequence, Prolongation};
use crate::group::Homomorphism;
use crate::obstruction::{
    build_prolongation, crossed_product_prolongation, crossed_product_unchecked, lift_factor_set, twist, verify_covering, CrossedForm,
    ObstructionError, PreProlongation, SectionChoice,
};

/// Default cap on `|B|` for the exhaustive covering search.
pub const DEFAULT_MAX_ORDER: usize = 16;

/// Cap on the number of candidate maps examined by a single search.
pub const SEARCH_BOUND: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("prolongations do not share E0, alpha and gamma")]
    MismatchedFrame,
    #[error("search space of {size} candidates exceeds the bound {bound}")]
    SearchBoundExceeded { size: u128, bound: u128 },
    #[error("value h1({x},{y})⁻¹·h2({x},{y}) does not lie in the image of A")]
    NotInKernel { x: usize, y: usize },
    #[error("difference is not a 2-cocycle")]
    NotCocycle,
    #[error("classes {0} and {1} are equivalent")]
    TorsorNotFree(usize, usize),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

type Result<T> = std::result::Result<T, ClassifyError>;

/// A bijection `β*: B → B′` with `β*j = j′`, `p′β* = p` and `β*β = β′`.
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub source: Prolongation,
    pub target: Prolongation,
    pub beta_star: Homomorphism,
}

impl EquivalenceWitness {
    pub fn check(source: &Prolongation, target: &Prolongation, beta_star: &Homomorphism) -> bool {
        let (p1, p2) = (source, target);
        beta_star.source() == p1.e.b()
            && beta_star.target() == p2.e.b()
            && beta_star.is_bijective()
            && p1.e.a() == p2.e.a()
            && p1.e.g() == p2.e.g()
            && p1.e0.b() == p2.e0.b()
            && p1.e.a().elements().all(|a| beta_star.apply(p1.e.j().apply(a)) == p2.e.j().apply(a))
            && p1.e.b().elements().all(|b| p2.e.p().apply(beta_star.apply(b)) == p1.e.p().apply(b))
            && p1.e0.b().elements().all(|b0| beta_star.apply(p1.beta.apply(b0)) == p2.beta.apply(b0))
    }

    pub fn verify(&self) -> bool {
        Self::check(&self.source, &self.target, &self.beta_star)
    }

    pub fn inverse(&self) -> EquivalenceWitness {
        EquivalenceWitness {
            source: self.target.clone(),
            target: self.source.clone(),
            beta_star: self.beta_star.inverse().expect("bijective"),
        }
    }

    /// `other ∘ self`, defined when `self.target` is `other.source`.
    pub fn compose(&self, other: &EquivalenceWitness) -> Option<EquivalenceWitness> {
        let beta_star = self.beta_star.then(&other.beta_star).ok()?;
        let w = EquivalenceWitness { source: self.source.clone(), target: other.target.clone(), beta_star };
        w.verify().then_some(w)
    }
}

fn same_frame(p1: &Prolongation, p2: &Prolongation) -> bool {
    p1.e0 == p2.e0 && p1.alpha == p2.alpha && p1.gamma == p2.gamma && p1.e.a() == p2.e.a() && p1.e.g() == p2.e.g()
}

/// Searches for an equivalence `P1 → P2`. `β*` is forced on `ε₁(E₀)`; only
/// the images of one representative per generator of `Π₀` are searched, each
/// among the `|A|` elements of a `p₂`-fiber.
pub fn are_equivalent(p1: &Prolongation, p2: &Prolongation) -> Result<Option<EquivalenceWitness>> {
    if !same_frame(p1, p2) {
        return Err(ClassifyError::MismatchedFrame);
    }
    let (b1, b2) = (p1.e.b(), p2.e.b());
    if b1.order() != b2.order() || b1.order_profile() != b2.order_profile() {
        return Ok(None);
    }
    let s1 = induced_sequence(p1)?;
    let s2 = induced_sequence(p2)?;
    let e0 = s1.frame.e0_group();
    let pi0 = s1.frame.pi0();
    let e_gens = e0.greedy_generators();
    let x_gens = pi0.greedy_generators();
    let sp1 = s1.ext.p();
    let reps: Vec<usize> = x_gens.iter().map(|&x| b1.elements().find(|&b| sp1.apply(b) == x).expect("onto")).collect();
    let candidates: Vec<Vec<usize>> =
        reps.iter().map(|&w| b2.elements().filter(|&b| p2.e.p().apply(b) == p1.e.p().apply(w)).collect()).collect();
    let size: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if size > SEARCH_BOUND {
        return Err(ClassifyError::SearchBoundExceeded { size, bound: SEARCH_BOUND });
    }
    let mut gens: Vec<usize> = e_gens.iter().map(|&e| s1.epsilon.apply(e)).collect();
    gens.extend(&reps);
    let fixed: Vec<usize> = e_gens.iter().map(|&e| s2.epsilon.apply(e)).collect();
    let tree = b1.word_tree(&gens);
    let order = b1.word_order(&tree);
    debug_assert!(tree.iter().skip(1).all(|t| t.is_some()));

    let mut choice = vec![0usize; candidates.len()];
    loop {
        let mut images = fixed.clone();
        images.extend(choice.iter().zip(&candidates).map(|(&k, c)| c[k]));
        let mut map = vec![0; b1.order()];
        for &x in order.iter().skip(1) {
            let (p, j) = tree[x].expect("generated");
            map[x] = b2.mul(map[p], images[j]);
        }
        if let Ok(h) = Homomorphism::new(b1.clone(), b2.clone(), map) {
            if EquivalenceWitness::check(p1, p2, &h) {
                return Ok(Some(EquivalenceWitness { source: p1.clone(), target: p2.clone(), beta_star: h }));
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// The crossed-product form of `p` over the least-index section, with the
/// witness `ε(e)·v_x ↦ (e, x)`.
pub fn to_crossed_product(p: &Prolongation) -> Result<(CrossedForm, EquivalenceWitness)> {
    let pre = PreProlongation::from_prolongation(p)?;
    let seq = induced_sequence(p)?;
    to_crossed_product_with(p, &pre, &seq)
}

fn to_crossed_product_with(p: &Prolongation, pre: &PreProlongation, seq: &InducedSequence) -> Result<(CrossedForm, EquivalenceWitness)> {
    let b = p.e.b();
    let pi0 = pre.pi0();
    let n = pi0.order();
    let u = pre.frame().section().to_vec();
    let v: Vec<usize> = u.iter().map(|&g| b.elements().find(|&x| p.e.p().apply(x) == g).expect("p is onto")).collect();
    let eps_inv = seq.epsilon.preimages();
    let mut h = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let w = b.mul(b.mul(v[x], v[y]), b.inv(v[pi0.mul(x, y)]));
            h[x * n + y] = eps_inv[w].expect("lies over γ(G₀)");
        }
    }
    let cf = crossed_product_prolongation(pre, &u, pre.phi(), &h, true)?;
    let sp = seq.ext.p();
    let map = b
        .elements()
        .map(|x| {
            let c = sp.apply(x);
            let e = eps_inv[b.mul(x, b.inv(v[c]))].expect("lies in ε(E₀)");
            e * n + c
        })
        .collect();
    let beta_star = Homomorphism::new(b.clone(), cf.b().clone(), map).map_err(ExtensionError::from)?;
    let w = EquivalenceWitness { source: p.clone(), target: cf.prolongation.clone(), beta_star };
    assert!(w.verify(), "crossed-product witness fails a commuting condition");
    Ok((cf, w))
}

/// `r = h₁⁻¹h₂` transported to `A`, for two coverings of the same `θ`.
pub fn difference_cocycle(p1: &Prolongation, p2: &Prolongation) -> Result<Cochain> {
    if !same_frame(p1, p2) {
        return Err(ClassifyError::MismatchedFrame);
    }
    let pre = PreProlongation::from_prolongation(p1)?;
    if !verify_covering(p2, &pre)? {
        return Err(ClassifyError::MismatchedFrame);
    }
    let (c1, _) = to_crossed_product(p1)?;
    let (c2, _) = to_crossed_product(p2)?;
    difference_of_forms(&pre, &c1.h, &c2.h)
}

pub(crate) fn difference_of_forms(pre: &PreProlongation, h1: &[usize], h2: &[usize]) -> Result<Cochain> {
    let e0 = pre.e0_group();
    let n = pre.pi0().order();
    let i_inv = pre.frame().i.preimages();
    let mut values = vec![0; n * n];
    for k in 0..n * n {
        let r = e0.mul(e0.inv(h1[k]), h2[k]);
        values[k] = i_inv[r].ok_or(ClassifyError::NotInKernel { x: k / n, y: k % n })?;
    }
    let r = pre.module().cochain(2, values)?;
    if !pre.module().is_cocycle(&r) {
        return Err(ClassifyError::NotCocycle);
    }
    Ok(r)
}

/// The class of `p` relative to a base covering, `difference_cocycle(base, p)`.
pub fn classifying_cocycle_relative(p: &Prolongation, base: &Prolongation) -> Result<Cochain> {
    difference_cocycle(base, p)
}

/// `[E₀, φ, h, Π₀] ↦ [E₀, φ, h + τ, Π₀]` for `τ` given by coordinates in `H²`.
pub fn torsor_act(tau: &[u64], p: &Prolongation) -> Result<Prolongation> {
    let (cf, _) = to_crossed_product(p)?;
    let pre = PreProlongation::from_prolongation(p)?;
    let h2 = pre.module().cohomology_group(2)?;
    let rep = h2.representative(tau);
    let h = twist(&pre, &cf.h, &rep);
    Ok(crossed_product_prolongation(&pre, &cf.u, &cf.phi, &h, true)?.prolongation)
}

/// One covering per element of `H²(Π₀, A)`.
#[derive(Debug, Clone)]
pub struct ProlongationClass {
    pub representative: Prolongation,
    pub h: Vec<usize>,
    pub coordinates: Vec<u64>,
}

pub fn enumerate_classes(pre: &PreProlongation) -> Result<Vec<ProlongationClass>> {
    let base = build_prolongation(pre)?;
    let h2 = pre.module().cohomology_group(2)?;
    let mut out = Vec::new();
    for coords in h2.elements() {
        let h = twist(pre, &base.h, &h2.representative(&coords));
        let cf = crossed_product_prolongation(pre, &base.u, &base.phi, &h, true)?;
        out.push(ProlongationClass { representative: cf.prolongation, h, coordinates: coords });
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if are_equivalent(&out[i].representative, &out[j].representative)?.is_some() {
                return Err(ClassifyError::TorsorNotFree(i, j));
            }
        }
    }
    Ok(out)
}

/// Every covering of `pre` up to equivalence, found by trying all normalized
/// lifts `h` of the factor set; independent of any cohomology computation.
pub fn brute_force_coverings(pre: &PreProlongation, max_order: usize) -> Result<Vec<Prolongation>> {
    let order = pre.a().order() * pre.g().order();
    if order > max_order {
        return Err(ClassifyError::SearchBoundExceeded { size: order as u128, bound: max_order as u128 });
    }
    let lift = lift_factor_set(pre, SectionChoice::Canonical);
    let n = pre.pi0().order();
    let e0 = pre.e0_group();
    let gp = &pre.frame().gamma_pi;
    let slots: Vec<usize> = (0..n * n).filter(|&k| k / n != 0 && k % n != 0).collect();
    let fibers: Vec<Vec<usize>> = slots.iter().map(|&k| e0.elements().filter(|&e| gp.apply(e) == lift.f[k]).collect()).collect();
    let size: u128 = fibers.iter().map(|f| f.len() as u128).product();
    if size > SEARCH_BOUND {
        return Err(ClassifyError::SearchBoundExceeded { size, bound: SEARCH_BOUND });
    }
    let mut found: Vec<CrossedForm> = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    loop {
        let mut h = vec![0; n * n];
        for (s, &k) in slots.iter().enumerate() {
            h[k] = fibers[s][choice[s]];
        }
        if crossed_product_unchecked(e0, &lift.phi, &h, pre.pi0()).is_ok() {
            let cf = crossed_product_prolongation(pre, &lift.u, &lift.phi, &h, false)?;
            if cf.prolongation.validate().passed() && verify_covering(&cf.prolongation, pre)? {
                found.push(cf);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                break;
            }
            choice[k] += 1;
            if choice[k] < fibers[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    found.sort_by_key(|a| a.b().table_rows());
    let mut classes: Vec<Prolongation> = Vec::new();
    for cf in found {
        let mut new = true;
        for c in &classes {
            if are_equivalent(c, &cf.prolongation)?.is_some() {
                new = false;
                break;
            }
        }
        if new {
            classes.push(cf.prolongation);
        }
    }
    Ok(classes)
}
