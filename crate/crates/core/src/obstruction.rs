//! Pre-prolongations `(α, γ, θ)`, their obstruction class in `H³(Π₀, A)` and
//! the crossed-product construction of a covering when that class vanishes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cohomology::{Cochain, CohomologyError, CohomologyGroup, PiModule};
use crate::crossed::{check_parts, induce_crossed_module, induced_module_action, CrossedError, CrossedModule};
use crate::extension::{
    base_report, factor_set, make_extension, validate_prolongation, ExtensionError, Frame, Prolongation, Section, ShortExtension,
};
use crate::group::{Automorphism, FiniteGroup, GroupError, Homomorphism};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("invalid pre-prolongation:\n{0}")]
    InvalidPre(Report),
    #[error("left and right differences disagree at ({x}, {y}, {z})")]
    NotCentralValue { x: usize, y: usize, z: usize },
    #[error("value at ({x}, {y}, {z}) does not lie in the image of A")]
    NotInKernel { x: usize, y: usize, z: usize },
    #[error("obstruction cochain is not a cocycle")]
    NotCocycle,
    #[error("{law} fails at ({x}, {y}, {z})")]
    PreconditionFailed { law: &'static str, x: usize, y: usize, z: usize },
    #[error("crossed-product pairing is not a group operation: {0}")]
    PairingNotAssociative(GroupError),
    #[error("obstruction class {coordinates:?} in H³ = {factors:?} is nonzero")]
    ObstructionNonzero { factors: Vec<u64>, coordinates: Vec<u64> },
    #[error("prolongation and pre-prolongation have different base data")]
    MismatchedBase,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

type Result<T> = std::result::Result<T, ObstructionError>;

/// `(α, γ, θ)` over a central `ℰ₀` with `(E₀, G, γπ, θ)` a crossed module,
/// together with the derived frame, `φ(x) = θ_{u_x}` and the `Π₀`-module `A`.
#[derive(Debug, Clone)]
pub struct PreProlongation {
    frame: Frame,
    crossed: CrossedModule,
    module: PiModule,
    phi: Vec<Automorphism>,
}

/// Itemized check of every pre-prolongation invariant.
pub fn validate_pre(e0: &ShortExtension, alpha: &Homomorphism, gamma: &Homomorphism, theta: &[Automorphism]) -> Report {
    let mut r = Report::new();
    if !base_report(e0, alpha, gamma, &mut r) || !r.passed() {
        return r;
    }
    let frame = match Frame::new(e0, alpha, gamma) {
        Ok(f) => f,
        Err(e) => {
            r.fail("Frame", e.to_string());
            return r;
        }
    };
    let cm = check_parts(&frame.gamma_pi, theta);
    let ok = cm.passed();
    r.extend(cm);
    if ok {
        let crossed = CrossedModule::new(frame.gamma_pi.clone(), theta.to_vec()).expect("checked");
        r.check("ModuleAction", induced_module_action(&crossed, &frame.i, &frame.coker).err().map(|e| e.to_string()));
    }
    r
}

impl PreProlongation {
    pub fn new(e0: ShortExtension, alpha: Homomorphism, gamma: Homomorphism, theta: Vec<Automorphism>) -> Result<Self> {
        let report = validate_pre(&e0, &alpha, &gamma, &theta);
        if !report.passed() {
            return Err(ObstructionError::InvalidPre(report));
        }
        let frame = Frame::new(&e0, &alpha, &gamma)?;
        let crossed = CrossedModule::new(frame.gamma_pi.clone(), theta)?;
        let module = induced_module_action(&crossed, &frame.i, &frame.coker)?;
        let phi = frame.section().iter().map(|&g| crossed.theta()[g].clone()).collect();
        Ok(PreProlongation { frame, crossed, module, phi })
    }

    /// The pre-prolongation whose `θ` is induced by a valid prolongation.
    pub fn from_prolongation(p: &Prolongation) -> Result<Self> {
        let ind = induce_crossed_module(p)?;
        Self::new(p.e0.clone(), p.alpha.clone(), p.gamma.clone(), ind.crossed.theta().to_vec())
    }

    pub fn report(&self) -> Report {
        validate_pre(&self.frame.e0ext, &self.frame.alpha, &self.frame.gamma, self.crossed.theta())
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn e0ext(&self) -> &ShortExtension {
        &self.frame.e0ext
    }

    pub fn alpha(&self) -> &Homomorphism {
        &self.frame.alpha
    }

    pub fn gamma(&self) -> &Homomorphism {
        &self.frame.gamma
    }

    pub fn theta(&self) -> &[Automorphism] {
        self.crossed.theta()
    }

    pub fn crossed(&self) -> &CrossedModule {
        &self.crossed
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    /// `φ(x) = θ_{u_x}` for the least-index section `u`.
    pub fn phi(&self) -> &[Automorphism] {
        &self.phi
    }

    pub fn e0_group(&self) -> &FiniteGroup {
        self.frame.e0_group()
    }

    pub fn pi0(&self) -> &FiniteGroup {
        self.frame.pi0()
    }

    pub fn a(&self) -> &FiniteGroup {
        self.frame.a()
    }

    pub fn g(&self) -> &FiniteGroup {
        self.frame.g()
    }

    /// `E₀`-elements over each element of `G` under `γπ`.
    fn gamma_pi_fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.g().order()];
        for e in self.e0_group().elements() {
            fibers[self.frame.gamma_pi.apply(e)].push(e);
        }
        fibers
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionChoice {
    /// Least index in every fiber.
    Canonical,
    /// Uniformly random fiber elements from a seeded stream.
    Seeded(u64),
}

/// A section `u` of `σ: G → Π₀`, its factor set `f` (values in `γ(G₀)`), the
/// induced `φ(x) = θ_{u_x}`, and a normalized lift `h` with `γπ h = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedFactorSet {
    pub u: Vec<usize>,
    pub f: Vec<usize>,
    pub phi: Vec<Automorphism>,
    pub h: Vec<usize>,
}

pub fn lift_factor_set(pre: &PreProlongation, choice: SectionChoice) -> LiftedFactorSet {
    let frame = pre.frame();
    let n = pre.pi0().order();
    let mut rng = match choice {
        SectionChoice::Canonical => None,
        SectionChoice::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
    };
    let mut pick = |options: &[usize]| match rng.as_mut() {
        None => options[0],
        Some(r) => options[r.gen_range(0..options.len())],
    };
    let u: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { pick(&frame.coker.fiber(x)) }).collect();
    let ext = frame.cokernel_extension();
    let s = Section::new(&ext, u.clone()).expect("coset representatives");
    let f0 = factor_set(&ext, &s).expect("section of σ");
    let f: Vec<usize> = f0.values().iter().map(|&g0| pre.gamma().apply(g0)).collect();
    let fibers = pre.gamma_pi_fibers();
    let h = (0..n * n).map(|k| if k / n == 0 || k % n == 0 { 0 } else { pick(&fibers[f[k]]) }).collect();
    let phi = u.iter().map(|&g| pre.theta()[g].clone()).collect();
    LiftedFactorSet { u, f, phi, h }
}

/// `k(x,y,z) = L·R⁻¹` with `L = φ(x)h(y,z)·h(x,yz)` and `R = h(x,y)·h(xy,z)`,
/// transported to `A` and checked to be a normalized 3-cocycle.
pub fn obstruction_cocycle(pre: &PreProlongation, lfs: &LiftedFactorSet) -> Result<Cochain> {
    let (e0, pi0, m) = (pre.e0_group(), pre.pi0(), pre.module());
    let n = pi0.order();
    let i_inv = pre.frame().i.preimages();
    let mut values = vec![0; n * n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let h = |a: usize, b: usize| lfs.h[a * n + b];
                let l = e0.mul(lfs.phi[x].apply(h(y, z)), h(x, pi0.mul(y, z)));
                let r = e0.mul(h(x, y), h(pi0.mul(x, y), z));
                let k = e0.mul(l, e0.inv(r));
                if e0.mul(e0.inv(r), l) != k {
                    return Err(ObstructionError::NotCentralValue { x, y, z });
                }
                values[(x * n + y) * n + z] = i_inv[k].ok_or(ObstructionError::NotInKernel { x, y, z })?;
            }
        }
    }
    let k = m.cochain(3, values)?;
    if !m.is_cocycle(&k) {
        return Err(ObstructionError::NotCocycle);
    }
    Ok(k)
}

/// `Obs(α, γ, θ)`: the class of `k` together with the data it came from.
#[derive(Debug, Clone)]
pub struct Obstruction {
    pub h3: CohomologyGroup,
    pub coordinates: Vec<u64>,
    pub cocycle: Cochain,
    pub lift: LiftedFactorSet,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

pub fn obstruction_class(pre: &PreProlongation) -> Result<Obstruction> {
    obstruction_class_with(pre, SectionChoice::Canonical)
}

pub fn obstruction_class_with(pre: &PreProlongation, choice: SectionChoice) -> Result<Obstruction> {
    let h3 = pre.module().cohomology_group(3)?;
    let lift = lift_factor_set(pre, choice);
    let cocycle = obstruction_cocycle(pre, &lift)?;
    let coordinates = h3.class_coordinates(&cocycle)?;
    Ok(Obstruction { h3, coordinates, cocycle, lift })
}

fn pair(e: usize, x: usize, n: usize) -> usize {
    e * n + x
}

/// Checks normalization, `φ(x)φ(y) = μ_{h(x,y)}φ(xy)` and
/// `φ(x)h(y,z)·h(x,yz) = h(x,y)·h(xy,z)`.
pub fn check_crossed_product_data(e0: &FiniteGroup, phi: &[Automorphism], h: &[usize], pi0: &FiniteGroup) -> Result<()> {
    let n = pi0.order();
    let fail = |law, x, y, z| Err(ObstructionError::PreconditionFailed { law, x, y, z });
    if phi.len() != n || h.len() != n * n || phi.iter().any(|p| p.group() != e0) || h.iter().any(|&v| v >= e0.order()) {
        return fail("shape", 0, 0, 0);
    }
    if !phi[0].is_identity() {
        return fail("normalization", 0, 0, 0);
    }
    for x in 0..n {
        if h[x] != 0 || h[x * n] != 0 {
            return fail("normalization", x, 0, 0);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = phi[x].compose(&phi[y]);
            let hxy = h[x * n + y];
            let xy = pi0.mul(x, y);
            if e0.elements().any(|e| lhs.apply(e) != e0.conj(hxy, phi[xy].apply(e))) {
                return fail("twisted homomorphism", x, y, 0);
            }
            for z in 0..n {
                let l = e0.mul(phi[x].apply(h[y * n + z]), h[x * n + pi0.mul(y, z)]);
                let r = e0.mul(hxy, h[xy * n + z]);
                if l != r {
                    return fail("cocycle identity", x, y, z);
                }
            }
        }
    }
    Ok(())
}

/// `B_h = [E₀, φ, h, Π₀]` on pairs `(e, x)` (index `e·|Π₀| + x`) with
/// `(e,x)(e′,y) = (e·φ(x)(e′)·h(x,y), xy)`.
pub fn crossed_product(e0: &FiniteGroup, phi: &[Automorphism], h: &[usize], pi0: &FiniteGroup) -> Result<FiniteGroup> {
    check_crossed_product_data(e0, phi, h, pi0)?;
    crossed_product_unchecked(e0, phi, h, pi0)
}

/// As `crossed_product` without the precondition checks; the table is still
/// validated as a group.
pub fn crossed_product_unchecked(e0: &FiniteGroup, phi: &[Automorphism], h: &[usize], pi0: &FiniteGroup) -> Result<FiniteGroup> {
    let n = pi0.order();
    let size = e0.order() * n;
    let mut table = Vec::with_capacity(size * size);
    for e in e0.elements() {
        for x in 0..n {
            for e2 in e0.elements() {
                for y in 0..n {
                    let v = e0.mul(e0.mul(e, phi[x].apply(e2)), h[x * n + y]);
                    table.push(pair(v, pi0.mul(x, y), n));
                }
            }
        }
    }
    // rows of the flat table must follow pair indices
    debug_assert_eq!(table.len(), size * size);
    FiniteGroup::from_flat(size, table, None).map_err(ObstructionError::PairingNotAssociative)
}

/// A prolongation in crossed-product form with the data it was built from.
#[derive(Debug, Clone)]
pub struct CrossedForm {
    pub prolongation: Prolongation,
    pub u: Vec<usize>,
    pub phi: Vec<Automorphism>,
    pub h: Vec<usize>,
}

impl CrossedForm {
    pub fn b(&self) -> &FiniteGroup {
        self.prolongation.e.b()
    }
}

/// Assembles `ℰ_h` with `j′(a) = (ia, 1)`, `p′(e,x) = γπ(e)·u_x` and
/// `β′(b₀) = (b̄₀, 1)`.
pub fn crossed_product_prolongation(
    pre: &PreProlongation,
    u: &[usize],
    phi: &[Automorphism],
    h: &[usize],
    checked: bool,
) -> Result<CrossedForm> {
    let (e0, pi0, g) = (pre.e0_group(), pre.pi0(), pre.g());
    let b = if checked { crossed_product(e0, phi, h, pi0)? } else { crossed_product_unchecked(e0, phi, h, pi0)? };
    let n = pi0.order();
    let frame = pre.frame();
    let j = Homomorphism::new(pre.a().clone(), b.clone(), pre.a().elements().map(|a| pair(frame.i.apply(a), 0, n)).collect())
        .map_err(ExtensionError::from)?;
    let p = Homomorphism::new(b.clone(), g.clone(), b.elements().map(|k| g.mul(frame.gamma_pi.apply(k / n), u[k % n])).collect())
        .map_err(ExtensionError::from)?;
    let beta =
        Homomorphism::new(pre.e0ext().b().clone(), b.clone(), pre.e0ext().b().elements().map(|b0| pair(frame.bar(b0), 0, n)).collect())
            .map_err(ExtensionError::from)?;
    let e = make_extension(j, p)?;
    let prolongation = Prolongation { e0: pre.e0ext().clone(), e, alpha: pre.alpha().clone(), beta, gamma: pre.gamma().clone() };
    Ok(CrossedForm { prolongation, u: u.to_vec(), phi: phi.to_vec(), h: h.to_vec() })
}

/// `h·i(c)` pointwise.
pub fn twist(pre: &PreProlongation, h: &[usize], c: &Cochain) -> Vec<usize> {
    let e0 = pre.e0_group();
    h.iter().zip(c.values()).map(|(&v, &a)| e0.mul(v, pre.frame().i.apply(a))).collect()
}

/// A covering of `pre`, or the nonzero obstruction class.
pub fn build_prolongation(pre: &PreProlongation) -> Result<CrossedForm> {
    let obs = obstruction_class(pre)?;
    if !obs.is_zero() {
        return Err(ObstructionError::ObstructionNonzero { factors: obs.h3.invariant_factors().to_vec(), coordinates: obs.coordinates });
    }
    let m = pre.module();
    let l = m.is_coboundary(&obs.cocycle).expect("zero class is a coboundary");
    let h = twist(pre, &obs.lift.h, &m.neg(&l));
    let cf = crossed_product_prolongation(pre, &obs.lift.u, &obs.lift.phi, &h, true)?;
    debug_assert!(validate_prolongation(&cf.prolongation).passed());
    Ok(cf)
}

/// Whether `p` induces exactly the `θ` of `pre`.
pub fn verify_covering(p: &Prolongation, pre: &PreProlongation) -> Result<bool> {
    if &p.e0 != pre.e0ext() || &p.alpha != pre.alpha() || &p.gamma != pre.gamma() {
        return Err(ObstructionError::MismatchedBase);
    }
    let ind = induce_crossed_module(p)?;
    Ok(ind.crossed.theta() == pre.theta())
}
