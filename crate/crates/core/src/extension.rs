//! Short exact sequences, sections and factor sets, pullbacks, and the
//! prolongation ladder together with the data it induces.

use rand::Rng;
use thiserror::Error;

use crate::group::{cokernel, quotient, FiniteGroup, GroupError, Homomorphism, HomomorphismError, QuotientData, Subgroup};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("target of j is not the source of p")]
    NotComposable,
    #[error("j is not injective")]
    NotInjective,
    #[error("p is not surjective")]
    NotSurjective,
    #[error("image of j differs from kernel of p (at element {element})")]
    NotExact { element: usize },
    #[error("section entry {index} does not lie over {index}")]
    InvalidSection { index: usize },
    #[error("factor set value at ({x}, {y}) lies outside the image of j")]
    ValueOutsideExpectedSubgroup { x: usize, y: usize },
    #[error("{0} has the wrong source or target")]
    ShapeMismatch(&'static str),
    #[error("kernel side of the base extension is not central")]
    NotCentral,
    #[error("alpha is not surjective")]
    AlphaNotEpi,
    #[error("gamma is not injective")]
    GammaNotMono,
    #[error("image of gamma is not normal")]
    GammaImageNotNormal,
    #[error("induced map on B0/Ker alpha is not well defined at {b0}")]
    EpsilonNotWellDefined { b0: usize },
    #[error("induced diagram does not commute: {0}")]
    DiagramNotCommuting(&'static str),
    #[error("invalid prolongation:\n{0}")]
    InvalidProlongation(Report),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Homomorphism(#[from] HomomorphismError),
}

type Result<T> = std::result::Result<T, ExtensionError>;

/// An exact sequence `A -j-> B -p-> G`, with `j` injective and `p` surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExtension {
    j: Homomorphism,
    p: Homomorphism,
}

pub fn make_extension(j: Homomorphism, p: Homomorphism) -> Result<ShortExtension> {
    if j.target() != p.source() {
        return Err(ExtensionError::NotComposable);
    }
    if !j.is_injective() {
        return Err(ExtensionError::NotInjective);
    }
    if !p.is_surjective() {
        return Err(ExtensionError::NotSurjective);
    }
    let image = j.image();
    let kernel = p.kernel();
    if let Some(element) = p.source().elements().find(|&b| image.contains(b) != kernel.contains(b)) {
        return Err(ExtensionError::NotExact { element });
    }
    Ok(ShortExtension { j, p })
}

impl ShortExtension {
    pub fn a(&self) -> &FiniteGroup {
        self.j.source()
    }

    pub fn b(&self) -> &FiniteGroup {
        self.j.target()
    }

    pub fn g(&self) -> &FiniteGroup {
        self.p.target()
    }

    pub fn j(&self) -> &Homomorphism {
        &self.j
    }

    pub fn p(&self) -> &Homomorphism {
        &self.p
    }
}

pub fn is_central(ext: &ShortExtension) -> bool {
    let center = ext.b().center();
    ext.j().map().iter().all(|&b| center.contains(b))
}

/// Representatives `u[g]` with `p(u[g]) = g` and `u[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    u: Vec<usize>,
}

impl Section {
    pub fn new(ext: &ShortExtension, u: Vec<usize>) -> Result<Self> {
        if u.len() != ext.g().order() {
            return Err(ExtensionError::InvalidSection { index: u.len().min(ext.g().order()) });
        }
        for (index, &b) in u.iter().enumerate() {
            if b >= ext.b().order() || ext.p().apply(b) != index || (index == 0 && b != 0) {
                return Err(ExtensionError::InvalidSection { index });
            }
        }
        Ok(Section { u })
    }

    pub fn reps(&self) -> &[usize] {
        &self.u
    }

    #[inline]
    pub fn rep(&self, g: usize) -> usize {
        self.u[g]
    }
}

/// The least element of every fiber.
pub fn choose_section(ext: &ShortExtension) -> Section {
    let mut u = vec![usize::MAX; ext.g().order()];
    for b in ext.b().elements().rev() {
        u[ext.p().apply(b)] = b;
    }
    Section { u }
}

/// A uniformly random element of every nonidentity fiber.
pub fn choose_section_seeded<R: Rng>(ext: &ShortExtension, rng: &mut R) -> Section {
    let mut fibers = vec![Vec::new(); ext.g().order()];
    for b in ext.b().elements() {
        fibers[ext.p().apply(b)].push(b);
    }
    let u = fibers.iter().enumerate().map(|(g, f)| if g == 0 { 0 } else { f[rng.gen_range(0..f.len())] }).collect();
    Section { u }
}

/// `f(x,y) = j⁻¹(u_x·u_y·u_{xy}⁻¹)`, as a dense `|G|×|G|` table of `A`-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    order: usize,
    values: Vec<usize>,
}

impl FactorSet {
    pub fn from_values(order: usize, values: Vec<usize>) -> Self {
        assert_eq!(values.len(), order * order);
        FactorSet { order, values }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.order + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        self.values[x * self.order + y] = v;
    }
}

pub fn factor_set(ext: &ShortExtension, s: &Section) -> Result<FactorSet> {
    let (b, g) = (ext.b(), ext.g());
    let pre = ext.j().preimages();
    let n = g.order();
    let mut values = Vec::with_capacity(n * n);
    for x in g.elements() {
        for y in g.elements() {
            let v = b.mul(b.mul(s.rep(x), s.rep(y)), b.inv(s.rep(g.mul(x, y))));
            values.push(pre[v].ok_or(ExtensionError::ValueOutsideExpectedSubgroup { x, y })?);
        }
    }
    Ok(FactorSet { order: n, values })
}

/// `μ_{u_x} f(y,z) · f(x,yz) = f(x,y) · f(xy,z)` in `B` for every triple.
pub fn check_factor_identity(ext: &ShortExtension, s: &Section, f: &FactorSet) -> bool {
    let (b, g, j) = (ext.b(), ext.g(), ext.j());
    if f.order != g.order() || f.values.iter().any(|&v| v >= ext.a().order()) {
        return false;
    }
    g.elements().all(|x| {
        g.elements().all(|y| {
            g.elements().all(|z| {
                let lhs = b.mul(b.conj(s.rep(x), j.apply(f.get(y, z))), j.apply(f.get(x, g.mul(y, z))));
                let rhs = b.mul(j.apply(f.get(x, y)), j.apply(f.get(g.mul(x, y), z)));
                lhs == rhs
            })
        })
    })
}

/// `ext·g`: the fiber product `B′ = {(b, c′) : p(b) = g(c′)}` with pairs in
/// lexicographic order, `j′(a) = (j(a), 0)`, `p′` the second projection and
/// `φ` the first.
pub fn pullback(ext: &ShortExtension, g: &Homomorphism) -> Result<(ShortExtension, Homomorphism)> {
    if g.target() != ext.g() {
        return Err(ExtensionError::ShapeMismatch("pullback map"));
    }
    let (b, c) = (ext.b(), g.source());
    let pairs: Vec<(usize, usize)> =
        b.elements().flat_map(|x| c.elements().map(move |y| (x, y))).filter(|&(x, y)| ext.p().apply(x) == g.apply(y)).collect();
    let mut index = vec![usize::MAX; b.order() * c.order()];
    for (k, &(x, y)) in pairs.iter().enumerate() {
        index[x * c.order() + y] = k;
    }
    let n = pairs.len();
    let mut table = Vec::with_capacity(n * n);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            table.push(index[b.mul(x1, x2) * c.order() + c.mul(y1, y2)]);
        }
    }
    let bp = FiniteGroup::from_flat(n, table, None)?;
    let j = Homomorphism::new(ext.a().clone(), bp.clone(), ext.a().elements().map(|a| index[ext.j().apply(a) * c.order()]).collect())?;
    let p = Homomorphism::new(bp.clone(), c.clone(), pairs.iter().map(|&(_, y)| y).collect())?;
    let phi = Homomorphism::new(bp, b.clone(), pairs.iter().map(|&(x, _)| x).collect())?;
    Ok((make_extension(j, p)?, phi))
}

/// A ladder from `ℰ₀: A₀ → B₀ → G₀` to `ℰ: A → B → G` with vertical maps
/// `α: A₀ → A`, `β: B₀ → B`, `γ: G₀ → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prolongation {
    pub e0: ShortExtension,
    pub e: ShortExtension,
    pub alpha: Homomorphism,
    pub beta: Homomorphism,
    pub gamma: Homomorphism,
}

impl Prolongation {
    pub fn validate(&self) -> Report {
        validate_prolongation(self)
    }

    pub fn frame(&self) -> Result<Frame> {
        Frame::new(&self.e0, &self.alpha, &self.gamma)
    }
}

/// Shape checks shared by ladders and pre-prolongations.
pub(crate) fn base_report(e0: &ShortExtension, alpha: &Homomorphism, gamma: &Homomorphism, report: &mut Report) -> bool {
    let alpha_ok = alpha.source() == e0.a();
    let gamma_ok = gamma.source() == e0.g();
    report.check("AlphaShapeMismatch", (!alpha_ok).then(|| "alpha does not start at A0".to_string()));
    report.check("GammaShapeMismatch", (!gamma_ok).then(|| "gamma does not start at G0".to_string()));
    let center = e0.b().center();
    report.check(
        "E0NotCentral",
        e0.j().map().iter().find(|&&b| !center.contains(b)).map(|&b| format!("j0 image element {b} is not central in B0")),
    );
    if alpha_ok {
        report.check("AlphaNotEpi", (!alpha.is_surjective()).then(|| "alpha misses an element of A".to_string()));
    }
    if gamma_ok {
        let mono = gamma.is_injective();
        report.check("GammaNotMono", (!mono).then(|| format!("kernel of gamma has order {}", gamma.kernel().order())));
        report.check("GammaImageNotNormal", (!gamma.image().is_normal()).then(|| "image of gamma is not normal in G".to_string()));
    }
    alpha_ok && gamma_ok
}

pub fn validate_prolongation(p: &Prolongation) -> Report {
    let mut r = Report::new();
    let shapes = base_report(&p.e0, &p.alpha, &p.gamma, &mut r);
    let alpha_t = p.alpha.target() == p.e.a();
    let gamma_t = p.gamma.target() == p.e.g();
    let beta_ok = p.beta.source() == p.e0.b() && p.beta.target() == p.e.b();
    r.check("AlphaTargetMismatch", (!alpha_t).then(|| "alpha does not end at A".to_string()));
    r.check("GammaTargetMismatch", (!gamma_t).then(|| "gamma does not end at G".to_string()));
    r.check("BetaShapeMismatch", (!beta_ok).then(|| "beta is not a map B0 → B".to_string()));
    if !(shapes && alpha_t && gamma_t && beta_ok) {
        return r;
    }
    r.check(
        "LeftSquareNotCommuting",
        p.e0.a().elements().find(|&a| p.beta.apply(p.e0.j().apply(a)) != p.e.j().apply(p.alpha.apply(a))).map(|a| format!("at a0 = {a}")),
    );
    r.check(
        "RightSquareNotCommuting",
        p.e0.b().elements().find(|&b| p.e.p().apply(p.beta.apply(b)) != p.gamma.apply(p.e0.p().apply(b))).map(|b| format!("at b0 = {b}")),
    );
    let ker_beta = p.beta.kernel();
    let ker_alpha = p.alpha.kernel();
    let expected: Vec<usize> = {
        let mut v: Vec<usize> = ker_alpha.members().iter().map(|&a| p.e0.j().apply(a)).collect();
        v.sort_unstable();
        v
    };
    r.check(
        "KerBetaMismatch",
        (ker_beta.members() != expected.as_slice())
            .then(|| format!("Ker beta has order {}, j0(Ker alpha) has order {}", ker_beta.order(), expected.len())),
    );
    r
}

/// Data derived from `ℰ₀`, `α` and `γ` alone: `E₀ = B₀/j₀(Ker α)`, the
/// induced `π: E₀ → G₀`, the identification `A₀/Ker α ≅ A`, the embedding
/// `i: A → E₀` onto `Ker π`, and `Π₀ = Coker γ` with its least-index section.
#[derive(Debug, Clone)]
pub struct Frame {
    pub e0ext: ShortExtension,
    pub alpha: Homomorphism,
    pub gamma: Homomorphism,
    pub kernel_alpha: Subgroup,
    pub e0: QuotientData,
    pub pi: Homomorphism,
    pub a0_quotient: QuotientData,
    pub identification: Homomorphism,
    pub i: Homomorphism,
    pub coker: QuotientData,
    pub gamma_pi: Homomorphism,
}

impl Frame {
    pub fn new(e0ext: &ShortExtension, alpha: &Homomorphism, gamma: &Homomorphism) -> Result<Self> {
        if alpha.source() != e0ext.a() {
            return Err(ExtensionError::ShapeMismatch("alpha"));
        }
        if gamma.source() != e0ext.g() {
            return Err(ExtensionError::ShapeMismatch("gamma"));
        }
        if !is_central(e0ext) {
            return Err(ExtensionError::NotCentral);
        }
        if !alpha.is_surjective() {
            return Err(ExtensionError::AlphaNotEpi);
        }
        if !gamma.is_injective() {
            return Err(ExtensionError::GammaNotMono);
        }
        let coker = cokernel(gamma).map_err(|_| ExtensionError::GammaImageNotNormal)?;
        let b0 = e0ext.b();
        let kernel_alpha = alpha.kernel();
        let image: Vec<usize> = kernel_alpha.members().iter().map(|&a| e0ext.j().apply(a)).collect();
        let n = b0.subgroup_closure(&image);
        let e0 = quotient(b0, &n)?;
        let pi = Homomorphism::new(e0.quotient.clone(), e0ext.g().clone(), e0.reps.iter().map(|&b| e0ext.p().apply(b)).collect())?;
        let a0_quotient = quotient(e0ext.a(), &kernel_alpha)?;
        let identification = Homomorphism::new(
            a0_quotient.quotient.clone(),
            alpha.target().clone(),
            a0_quotient.reps.iter().map(|&a| alpha.apply(a)).collect(),
        )?;
        let pre = alpha.preimages();
        let i = Homomorphism::new(
            alpha.target().clone(),
            e0.quotient.clone(),
            pre.iter().map(|a0| e0.projection.apply(e0ext.j().apply(a0.expect("alpha is onto")))).collect(),
        )?;
        let gamma_pi = pi.then(gamma)?;
        Ok(Frame {
            e0ext: e0ext.clone(),
            alpha: alpha.clone(),
            gamma: gamma.clone(),
            kernel_alpha,
            e0,
            pi,
            a0_quotient,
            identification,
            i,
            coker,
            gamma_pi,
        })
    }

    /// `E₀ = B₀/j₀(Ker α)`.
    pub fn e0_group(&self) -> &FiniteGroup {
        &self.e0.quotient
    }

    /// `Π₀ = G/γ(G₀)`.
    pub fn pi0(&self) -> &FiniteGroup {
        &self.coker.quotient
    }

    pub fn a(&self) -> &FiniteGroup {
        self.alpha.target()
    }

    pub fn g(&self) -> &FiniteGroup {
        self.gamma.target()
    }

    /// `b₀ ↦ b₀ + Ker α`.
    pub fn bar(&self, b0: usize) -> usize {
        self.e0.projection.apply(b0)
    }

    /// Least representative `u_x` of each coset of `γ(G₀)`.
    pub fn section(&self) -> &[usize] {
        &self.coker.reps
    }

    pub fn sigma(&self) -> &Homomorphism {
        &self.coker.projection
    }

    /// `0 → G₀ → G → Π₀ → 1`.
    pub fn cokernel_extension(&self) -> ShortExtension {
        make_extension(self.gamma.clone(), self.coker.projection.clone()).expect("gamma is a normal monomorphism")
    }
}

/// `0 → E₀ -ε-> B -σp-> Π₀ → 1` induced by a valid prolongation.
#[derive(Debug, Clone)]
pub struct InducedSequence {
    pub frame: Frame,
    pub epsilon: Homomorphism,
    pub ext: ShortExtension,
}

pub fn induced_sequence(p: &Prolongation) -> Result<InducedSequence> {
    let report = validate_prolongation(p);
    if !report.passed() {
        return Err(ExtensionError::InvalidProlongation(report));
    }
    let frame = p.frame()?;
    let epsilon = Homomorphism::new(frame.e0_group().clone(), p.e.b().clone(), frame.e0.reps.iter().map(|&b0| p.beta.apply(b0)).collect())?;
    if let Some(b0) = p.e0.b().elements().find(|&b0| epsilon.apply(frame.bar(b0)) != p.beta.apply(b0)) {
        return Err(ExtensionError::EpsilonNotWellDefined { b0 });
    }
    let sp = p.e.p().then(frame.sigma())?;
    let ext = make_extension(epsilon.clone(), sp)?;
    if p.e.a().elements().any(|a| epsilon.apply(frame.i.apply(a)) != p.e.j().apply(a)) {
        return Err(ExtensionError::DiagramNotCommuting("epsilon ∘ i ≠ j"));
    }
    if frame.e0_group().elements().any(|e| p.e.p().apply(epsilon.apply(e)) != frame.gamma_pi.apply(e)) {
        return Err(ExtensionError::DiagramNotCommuting("p ∘ epsilon ≠ gamma ∘ pi"));
    }
    Ok(InducedSequence { frame, epsilon, ext })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn z2_z4_z2() -> ShortExtension {
        let (z2, z4) = (fixtures::cyclic(2), fixtures::cyclic(4));
        let j = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let p = Homomorphism::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
        make_extension(j, p).unwrap()
    }

    fn z3_s3_z2() -> ShortExtension {
        let s3 = fixtures::symmetric3();
        let z3 = fixtures::cyclic(3);
        let r = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let j = Homomorphism::new(z3.clone(), s3.clone(), vec![0, r, s3.mul(r, r)]).unwrap();
        let sign = s3.elements().map(|a| (s3.element_order(a) == 2) as usize).collect();
        let p = Homomorphism::new(s3, fixtures::cyclic(2), sign).unwrap();
        make_extension(j, p).unwrap()
    }

    fn split(a: &FiniteGroup, g: &FiniteGroup) -> ShortExtension {
        let b = a.direct_product(g);
        let j = Homomorphism::new(a.clone(), b.clone(), a.elements().map(|x| x * g.order()).collect()).unwrap();
        let p = Homomorphism::new(b.clone(), g.clone(), b.elements().map(|x| x % g.order()).collect()).unwrap();
        make_extension(j, p).unwrap()
    }

    #[test]
    fn extensions_and_centrality() {
        assert!(is_central(&z2_z4_z2()));
        assert!(!is_central(&z3_s3_z2()));
        let k = fixtures::klein4();
        let z2 = fixtures::cyclic(2);
        assert!(is_central(&split(&z2, &z2)));
        assert_eq!(split(&z2, &z2).b().order_profile(), k.order_profile());

        let q8 = fixtures::quaternion8();
        let center = q8.center();
        let (zq, inc) = Homomorphism::inclusion(&center);
        let qd = quotient(&q8, &center).unwrap();
        assert_eq!(zq.order(), 2);
        let ext = make_extension(inc, qd.projection.clone()).unwrap();
        assert!(is_central(&ext));
        assert_eq!(ext.g().order_profile(), k.order_profile());
    }

    #[test]
    fn rejects_bad_sequences() {
        let (z2, z4) = (fixtures::cyclic(2), fixtures::cyclic(4));
        let j = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let p = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(make_extension(p.clone(), j.clone()).unwrap_err(), ExtensionError::NotInjective);
        let zero = Homomorphism::trivial(&z4, &z2);
        assert_eq!(make_extension(j.clone(), zero).unwrap_err(), ExtensionError::NotSurjective);
        let id = Homomorphism::identity(&z4);
        assert!(matches!(make_extension(id.clone(), p.clone()), Err(ExtensionError::NotExact { .. })));
        assert_eq!(make_extension(j.clone(), j).unwrap_err(), ExtensionError::NotComposable);
    }

    #[test]
    fn sections() {
        let ext = z2_z4_z2();
        assert_eq!(choose_section(&ext).reps(), &[0, 1]);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..16 {
            let s = choose_section_seeded(&ext, &mut ChaCha8Rng::seed_from_u64(seed));
            assert!(Section::new(&ext, s.reps().to_vec()).is_ok());
            seen.insert(s.reps().to_vec());
        }
        assert!(seen.contains(&vec![0, 3]) && seen.contains(&vec![0, 1]));
        assert!(Section::new(&ext, vec![0, 2]).is_err());
        let z2 = fixtures::cyclic(3);
        let s = split(&z2, &fixtures::cyclic(2));
        assert_eq!(choose_section(&s).reps(), &[0, 1]);
    }

    #[test]
    fn factor_sets() {
        let ext = z2_z4_z2();
        for u in [vec![0, 1], vec![0, 3]] {
            let s = Section::new(&ext, u).unwrap();
            let f = factor_set(&ext, &s).unwrap();
            assert_eq!(f.values(), &[0, 0, 0, 1]);
            assert!(check_factor_identity(&ext, &s, &f));
        }
        let s = choose_section(&ext);
        let mut f = factor_set(&ext, &s).unwrap();
        f.set(1, 0, 1);
        assert!(!check_factor_identity(&ext, &s, &f));

        let sp = split(&fixtures::cyclic(3), &fixtures::symmetric3());
        let s = choose_section(&sp);
        let f = factor_set(&sp, &s).unwrap();
        assert!(f.values().iter().all(|&v| v == 0));

        let triv = split(&fixtures::cyclic(2), &FiniteGroup::trivial());
        let s = choose_section(&triv);
        assert!(check_factor_identity(&triv, &s, &factor_set(&triv, &s).unwrap()));
    }

    #[test]
    fn nonabelian_factor_identity() {
        let ext = z3_s3_z2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let s = choose_section_seeded(&ext, &mut rng);
            let f = factor_set(&ext, &s).unwrap();
            assert!(check_factor_identity(&ext, &s, &f));
            assert_eq!(f.get(0, 1), 0);
            assert_eq!(f.get(1, 0), 0);
        }
    }

    #[test]
    fn pullbacks() {
        let ext = z2_z4_z2();
        let z4 = fixtures::cyclic(4);
        let red = Homomorphism::new(z4.clone(), fixtures::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let (pb, phi) = pullback(&ext, &red).unwrap();
        assert_eq!(pb.b().order(), 8);
        for b in pb.b().elements() {
            assert_eq!(ext.p().apply(phi.apply(b)), red.apply(pb.p().apply(b)));
        }

        let (pb, phi) = pullback(&ext, &Homomorphism::identity(ext.g())).unwrap();
        assert!(phi.is_bijective());
        assert_eq!(pb.b().order_profile(), ext.b().order_profile());

        let triv = Homomorphism::trivial(&z4, ext.g());
        let (pb, _) = pullback(&ext, &triv).unwrap();
        assert_eq!(pb.b().order_profile(), fixtures::cyclic(2).direct_product(&z4).order_profile());
        let s = choose_section(&pb);
        assert!(factor_set(&pb, &s).unwrap().values().iter().all(|&v| v == 0));
    }

    fn identity_ladder(ext: &ShortExtension) -> Prolongation {
        Prolongation {
            e0: ext.clone(),
            e: ext.clone(),
            alpha: Homomorphism::identity(ext.a()),
            beta: Homomorphism::identity(ext.b()),
            gamma: Homomorphism::identity(ext.g()),
        }
    }

    /// `ℰ₀ = (Z/2 = Z/2 → 1)`, `γ: 1 → Z/2`, `ℰ = (Z/2 → Z/4 → Z/2)`.
    fn z4_over_z2() -> Prolongation {
        let (z2, z4, one) = (fixtures::cyclic(2), fixtures::cyclic(4), FiniteGroup::trivial());
        let e0 = make_extension(Homomorphism::identity(&z2), Homomorphism::trivial(&z2, &one)).unwrap();
        Prolongation {
            e0,
            e: z2_z4_z2(),
            alpha: Homomorphism::identity(&z2),
            beta: Homomorphism::new(z2.clone(), z4, vec![0, 2]).unwrap(),
            gamma: Homomorphism::trivial(&one, &z2),
        }
    }

    #[test]
    fn prolongation_validation() {
        assert!(validate_prolongation(&identity_ladder(&z2_z4_z2())).passed());
        let p = z4_over_z2();
        assert!(validate_prolongation(&p).passed(), "{}", validate_prolongation(&p));

        // γ: Z/2 → Z/2 trivial is not injective.
        let ext = z2_z4_z2();
        let mut bad = identity_ladder(&ext);
        bad.gamma = Homomorphism::trivial(ext.g(), ext.g());
        let r = validate_prolongation(&bad);
        assert!(r.has_failure("GammaNotMono"));
        assert!(r.has_failure("RightSquareNotCommuting"));

        let mut bad = identity_ladder(&z3_s3_z2());
        bad.e0 = z3_s3_z2();
        bad.e = z3_s3_z2();
        assert!(validate_prolongation(&bad).has_failure("E0NotCentral"));
    }

    #[test]
    fn induced_sequences() {
        let seq = induced_sequence(&z4_over_z2()).unwrap();
        assert_eq!(seq.frame.e0_group().order(), 2);
        assert_eq!(seq.frame.pi0().order(), 2);
        assert_eq!(seq.ext.b().order_profile(), vec![1, 2, 4, 4]);

        // α injective: E₀ ≅ B₀, ε = β.
        let ladder = identity_ladder(&z2_z4_z2());
        let seq = induced_sequence(&ladder).unwrap();
        assert_eq!(seq.frame.e0_group().order(), 4);
        assert_eq!(seq.epsilon.map(), ladder.beta.map());
        // γ surjective: Π₀ trivial and ε bijective.
        assert_eq!(seq.frame.pi0().order(), 1);
        assert!(seq.epsilon.is_bijective());
    }

    #[test]
    fn noninjective_alpha_frame() {
        // ℰ₀ = (Z/4 = Z/4 → 1), α: Z/4 → Z/2, so E₀ = Z/2.
        let (z2, z4, one) = (fixtures::cyclic(2), fixtures::cyclic(4), FiniteGroup::trivial());
        let e0 = make_extension(Homomorphism::identity(&z4), Homomorphism::trivial(&z4, &one)).unwrap();
        let alpha = Homomorphism::new(z4, z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let f = Frame::new(&e0, &alpha, &Homomorphism::trivial(&one, &z2)).unwrap();
        assert_eq!(f.e0_group().order(), 2);
        assert_eq!(f.i.map(), &[0, 1]);
        assert_eq!(f.identification.map(), &[0, 1]);
        assert_eq!(f.kernel_alpha.members(), &[0, 2]);
        assert_eq!(f.section(), &[0, 1]);
    }
}
