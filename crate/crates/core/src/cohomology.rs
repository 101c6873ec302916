//! Normalized inhomogeneous cochains of a finite group with coefficients in a
//! finite abelian module, and cohomology in degrees 1 to 3.
//!
//! The module `A` is split once into cyclic factors `⊕ Z/d_t`. A cochain of
//! degree `n` then becomes an integer vector with one block of coordinates per
//! normalized argument tuple, and every decision procedure is exact linear
//! algebra over `Z/N` with `N` the exponent of `A`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::group::{Automorphism, FiniteGroup};
use crate::linalg::{smith_mod, Howell, SmithForm};

/// Highest cochain degree stored (needed to check `δk = 0` for degree-3 `k`).
pub const MAX_DEGREE: usize = 4;

/// Default bound on `(positions(n) + positions(n+1)) · rank(A)` for `Hⁿ`.
pub const DEFAULT_COORDINATE_BOUND: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("coefficient group is not abelian ({a}·{b} ≠ {b}·{a})")]
    NotAbelian { a: usize, b: usize },
    #[error("action has {len} entries, expected {order}")]
    ActionLength { len: usize, order: usize },
    #[error("action[{x}] is not an automorphism of the coefficient group")]
    ActionNotOnModule { x: usize },
    #[error("the identity of the acting group does not act trivially")]
    ActionNotIdentityAtOne,
    #[error("action is not a homomorphism at ({x}, {y})")]
    ActionNotHomomorphism { x: usize, y: usize },
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("cochain of degree {degree} needs {expected} values, got {len}")]
    WrongLength { degree: usize, expected: usize, len: usize },
    #[error("value {value} at position {position} is not an element of the module")]
    ValueOutOfRange { position: usize, value: usize },
    #[error("cochain is not normalized at position {position}")]
    NotNormalized { position: usize },
    #[error("cochains have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a cocycle")]
    NotACocycle,
    #[error("size {size} exceeds the bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
}

type Result<T> = std::result::Result<T, CohomologyError>;

/// `A ≅ ⊕ Z/orders[t]`, materialized as coordinates for every element.
#[derive(Debug, Clone)]
struct CyclicDecomposition {
    orders: Vec<i64>,
    coords: Vec<Vec<i64>>,
    element_of: Vec<usize>,
    generators: Vec<usize>,
    exponent: i64,
}

impl CyclicDecomposition {
    fn new(a: &FiniteGroup) -> Self {
        let exponent = a.exponent() as i64;
        let gens = a.greedy_generators();
        let k = gens.len();
        let tree = a.word_tree(&gens);
        let order = a.word_order(&tree);
        let mut words = vec![vec![0i64; k]; a.order()];
        for &x in order.iter().skip(1) {
            let (p, j) = tree[x].expect("generated");
            let mut w = words[p].clone();
            w[j] += 1;
            words[x] = w;
        }
        let mut relations = Vec::new();
        for x in a.elements() {
            for (j, &g) in gens.iter().enumerate() {
                let y = a.mul(x, g);
                let r: Vec<i64> = (0..k).map(|i| words[x][i] + (i == j) as i64 - words[y][i]).collect();
                if r.iter().any(|&v| v.rem_euclid(exponent) != 0) {
                    relations.push(r);
                }
            }
        }
        let sf = smith_mod(relations, k, exponent);
        let keep: Vec<usize> = (0..k).filter(|&t| sf.factors[t] > 1).collect();
        let orders: Vec<i64> = keep.iter().map(|&t| sf.factors[t]).collect();
        let coords: Vec<Vec<i64>> = words
            .iter()
            .map(|w| {
                let c = sf.coordinates(w);
                keep.iter().map(|&t| c[t]).collect()
            })
            .collect();
        let generators = keep
            .iter()
            .map(|&t| gens.iter().zip(&sf.v_inv[t]).fold(0, |acc, (&g, &e)| a.mul(acc, a.pow(g, e.rem_euclid(exponent) as u64))))
            .collect();
        let size: i64 = orders.iter().product();
        assert_eq!(size as usize, a.order(), "cyclic decomposition has the wrong order");
        let mut element_of = vec![usize::MAX; a.order()];
        let d = CyclicDecomposition { orders, coords, element_of: vec![], generators, exponent };
        for x in a.elements() {
            let idx = d.radix(&d.coords[x]);
            assert_eq!(element_of[idx], usize::MAX, "cyclic coordinates are not injective");
            element_of[idx] = x;
        }
        CyclicDecomposition { element_of, ..d }
    }

    fn rank(&self) -> usize {
        self.orders.len()
    }

    fn radix(&self, c: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (t, &d) in self.orders.iter().enumerate() {
            idx += c[t].rem_euclid(d) as usize * scale;
            scale *= d as usize;
        }
        idx
    }

    fn element(&self, c: &[i64]) -> usize {
        self.element_of[self.radix(c)]
    }
}

/// A finite abelian group `a` with a left action of `pi` by automorphisms.
#[derive(Debug, Clone)]
pub struct PiModule {
    pi: FiniteGroup,
    a: FiniteGroup,
    action: Vec<Automorphism>,
    cyclic: CyclicDecomposition,
}

impl PiModule {
    pub fn new(pi: FiniteGroup, a: FiniteGroup, action: Vec<Automorphism>) -> Result<Self> {
        for x in a.elements() {
            for y in a.elements() {
                if a.mul(x, y) != a.mul(y, x) {
                    return Err(CohomologyError::NotAbelian { a: x, b: y });
                }
            }
        }
        if action.len() != pi.order() {
            return Err(CohomologyError::ActionLength { len: action.len(), order: pi.order() });
        }
        if let Some(x) = action.iter().position(|m| m.group() != &a) {
            return Err(CohomologyError::ActionNotOnModule { x });
        }
        if !action[0].is_identity() {
            return Err(CohomologyError::ActionNotIdentityAtOne);
        }
        for x in pi.elements() {
            for y in pi.elements() {
                if action[x].compose(&action[y]) != action[pi.mul(x, y)] {
                    return Err(CohomologyError::ActionNotHomomorphism { x, y });
                }
            }
        }
        let cyclic = CyclicDecomposition::new(&a);
        Ok(PiModule { pi, a, action, cyclic })
    }

    pub fn trivial(pi: FiniteGroup, a: FiniteGroup) -> Result<Self> {
        let action = vec![Automorphism::identity(&a); pi.order()];
        Self::new(pi, a, action)
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn coefficients(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn action(&self) -> &[Automorphism] {
        &self.action
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|m| m.is_identity())
    }

    /// Orders of the cyclic factors of `A`.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        self.cyclic.orders.iter().map(|&d| d as u64).collect()
    }

    #[inline]
    pub fn act(&self, x: usize, v: usize) -> usize {
        self.action[x].apply(v)
    }

    /// Length of the dense value table of an `n`-cochain: `|Π|ⁿ`.
    pub fn cochain_len(&self, n: usize) -> usize {
        self.pi.order().pow(n as u32)
    }

    /// Number of argument tuples with no identity entry: `(|Π| − 1)ⁿ`.
    pub fn positions(&self, n: usize) -> usize {
        (self.pi.order() - 1).pow(n as u32)
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain { degree: n, values: vec![0; self.cochain_len(n)] }
    }

    /// Validates a dense value table as a normalized cochain.
    pub fn cochain(&self, n: usize, values: Vec<usize>) -> Result<Cochain> {
        if n > MAX_DEGREE {
            return Err(CohomologyError::DegreeOutOfRange(n));
        }
        let expected = self.cochain_len(n);
        if values.len() != expected {
            return Err(CohomologyError::WrongLength { degree: n, expected, len: values.len() });
        }
        for (position, &value) in values.iter().enumerate() {
            if value >= self.a.order() {
                return Err(CohomologyError::ValueOutOfRange { position, value });
            }
            if value != 0 && self.has_identity_argument(n, position) {
                return Err(CohomologyError::NotNormalized { position });
            }
        }
        Ok(Cochain { degree: n, values })
    }

    fn has_identity_argument(&self, n: usize, mut position: usize) -> bool {
        let m = self.pi.order();
        for _ in 0..n {
            if position.is_multiple_of(m) {
                return true;
            }
            position /= m;
        }
        false
    }

    fn args(&self, n: usize, mut position: usize) -> [usize; MAX_DEGREE + 1] {
        let m = self.pi.order();
        let mut out = [0; MAX_DEGREE + 1];
        for i in (0..n).rev() {
            out[i] = position % m;
            position /= m;
        }
        out
    }

    fn index(&self, args: &[usize]) -> usize {
        let m = self.pi.order();
        args.iter().fold(0, |acc, &x| acc * m + x)
    }

    /// Dense indices of the normalized positions, ascending.
    fn normalized_positions(&self, n: usize) -> Vec<usize> {
        (0..self.cochain_len(n)).filter(|&p| !self.has_identity_argument(n, p)).collect()
    }

    pub fn add(&self, c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
        if c1.degree != c2.degree {
            return Err(CohomologyError::DegreeMismatch(c1.degree, c2.degree));
        }
        let values = c1.values.iter().zip(&c2.values).map(|(&x, &y)| self.a.mul(x, y)).collect();
        Ok(Cochain { degree: c1.degree, values })
    }

    pub fn neg(&self, c: &Cochain) -> Cochain {
        Cochain { degree: c.degree, values: c.values.iter().map(|&x| self.a.inv(x)).collect() }
    }

    pub fn sub(&self, c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
        self.add(c1, &self.neg(c2))
    }

    pub fn scale(&self, c: &Cochain, k: u64) -> Cochain {
        Cochain { degree: c.degree, values: c.values.iter().map(|&x| self.a.pow(x, k)).collect() }
    }

    /// `δc(x₁,…,x_{n+1}) = x₁·c(x₂,…) + Σᵢ (−1)ⁱ c(…, xᵢxᵢ₊₁, …) + (−1)ⁿ⁺¹ c(x₁,…,xₙ)`.
    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        let n = c.degree;
        if n >= MAX_DEGREE {
            return Err(CohomologyError::DegreeOutOfRange(n));
        }
        let a = &self.a;
        let mut values = vec![0; self.cochain_len(n + 1)];
        let mut sub = [0usize; MAX_DEGREE];
        for (position, out) in values.iter_mut().enumerate() {
            let x = self.args(n + 1, position);
            if x[..n + 1].contains(&0) {
                continue;
            }
            let mut acc = self.act(x[0], c.values[self.index(&x[1..n + 1])]);
            for i in 1..=n {
                sub[..i - 1].copy_from_slice(&x[..i - 1]);
                sub[i - 1] = self.pi.mul(x[i - 1], x[i]);
                sub[i..n].copy_from_slice(&x[i + 1..n + 1]);
                let v = c.values[self.index(&sub[..n])];
                acc = a.mul(acc, if i % 2 == 0 { v } else { a.inv(v) });
            }
            let v = c.values[self.index(&x[..n])];
            acc = a.mul(acc, if (n + 1).is_multiple_of(2) { v } else { a.inv(v) });
            *out = acc;
        }
        Ok(Cochain { degree: n + 1, values })
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.coboundary(c).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// A cochain `t` with `δt = c`, or `None` if `c` is not a coboundary.
    pub fn is_coboundary(&self, c: &Cochain) -> Option<Cochain> {
        let n = c.degree;
        if n == 0 || n > MAX_DEGREE {
            return None;
        }
        if c.is_zero() {
            return Some(self.zero(n - 1));
        }
        let r = self.cyclic.rank();
        let (m_target, m_source) = (self.positions(n) * r, self.positions(n - 1) * r);
        let dim = m_target + m_source;
        let nmod = self.cyclic.exponent;
        let mut gens = Vec::new();
        for (k, image) in self.coboundary_images(n - 1).into_iter().enumerate() {
            let mut row = image;
            row.resize(dim, 0);
            row[m_target + k] = 1;
            gens.push(row);
        }
        gens.extend(self.zero_relations(n, dim));
        let h = Howell::span(dim, nmod, gens);
        let mut v = self.to_vector(c);
        v.resize(dim, 0);
        h.reduce(&mut v, 0..m_target).ok()?;
        let t: Vec<i64> = v[m_target..].iter().map(|&x| -x).collect();
        let t = self.cochain_from_vector(n - 1, &t);
        debug_assert_eq!(self.coboundary(&t).ok().as_ref(), Some(c));
        (self.coboundary(&t).ok().as_ref() == Some(c)).then_some(t)
    }

    /// Whether two cocycles differ by a coboundary.
    pub fn same_class(&self, c1: &Cochain, c2: &Cochain) -> Result<bool> {
        if c1.degree != c2.degree {
            return Err(CohomologyError::DegreeMismatch(c1.degree, c2.degree));
        }
        if !self.is_cocycle(c1) || !self.is_cocycle(c2) {
            return Err(CohomologyError::NotACocycle);
        }
        Ok(self.is_coboundary(&self.sub(c1, c2)?).is_some())
    }

    pub fn cohomology_group(&self, n: usize) -> Result<CohomologyGroup> {
        self.cohomology_group_with_bound(n, DEFAULT_COORDINATE_BOUND)
    }

    /// `Hⁿ = ker δₙ / im δₙ₋₁` with invariant factors and representative cocycles.
    pub fn cohomology_group_with_bound(&self, n: usize, bound: usize) -> Result<CohomologyGroup> {
        if !(1..=3).contains(&n) {
            return Err(CohomologyError::DegreeOutOfRange(n));
        }
        let r = self.cyclic.rank();
        let size = (self.positions(n) + self.positions(n + 1)) * r;
        if size > bound {
            return Err(CohomologyError::SizeBoundExceeded { size, bound });
        }
        let nmod = self.cyclic.exponent;
        let m = self.positions(n) * r;
        let m_next = self.positions(n + 1) * r;

        // Cocycles: {x : δx ≡ 0} from the echelon form of the graph of δ.
        let dim = m_next + m;
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for (k, image) in self.coboundary_images(n).into_iter().enumerate() {
            let mut row = image;
            row.resize(dim, 0);
            row[m_next + k] = 1;
            gens.push(row);
        }
        gens.extend(self.zero_relations(n + 1, dim));
        let graph = Howell::span(dim, nmod, gens);
        let kernel_rows: Vec<Vec<i64>> =
            (m_next..dim).filter(|&c| graph.pivot(c).is_some()).map(|c| graph.row(c)[m_next..].to_vec()).collect();
        let kernel = Howell::span(m, nmod, kernel_rows);
        let pivots: Vec<usize> = (0..m).filter(|&c| kernel.pivot(c).is_some()).collect();
        let slot = |c: usize| pivots.binary_search(&c).expect("pivot column");
        let s = pivots.len();

        let to_kernel_coords = |v: &[i64]| -> Option<Vec<i64>> {
            let mut w = v.to_vec();
            let used = kernel.reduce(&mut w, 0..m).ok()?;
            if w.iter().any(|&x| x != 0) {
                return None;
            }
            let mut c = vec![0i64; s];
            for (col, q) in used {
                c[slot(col)] = (c[slot(col)] + q).rem_euclid(nmod);
            }
            Some(c)
        };

        // Relations on the kernel generators: their own syzygies, then coboundaries
        // and the vectors representing the zero cochain.
        let mut relations = Vec::new();
        for (j, &c) in pivots.iter().enumerate() {
            let mult = nmod / kernel.pivot(c).expect("pivot");
            let w: Vec<i64> = kernel.row(c).iter().map(|&x| (mult * x).rem_euclid(nmod)).collect();
            let mut rel = to_kernel_coords(&w).expect("Howell property");
            for x in rel.iter_mut() {
                *x = (-*x).rem_euclid(nmod);
            }
            rel[j] = (rel[j] + mult).rem_euclid(nmod);
            relations.push(rel);
        }
        let mut boundary_gens = self.coboundary_images(n - 1);
        boundary_gens.extend(self.zero_relations(n, m));
        for b in boundary_gens {
            relations.push(to_kernel_coords(&b).expect("coboundaries are cocycles"));
        }
        let smith = smith_mod(relations, s, nmod);
        let keep: Vec<usize> = (0..s).filter(|&t| smith.factors[t] > 1).collect();
        let invariant_factors = keep.iter().map(|&t| smith.factors[t] as u64).collect();
        let basis = keep
            .iter()
            .map(|&t| {
                let mut x = vec![0i64; m];
                for (j, &col) in pivots.iter().enumerate() {
                    let cj = smith.v_inv[t][j];
                    if cj != 0 {
                        for (xk, &rk) in x.iter_mut().zip(kernel.row(col)) {
                            *xk = (*xk + cj * rk).rem_euclid(nmod);
                        }
                    }
                }
                self.cochain_from_vector(n, &x)
            })
            .collect();
        Ok(CohomologyGroup {
            degree: n,
            module: self.clone(),
            invariant_factors,
            basis,
            coords: CoordinateMap { kernel, pivots, smith, keep, modulus: nmod },
        })
    }

    /// Images under `δ` of the cochains supported at one normalized position on
    /// one cyclic generator, as coordinate vectors of degree `n + 1`.
    fn coboundary_images(&self, n: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for p in self.normalized_positions(n) {
            for &g in &self.cyclic.generators {
                let mut c = self.zero(n);
                c.values[p] = g;
                out.push(self.to_vector(&self.coboundary(&c).expect("degree in range")));
            }
        }
        out
    }

    /// `d_t · e_(position, t)`: coordinate vectors of the zero cochain.
    fn zero_relations(&self, n: usize, dim: usize) -> Vec<Vec<i64>> {
        let r = self.cyclic.rank();
        let mut out = Vec::new();
        for p in 0..self.positions(n) {
            for (t, &d) in self.cyclic.orders.iter().enumerate() {
                if d < self.cyclic.exponent {
                    let mut v = vec![0; dim];
                    v[p * r + t] = d;
                    out.push(v);
                }
            }
        }
        out
    }

    fn to_vector(&self, c: &Cochain) -> Vec<i64> {
        let r = self.cyclic.rank();
        let mut out = Vec::with_capacity(self.positions(c.degree) * r);
        for p in self.normalized_positions(c.degree) {
            out.extend_from_slice(&self.cyclic.coords[c.values[p]]);
        }
        out
    }

    fn cochain_from_vector(&self, n: usize, v: &[i64]) -> Cochain {
        let r = self.cyclic.rank();
        let mut c = self.zero(n);
        for (k, p) in self.normalized_positions(n).into_iter().enumerate() {
            c.values[p] = self.cyclic.element(&v[k * r..(k + 1) * r]);
        }
        c
    }

    pub fn random_cochain<R: Rng>(&self, n: usize, rng: &mut R) -> Cochain {
        let mut c = self.zero(n);
        for p in self.normalized_positions(n) {
            c.values[p] = rng.gen_range(0..self.a.order());
        }
        c
    }

    /// Every normalized `n`-cochain, in odometer order over normalized positions.
    pub fn all_cochains(&self, n: usize) -> impl Iterator<Item = Cochain> + '_ {
        let positions = self.normalized_positions(n);
        let base = self.a.order();
        let total = base.checked_pow(positions.len() as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut idx| {
            let mut c = self.zero(n);
            for &p in &positions {
                c.values[p] = idx % base;
                idx /= base;
            }
            c
        })
    }
}

/// A normalized cochain `Πⁿ → A` as a dense row-major table of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    values: Vec<usize>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Value at the argument tuple `args` (length = degree).
    pub fn at(&self, pi_order: usize, args: &[usize]) -> usize {
        self.values[args.iter().fold(0, |acc, &x| acc * pi_order + x)]
    }
}

#[derive(Debug, Clone)]
struct CoordinateMap {
    kernel: Howell,
    pivots: Vec<usize>,
    smith: SmithForm,
    keep: Vec<usize>,
    modulus: i64,
}

/// `Hⁿ(Π, A) ≅ ⊕ Z/invariant_factors[t]`, with `basis[t]` a cocycle
/// representing the `t`-th generator.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    degree: usize,
    module: PiModule,
    invariant_factors: Vec<u64>,
    basis: Vec<Cochain>,
    coords: CoordinateMap,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn basis(&self) -> &[Cochain] {
        &self.basis
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of the class of `c` with respect to `basis`.
    pub fn class_coordinates(&self, c: &Cochain) -> Result<Vec<u64>> {
        if c.degree != self.degree {
            return Err(CohomologyError::DegreeMismatch(c.degree, self.degree));
        }
        if !self.module.is_cocycle(c) {
            return Err(CohomologyError::NotACocycle);
        }
        let cm = &self.coords;
        let mut w = self.module.to_vector(c);
        let len = w.len();
        let used = cm.kernel.reduce(&mut w, 0..len).map_err(|_| CohomologyError::NotACocycle)?;
        if w.iter().any(|&x| x != 0) {
            return Err(CohomologyError::NotACocycle);
        }
        let mut k = vec![0i64; cm.pivots.len()];
        for (col, q) in used {
            let j = cm.pivots.binary_search(&col).expect("pivot column");
            k[j] = (k[j] + q).rem_euclid(cm.modulus);
        }
        let all = cm.smith.coordinates(&k);
        Ok(cm.keep.iter().map(|&t| all[t] as u64).collect())
    }

    /// The cocycle `Σ coords[t] · basis[t]`.
    pub fn representative(&self, coords: &[u64]) -> Cochain {
        let mut c = self.module.zero(self.degree);
        for (b, &k) in self.basis.iter().zip(coords) {
            c = self.module.add(&c, &self.module.scale(b, k)).expect("same degree");
        }
        c
    }

    /// Every coordinate tuple, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            out = out.into_iter().flat_map(|v: Vec<u64>| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::automorphism_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn z2_z2() -> PiModule {
        PiModule::trivial(fixtures::cyclic(2), fixtures::cyclic(2)).unwrap()
    }

    fn inversion(a: &FiniteGroup) -> Automorphism {
        Automorphism::from_perm(a, a.elements().map(|x| a.inv(x)).collect()).unwrap()
    }

    fn z2_inverting(a: FiniteGroup) -> PiModule {
        let inv = inversion(&a);
        PiModule::new(fixtures::cyclic(2), a.clone(), vec![Automorphism::identity(&a), inv]).unwrap()
    }

    #[test]
    fn zero_and_small_coboundaries() {
        let m = z2_z2();
        for n in 0..4 {
            assert!(m.coboundary(&m.zero(n)).unwrap().is_zero());
        }
        let t = m.cochain(1, vec![0, 1]).unwrap();
        assert!(m.coboundary(&t).unwrap().is_zero());
        let h = m.cochain(2, vec![0, 0, 0, 1]).unwrap();
        assert!(m.coboundary(&h).unwrap().is_zero());
        assert!(matches!(m.coboundary(&m.zero(4)), Err(CohomologyError::DegreeOutOfRange(4))));
    }

    #[test]
    fn degree_one_and_two_formulas() {
        // Z/2 acting on Z/3 by inversion.
        let m = z2_inverting(fixtures::cyclic(3));
        let t = m.cochain(1, vec![0, 1]).unwrap();
        let dt = m.coboundary(&t).unwrap();
        // δt(1,1) = 1·t(1) − t(0) + t(1) = −1 − 0 + 1 = 0
        assert_eq!(dt.at(2, &[1, 1]), 0);
        let a = m.cochain(0, vec![1]).unwrap();
        // δa(1) = 1·a − a = −1 − 1 = −2 = 1 in Z/3
        assert_eq!(m.coboundary(&a).unwrap().values(), &[0, 1]);
    }

    #[test]
    fn cochain_validation() {
        let m = z2_z2();
        assert!(matches!(m.cochain(2, vec![0, 0, 1]), Err(CohomologyError::WrongLength { .. })));
        assert!(matches!(m.cochain(2, vec![0, 1, 0, 0]), Err(CohomologyError::NotNormalized { position: 1 })));
        assert!(matches!(m.cochain(1, vec![0, 2]), Err(CohomologyError::ValueOutOfRange { .. })));
        assert!(matches!(m.cochain(5, vec![]), Err(CohomologyError::DegreeOutOfRange(5))));
    }

    #[test]
    fn module_validation() {
        let z3 = fixtures::cyclic(3);
        assert!(matches!(PiModule::trivial(fixtures::cyclic(2), fixtures::symmetric3()), Err(CohomologyError::NotAbelian { .. })));
        // Z/3 cannot act on Z/3 by inversion.
        let inv = inversion(&z3);
        let bad = PiModule::new(fixtures::cyclic(3), z3.clone(), vec![Automorphism::identity(&z3), inv.clone(), inv.clone()]);
        assert!(matches!(bad, Err(CohomologyError::ActionNotHomomorphism { .. })));
        let bad = PiModule::new(fixtures::cyclic(2), z3.clone(), vec![inv.clone(), inv]);
        assert_eq!(bad.unwrap_err(), CohomologyError::ActionNotIdentityAtOne);
    }

    #[test]
    fn h2_and_h3_of_z2_with_z2() {
        let m = z2_z2();
        assert_eq!(m.cohomology_group(2).unwrap().invariant_factors(), &[2]);
        assert_eq!(m.cohomology_group(3).unwrap().invariant_factors(), &[2]);
        assert_eq!(m.cohomology_group(1).unwrap().invariant_factors(), &[2]);
        let h = m.cochain(2, vec![0, 0, 0, 1]).unwrap();
        assert!(m.is_cocycle(&h));
        assert!(m.is_coboundary(&h).is_none());
        assert!(!m.same_class(&h, &m.zero(2)).unwrap());
    }

    #[test]
    fn trivial_acting_group_has_trivial_cohomology() {
        let m = PiModule::trivial(FiniteGroup::trivial(), fixtures::cyclic(4)).unwrap();
        for n in 1..=3 {
            assert!(m.cohomology_group(n).unwrap().is_trivial());
        }
    }

    #[test]
    fn cyclic_h2_is_gcd() {
        for mm in 2..=6usize {
            for k in 2..=6usize {
                let m = PiModule::trivial(fixtures::cyclic(mm), fixtures::cyclic(k)).unwrap();
                let h = m.cohomology_group(2).unwrap();
                assert_eq!(h.order() as usize, crate::group::gcd(mm, k), "m = {mm}, k = {k}");
            }
        }
    }

    #[test]
    fn z2_on_z3_by_inversion_has_no_h2() {
        let m = z2_inverting(fixtures::cyclic(3));
        assert!(m.cohomology_group(2).unwrap().is_trivial());
    }

    /// Enumeration oracle: |Z|/|B| by listing all normalized cochains.
    fn enumerate_order(m: &PiModule, n: usize) -> usize {
        let cocycles = m.all_cochains(n).filter(|c| m.is_cocycle(c)).count();
        let boundaries: HashSet<Cochain> = m.all_cochains(n - 1).map(|c| m.coboundary(&c).unwrap()).collect();
        cocycles / boundaries.len()
    }

    #[test]
    fn orders_match_enumeration() {
        let mut modules = vec![
            z2_z2(),
            PiModule::trivial(fixtures::cyclic(3), fixtures::cyclic(3)).unwrap(),
            PiModule::trivial(fixtures::cyclic(2), fixtures::cyclic(4)).unwrap(),
            PiModule::trivial(fixtures::klein4(), fixtures::cyclic(2)).unwrap(),
            z2_inverting(fixtures::cyclic(4)),
            z2_inverting(fixtures::cyclic(3)),
        ];
        let k = fixtures::klein4();
        let swap = automorphism_group(&k).unwrap().into_iter().find(|a| a.compose(a).is_identity() && !a.is_identity()).unwrap();
        modules.push(PiModule::new(fixtures::cyclic(2), k.clone(), vec![Automorphism::identity(&k), swap]).unwrap());
        for m in &modules {
            for n in 1..=3 {
                if m.positions(n) > 9 {
                    continue;
                }
                let h = m.cohomology_group(n).unwrap();
                assert_eq!(h.order() as usize, enumerate_order(m, n), "n = {n}");
            }
        }
    }

    #[test]
    fn basis_and_coordinates_agree() {
        let m = PiModule::trivial(fixtures::klein4(), fixtures::cyclic(2)).unwrap();
        let h = m.cohomology_group(2).unwrap();
        assert_eq!(h.invariant_factors(), &[2, 2, 2]);
        for (t, b) in h.basis().iter().enumerate() {
            assert!(m.is_cocycle(b));
            let c = h.class_coordinates(b).unwrap();
            let expected: Vec<u64> = (0..3).map(|k| (k == t) as u64).collect();
            assert_eq!(c, expected);
        }
        for e in h.elements() {
            assert_eq!(h.class_coordinates(&h.representative(&e)).unwrap(), e);
        }
    }

    #[test]
    fn coboundary_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = z2_inverting(fixtures::cyclic(4));
        let m2 = PiModule::trivial(fixtures::symmetric3(), fixtures::cyclic(2)).unwrap();
        for m in [&m, &m2] {
            for n in 0..3 {
                for _ in 0..10 {
                    let t = m.random_cochain(n, &mut rng);
                    let dt = m.coboundary(&t).unwrap();
                    let w = m.is_coboundary(&dt).expect("coboundary");
                    assert_eq!(m.coboundary(&w).unwrap(), dt);
                    assert!(m.coboundary(&dt).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn class_coordinates_rejects_non_cocycles() {
        let m = PiModule::trivial(fixtures::cyclic(3), fixtures::cyclic(3)).unwrap();
        let h = m.cohomology_group(2).unwrap();
        let c = m.cochain(2, vec![0, 0, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert!(!m.is_cocycle(&c));
        assert_eq!(h.class_coordinates(&c).unwrap_err(), CohomologyError::NotACocycle);
        assert_eq!(m.same_class(&c, &c).unwrap_err(), CohomologyError::NotACocycle);
    }

    #[test]
    fn size_bound() {
        let m = PiModule::trivial(fixtures::symmetric3(), fixtures::cyclic(2)).unwrap();
        assert!(matches!(m.cohomology_group_with_bound(3, 10), Err(CohomologyError::SizeBoundExceeded { .. })));
        assert!(matches!(m.cohomology_group(4), Err(CohomologyError::DegreeOutOfRange(4))));
    }
}
