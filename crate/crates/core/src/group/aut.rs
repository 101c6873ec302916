use super::{FiniteGroup, GroupError, Homomorphism, HomomorphismError, DEFAULT_AUT_BOUND};

/// A bijective endomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism(Homomorphism);

impl Automorphism {
    pub fn new(hom: Homomorphism) -> Option<Self> {
        (hom.source() == hom.target() && hom.is_bijective()).then_some(Automorphism(hom))
    }

    /// Validates `perm` as an automorphism of `g`.
    pub fn from_perm(g: &FiniteGroup, perm: Vec<usize>) -> Result<Self, HomomorphismError> {
        let h = Homomorphism::new(g.clone(), g.clone(), perm)?;
        if !h.is_bijective() {
            let mut seen = vec![false; g.order()];
            let index = h.map().iter().position(|&v| std::mem::replace(&mut seen[v], true)).unwrap_or(0);
            return Err(HomomorphismError::OutOfRange { index, value: h.map()[index] });
        }
        Ok(Automorphism(h))
    }

    pub(crate) fn from_perm_unchecked(g: &FiniteGroup, perm: Vec<usize>) -> Self {
        Automorphism(Homomorphism::new_unchecked(g.clone(), g.clone(), perm))
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Automorphism(Homomorphism::identity(g))
    }

    pub fn group(&self) -> &FiniteGroup {
        self.0.source()
    }

    pub fn as_homomorphism(&self) -> &Homomorphism {
        &self.0
    }

    pub fn perm(&self) -> &[usize] {
        self.0.map()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0.apply(a)
    }

    pub fn is_identity(&self) -> bool {
        self.perm().iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let g = self.group();
        Automorphism::from_perm_unchecked(g, other.perm().iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism(self.0.inverse().expect("automorphisms are bijective"))
    }
}

/// `a ↦ b·a·b⁻¹`
pub fn inner_automorphism(g: &FiniteGroup, b: usize) -> Automorphism {
    Automorphism::from_perm_unchecked(g, g.elements().map(|a| g.conj(b, a)).collect())
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<Automorphism>, GroupError> {
    automorphism_group_with_bound(g, DEFAULT_AUT_BOUND)
}

/// All automorphisms of `g`, sorted lexicographically by permutation (so the
/// identity comes first).
pub fn automorphism_group_with_bound(g: &FiniteGroup, bound: usize) -> Result<Vec<Automorphism>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: g.order(), bound });
    }
    let gens = g.greedy_generators();
    let tree = g.word_tree(&gens);
    let order = g.word_order(&tree);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let n = g.element_order(x);
            g.elements().filter(|&t| g.element_order(t) == n).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &tree, &order, &candidates, &mut images, &mut out);
    out.sort_by(|a: &Automorphism, b| a.perm().cmp(b.perm()));
    Ok(out)
}

fn search(
    g: &FiniteGroup,
    gens: &[usize],
    tree: &[Option<(usize, usize)>],
    order: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Automorphism>,
) {
    let k = images.len();
    if k == gens.len() {
        let mut map = vec![0usize; g.order()];
        for &x in order.iter().skip(1) {
            let (p, j) = tree[x].expect("generated");
            map[x] = g.mul(map[p], images[j]);
        }
        if let Ok(h) = Homomorphism::new(g.clone(), g.clone(), map) {
            if let Some(a) = Automorphism::new(h) {
                out.push(a);
            }
        }
        return;
    }
    for &c in &candidates[k] {
        // distinct generators need distinct images
        if images.contains(&c) {
            continue;
        }
        images.push(c);
        search(g, gens, tree, order, candidates, images, out);
        images.pop();
    }
}

/// The group of the given automorphisms under composition, with
/// `table[a][b] = auts[a] ∘ auts[b]`. `auts[0]` must be the identity and the
/// list closed under composition.
pub fn automorphism_table(auts: &[Automorphism]) -> Result<FiniteGroup, GroupError> {
    let n = auts.len();
    let index: std::collections::HashMap<&[usize], usize> = auts.iter().enumerate().map(|(i, a)| (a.perm(), i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in auts {
        for b in auts {
            let c = a.compose(b);
            match index.get(c.perm()) {
                Some(&i) => table.push(i),
                None => return Err(GroupError::EntryOutOfRange { row: table.len() / n, col: table.len() % n, value: n }),
            }
        }
    }
    FiniteGroup::from_flat(n, table, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Oracle: filter every permutation fixing 0 by the homomorphism law.
    fn brute_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
        fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                cur.push(x);
                perms(rest, cur, out);
                cur.pop();
                rest.insert(i, x);
            }
        }
        let mut all = Vec::new();
        perms(&mut (1..g.order()).collect(), &mut vec![0], &mut all);
        let mut ok: Vec<Vec<usize>> =
            all.into_iter().filter(|p| g.elements().all(|a| g.elements().all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b])))).collect();
        ok.sort();
        ok
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_group(&fixtures::cyclic(2)).unwrap().len(), 1);
        assert_eq!(automorphism_group(&fixtures::cyclic(4)).unwrap().len(), 2);
        assert_eq!(automorphism_group(&fixtures::klein4()).unwrap().len(), 6);
        assert_eq!(automorphism_group(&fixtures::symmetric3()).unwrap().len(), 6);
        assert_eq!(automorphism_group(&fixtures::quaternion8()).unwrap().len(), 24);
        assert_eq!(automorphism_group(&fixtures::dihedral(4)).unwrap().len(), 8);
    }

    #[test]
    fn matches_permutation_filter() {
        for g in [fixtures::cyclic(5), fixtures::cyclic(6), fixtures::klein4(), fixtures::symmetric3(), fixtures::quaternion8()] {
            let fast: Vec<Vec<usize>> = automorphism_group(&g).unwrap().iter().map(|a| a.perm().to_vec()).collect();
            assert_eq!(fast, brute_automorphisms(&g));
        }
    }

    #[test]
    fn totient_counts() {
        for n in 1..=12usize {
            let phi = (1..=n).filter(|&k| crate::group::gcd(k, n) == 1).count();
            assert_eq!(automorphism_group(&fixtures::cyclic(n)).unwrap().len(), phi, "n = {n}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        let g = fixtures::cyclic(9);
        assert_eq!(automorphism_group_with_bound(&g, 8).unwrap_err(), GroupError::OrderBoundExceeded { order: 9, bound: 8 });
    }

    #[test]
    fn inner_automorphisms() {
        let z4 = fixtures::cyclic(4);
        assert!(inner_automorphism(&z4, 3).is_identity());
        let s3 = fixtures::symmetric3();
        assert!(inner_automorphism(&s3, 0).is_identity());
        let t = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let mu = inner_automorphism(&s3, t);
        assert!(!mu.is_identity());
        assert!(mu.compose(&mu).is_identity());
    }

    #[test]
    fn identity_is_first_and_table_is_a_group() {
        for (_, g) in fixtures::all() {
            if g.order() > 8 {
                continue;
            }
            let auts = automorphism_group(&g).unwrap();
            assert!(auts[0].is_identity());
            let t = automorphism_table(&auts).unwrap();
            assert_eq!(t.order(), auts.len());
        }
    }
}
