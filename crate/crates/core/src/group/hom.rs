use thiserror::Error;

use super::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomomorphismError {
    #[error("map has length {len}, source has order {order}")]
    WrongLength { len: usize, order: usize },
    #[error("map[{index}] = {value} is outside the target")]
    OutOfRange { index: usize, value: usize },
    #[error("identity is sent to {value}")]
    IdentityNotPreserved { value: usize },
    #[error("operation not preserved at ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("source and target of composed maps differ")]
    NotComposable,
}

/// A total map between finite groups preserving the operation.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self, HomomorphismError> {
        if map.len() != source.order() {
            return Err(HomomorphismError::WrongLength { len: map.len(), order: source.order() });
        }
        if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(HomomorphismError::OutOfRange { index, value });
        }
        if map[0] != 0 {
            return Err(HomomorphismError::IdentityNotPreserved { value: map[0] });
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(HomomorphismError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Self {
        debug_assert!(Self::new(source.clone(), target.clone(), map.clone()).is_ok());
        Homomorphism { source, target, map }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Homomorphism { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Homomorphism { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    /// Inclusion of a subgroup, viewed as its own group, into the parent.
    pub fn inclusion(sub: &Subgroup) -> (FiniteGroup, Homomorphism) {
        let g = sub.as_group();
        let h = Homomorphism { source: g.clone(), target: sub.parent().clone(), map: sub.members().to_vec() };
        (g, h)
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism, HomomorphismError> {
        if self.target != other.source {
            return Err(HomomorphismError::NotComposable);
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self.source.elements().filter(|&a| self.map[a] == 0).collect();
        Subgroup::from_sorted_unchecked(self.source.clone(), members)
    }

    pub fn image(&self) -> Subgroup {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        let members = (0..self.target.order()).filter(|&b| hit[b]).collect();
        Subgroup::from_sorted_unchecked(self.target.clone(), members)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse map table of an injective homomorphism: `None` outside the image.
    pub fn preimages(&self) -> Vec<Option<usize>> {
        let mut back = vec![None; self.target.order()];
        for (a, &b) in self.map.iter().enumerate() {
            back[b].get_or_insert(a);
        }
        back
    }

    /// The inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let map = self.preimages().into_iter().map(|x| x.expect("bijective")).collect();
        Some(Homomorphism { source: self.target.clone(), target: self.source.clone(), map })
    }
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Homomorphism")
            .field("source_order", &self.source.order())
            .field("target_order", &self.target.order())
            .field("map", &self.map)
            .finish()
    }
}

/// Every homomorphism `source → target`, in lexicographic order of the map array.
///
/// Generator images are chosen by backtracking over elements whose order
/// divides that of the generator; each assignment is extended along a word
/// tree and checked exhaustively.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Homomorphism> {
    let gens = source.greedy_generators();
    let tree = source.word_tree(&gens);
    let order = source.word_order(&tree);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let n = source.element_order(g);
            target.elements().filter(|&t| n.is_multiple_of(target.element_order(t))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let mut images = vec![0usize; gens.len()];
    'outer: loop {
        if candidates.iter().any(|c| c.is_empty()) {
            break;
        }
        for (k, &c) in choice.iter().enumerate() {
            images[k] = candidates[k][c];
        }
        let mut map = vec![0usize; source.order()];
        for &x in order.iter().skip(1) {
            let (p, k) = tree[x].expect("generated");
            map[x] = target.mul(map[p], images[k]);
        }
        if let Ok(h) = Homomorphism::new(source.clone(), target.clone(), map) {
            out.push(h);
        }
        // odometer
        let mut k = gens.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out.dedup_by(|a, b| a.map == b.map);
    out
}

#[allow(dead_code)]
pub(crate) fn brute_homomorphism_count(source: &FiniteGroup, target: &FiniteGroup) -> usize {
    let n = source.order();
    let m = target.order();
    let mut count = 0;
    let mut map = vec![0usize; n];
    loop {
        if map[0] == 0 && Homomorphism::new(source.clone(), target.clone(), map.clone()).is_ok() {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            map[k] += 1;
            if map[k] < m {
                break;
            }
            map[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn kernel_and_image() {
        let z4 = fixtures::cyclic(4);
        let z2 = fixtures::cyclic(2);
        let id = Homomorphism::identity(&z4);
        assert_eq!(id.kernel().members(), &[0]);
        assert_eq!(id.image().order(), 4);
        let red = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(red.kernel().members(), &[0, 2]);
        assert_eq!(red.image().order(), 2);

        let s3 = fixtures::symmetric3();
        let a3 = s3.subgroup_closure(&[1]);
        assert_eq!(a3.order(), 3);
        let (g, inc) = Homomorphism::inclusion(&a3);
        assert_eq!(g.order(), 3);
        assert_eq!(inc.kernel().order(), 1);
        assert_eq!(inc.image().members(), a3.members());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let z4 = fixtures::cyclic(4);
        let z2 = fixtures::cyclic(2);
        assert!(matches!(Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 1, 0]), Err(HomomorphismError::NotMultiplicative { .. })));
        assert!(matches!(
            Homomorphism::new(z4.clone(), z2.clone(), vec![1, 0, 1, 0]),
            Err(HomomorphismError::IdentityNotPreserved { value: 1 })
        ));
        assert!(matches!(Homomorphism::new(z4, z2, vec![0, 1, 0]), Err(HomomorphismError::WrongLength { .. })));
    }

    #[test]
    fn homomorphism_enumeration_matches_brute_force() {
        let groups = [fixtures::cyclic(2), fixtures::cyclic(3), fixtures::cyclic(4), fixtures::klein4(), fixtures::symmetric3()];
        for s in &groups {
            for t in &groups {
                if s.order() <= 4 || t.order() <= 4 {
                    assert_eq!(homomorphisms(s, t).len(), brute_homomorphism_count(s, t));
                }
            }
        }
        // |Hom(S3, S3)| = 10: trivial, 3 onto order-2 subgroups, 6 automorphisms.
        assert_eq!(homomorphisms(&fixtures::symmetric3(), &fixtures::symmetric3()).len(), 10);
    }
}
