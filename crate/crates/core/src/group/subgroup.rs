use super::{FiniteGroup, GroupError, Homomorphism};

/// A subgroup as a sorted member list of its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Validates closure under the operation and inverses.
    pub fn new(parent: FiniteGroup, mut members: Vec<usize>) -> Option<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) || members.iter().any(|&m| m >= parent.order()) {
            return None;
        }
        let s = Self::from_sorted_unchecked(parent, members);
        let closed = s.members.iter().all(|&a| s.contains(s.parent.inv(a)) && s.members.iter().all(|&b| s.contains(s.parent.mul(a, b))));
        closed.then_some(s)
    }

    pub(crate) fn from_sorted_unchecked(parent: FiniteGroup, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent, members, mask }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// True iff `a·h·a⁻¹` stays inside for every `a` in the parent.
    pub fn is_normal(&self) -> bool {
        self.conjugation_witness().is_none()
    }

    fn conjugation_witness(&self) -> Option<(usize, usize)> {
        for a in self.parent.elements() {
            for &h in &self.members {
                if !self.contains(self.parent.conj(a, h)) {
                    return Some((a, h));
                }
            }
        }
        None
    }

    /// The subgroup as a group in its own right, indexed by position in `members`.
    pub fn as_group(&self) -> FiniteGroup {
        let n = self.order();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &m) in self.members.iter().enumerate() {
            pos[m] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                table.push(pos[self.parent.mul(a, b)]);
            }
        }
        let labels = self.parent.labels().map(|l| self.members.iter().map(|&m| l[m].clone()).collect());
        FiniteGroup::from_flat(n, table, labels).expect("closed subset of a group is a group")
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup").field("members", &self.members).finish()
    }
}

/// A quotient `parent / normal` with its projection and least coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub parent: FiniteGroup,
    pub normal: Subgroup,
    pub quotient: FiniteGroup,
    pub projection: Homomorphism,
    /// `reps[c]` is the least parent index in coset `c`.
    pub reps: Vec<usize>,
}

impl QuotientData {
    /// Elements of the parent lying over coset `c`, ascending.
    pub fn fiber(&self, c: usize) -> Vec<usize> {
        self.parent.elements().filter(|&a| self.projection.apply(a) == c).collect()
    }
}

/// Quotient by a normal subgroup. The identity coset is index 0; other cosets
/// are ordered by their least representative.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<QuotientData, GroupError> {
    if let Some((conjugator, member)) = n.conjugation_witness() {
        return Err(GroupError::NotNormal { conjugator, member });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for &m in n.members() {
            coset[g.mul(a, m)] = c;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)]);
        }
    }
    let quotient = FiniteGroup::from_flat(k, table, None).expect("quotient by a normal subgroup is a group");
    let projection = Homomorphism::new_unchecked(g.clone(), quotient.clone(), coset);
    Ok(QuotientData { parent: g.clone(), normal: n.clone(), quotient, projection, reps })
}

/// `target / image(f)` with its natural projection.
pub fn cokernel(f: &Homomorphism) -> Result<QuotientData, GroupError> {
    let im = f.image();
    if !im.is_normal() {
        return Err(GroupError::ImageNotNormal);
    }
    quotient(f.target(), &im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn normality() {
        let z4 = fixtures::cyclic(4);
        assert!(z4.subgroup_closure(&[2]).is_normal());
        let s3 = fixtures::symmetric3();
        let three = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let two = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        assert!(s3.subgroup_closure(&[three]).is_normal());
        assert!(!s3.subgroup_closure(&[two]).is_normal());
    }

    #[test]
    fn quotients() {
        let z4 = fixtures::cyclic(4);
        let q = quotient(&z4, &z4.subgroup_closure(&[2])).unwrap();
        assert_eq!(q.quotient.order(), 2);
        assert_eq!(q.reps, vec![0, 1]);
        assert_eq!(q.projection.map(), &[0, 1, 0, 1]);

        let s3 = fixtures::symmetric3();
        let triv = quotient(&s3, &s3.subgroup_closure(&[])).unwrap();
        assert_eq!(triv.quotient, s3);
        assert_eq!(triv.projection.map(), (0..6).collect::<Vec<_>>().as_slice());

        let three = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let q = quotient(&s3, &s3.subgroup_closure(&[three])).unwrap();
        assert_eq!(q.quotient.order(), 2);

        let two = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        assert!(matches!(quotient(&s3, &s3.subgroup_closure(&[two])), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn cokernels() {
        let z4 = fixtures::cyclic(4);
        let z2 = fixtures::cyclic(2);
        let red = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(cokernel(&red).unwrap().quotient.order(), 1);
        let inc = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        assert_eq!(cokernel(&inc).unwrap().quotient.order(), 2);

        let s3 = fixtures::symmetric3();
        let three = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let (_, inc3) = Homomorphism::inclusion(&s3.subgroup_closure(&[three]));
        let c = cokernel(&inc3).unwrap();
        assert_eq!(c.quotient.order(), 2);
        // σ ∘ f is trivial
        assert!(inc3.then(&c.projection).unwrap().map().iter().all(|&x| x == 0));

        let two = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let (_, inc2) = Homomorphism::inclusion(&s3.subgroup_closure(&[two]));
        assert_eq!(cokernel(&inc2).unwrap_err(), GroupError::ImageNotNormal);
    }

    #[test]
    fn subgroup_validation() {
        let z4 = fixtures::cyclic(4);
        assert!(Subgroup::new(z4.clone(), vec![0, 2]).is_some());
        assert!(Subgroup::new(z4.clone(), vec![0, 1]).is_none());
        assert!(Subgroup::new(z4, vec![2]).is_none());
    }
}
