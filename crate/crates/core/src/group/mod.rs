//! Finite groups as dense Cayley tables.
//!
//! Every group carries its multiplication table with the identity pinned at
//! index 0. Elements are plain `usize` indices, so homomorphisms, subgroups
//! and quotients are all index arrays over a table.

mod aut;
mod hom;
mod subgroup;

pub use aut::{automorphism_group, automorphism_group_with_bound, automorphism_table, inner_automorphism, Automorphism};
pub use hom::{homomorphisms, Homomorphism, HomomorphismError};
pub use subgroup::{cokernel, quotient, QuotientData, Subgroup};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the order of groups whose automorphisms are enumerated.
pub const DEFAULT_AUT_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity is not at index 0: table[{row}][{col}] = {value}")]
    IdentityNotAtZero { row: usize, col: usize, value: usize },
    #[error("not a Latin square: value {value} repeats in {line} {index}")]
    NotLatinSquare { line: &'static str, index: usize, value: usize },
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("labels has length {len}, expected {order}")]
    LabelCount { len: usize, order: usize },
    #[error("group of order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal: {conjugator} conjugates {member} outside")]
    NotNormal { conjugator: usize, member: usize },
    #[error("image is not normal in the target")]
    ImageNotNormal,
    #[error(transparent)]
    Homomorphism(#[from] HomomorphismError),
}

#[derive(Debug)]
struct GroupData {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// A validated finite group. Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl FiniteGroup {
    /// Validates `table` (with `table[a][b]` the index of `a·b`) and returns the group.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare { row, len: r.len(), order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
            }
            flat.extend_from_slice(r);
        }
        Self::from_flat(order, flat, labels)
    }

    pub(crate) fn from_flat(order: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(GroupError::LabelCount { len: l.len(), order });
            }
        }
        for b in 0..order {
            if table[b] != b {
                return Err(GroupError::IdentityNotAtZero { row: 0, col: b, value: table[b] });
            }
            if table[b * order] != b {
                return Err(GroupError::IdentityNotAtZero { row: b, col: 0, value: table[b * order] });
            }
        }
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let v = table[a * order + b];
                if seen[v] == a {
                    return Err(GroupError::NotLatinSquare { line: "row", index: a, value: v });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..order {
            for a in 0..order {
                let v = table[a * order + b];
                if seen[v] == b {
                    return Err(GroupError::NotLatinSquare { line: "column", index: b, value: v });
                }
                seen[v] = b;
            }
        }
        let mut inv = vec![0; order];
        for a in 0..order {
            let right = (0..order).find(|&b| table[a * order + b] == 0).expect("latin row contains 0");
            if table[right * order + a] != 0 {
                return Err(GroupError::MissingInverse { element: a });
            }
            inv[a] = right;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { data: Arc::new(GroupData { order, table, inv, labels }) })
    }

    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0], None).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inv[a]
    }

    /// `a · b⁻¹`
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    /// Conjugation `b · a · b⁻¹`.
    #[inline]
    pub fn conj(&self, b: usize, a: usize) -> usize {
        self.mul(self.mul(b, a), self.inv(b))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.data.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.data.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order() {
            return Err(GroupError::LabelCount { len: labels.len(), order: self.order() });
        }
        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                order: self.data.order,
                table: self.data.table.clone(),
                inv: self.data.inv.clone(),
                labels: Some(labels),
            }),
        })
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.data.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    /// The set `{z : z·a = a·z for all a}`.
    pub fn center(&self) -> Subgroup {
        let members = self.elements().filter(|&z| self.elements().all(|a| self.mul(z, a) == self.mul(a, z))).collect();
        Subgroup::from_sorted_unchecked(self.clone(), members)
    }

    /// Least subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut frontier = vec![0];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g < self.order()).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted_unchecked(self.clone(), members)
    }

    /// A generating set picked greedily: at each step, the element that enlarges
    /// the current subgroup the most (least index on ties).
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.subgroup_closure(&[]);
        while current.order() < self.order() {
            let mut best: Option<(usize, usize)> = None;
            for a in self.elements() {
                if current.contains(a) {
                    continue;
                }
                gens.push(a);
                let size = self.subgroup_closure(&gens).order();
                gens.pop();
                if best.is_none_or(|(_, s)| size > s) {
                    best = Some((a, size));
                }
            }
            let (a, _) = best.expect("proper subgroup has an element outside");
            gens.push(a);
            current = self.subgroup_closure(&gens);
        }
        gens
    }

    /// For every element, a `(parent, generator position)` pair with
    /// `element = parent · gens[position]`, built breadth-first from the identity.
    pub(crate) fn word_tree(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let mut tree = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Breadth-first order of `word_tree`, so parents precede children.
    pub(crate) fn word_order(&self, tree: &[Option<(usize, usize)>]) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.order()];
        depth[0] = 0;
        fn d(x: usize, tree: &[Option<(usize, usize)>], depth: &mut [usize]) -> usize {
            if depth[x] != usize::MAX {
                return depth[x];
            }
            let (p, _) = tree[x].expect("generated element");
            let v = d(p, tree, depth) + 1;
            depth[x] = v;
            v
        }
        for x in 0..self.order() {
            d(x, tree, &mut depth);
        }
        let mut order: Vec<usize> = (0..self.order()).collect();
        order.sort_by_key(|&x| (depth[x], x));
        order
    }

    /// The direct product on pairs `(a, b)`, indexed `a * |h| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        let labels = match (self.labels(), other.labels()) {
            (None, None) => None,
            _ => Some((0..n * m).map(|x| format!("({},{})", self.label(x / m), other.label(x % m))).collect()),
        };
        FiniteGroup::from_flat(n * m, table, labels).expect("direct product of groups is a group")
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || (self.data.order == other.data.order && self.data.table == other.data.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order()).finish_non_exhaustive()
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
