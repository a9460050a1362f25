//! Finite subgroups of `SL(n, C)` given by generators.
//!
//! Elements are enumerated by brute-force closure and stored in a canonical
//! order, so class representatives and reports are deterministic. Index 0 is
//! always the identity.

mod element;
pub mod families;
pub mod linalg;
pub mod spec;

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::CyclotomicNumber;

pub use element::{GroupElement, MatrixElement, WeightVector};

/// Default closure bound.
pub const DEFAULT_BOUND: usize = 10_000;
/// Default order bound for subgroup enumeration of matrix groups.
pub const DEFAULT_SUBGROUP_BOUND: usize = 512;
/// Largest conductor accepted for cyclotomic entries.
pub const MAX_CONDUCTOR: u32 = 1024;
/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group is not finite within bound {bound}")]
    NotFinite { bound: usize },
    #[error("generator {0} does not have determinant 1")]
    NotSpecial(String),
    #[error("generator of dimension {got} in a group of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot mix weight-vector and matrix generators")]
    MixedKinds,
    #[error("group of order {order} exceeds the subgroup bound {bound}; use the abelian-only mode")]
    TooLarge { order: usize, bound: usize },
    #[error("operation requires an abelian diagonal group")]
    NotAbelian,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    AbelianDiagonal,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Index of the member with the least canonical index.
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Fixed subspace of an element acting on `C^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubspace {
    pub dim: usize,
    /// The fixed coordinate indices, for diagonal elements.
    pub coordinates: Option<Vec<usize>>,
    /// A basis of `ker(g - 1)`.
    pub basis: Vec<Vec<CyclotomicNumber>>,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    kind: GroupKind,
    n: usize,
    conductor: u32,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
}

/// Closes `generators` under multiplication. An empty list gives the trivial group on `C^n`.
pub fn close_group(n: usize, generators: &[GroupElement], bound: usize) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::generate(n, generators, bound)
}

impl FiniteGroup {
    pub fn generate(n: usize, generators: &[GroupElement], bound: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Invalid("dimension must be positive".into()));
        }
        let is_matrix = generators.iter().any(|g| matches!(g, GroupElement::Matrix(_)));
        if is_matrix && generators.iter().any(|g| matches!(g, GroupElement::Weight(_))) {
            return Err(GroupError::MixedKinds);
        }
        for g in generators {
            if g.dim() != n {
                return Err(GroupError::DimensionMismatch { expected: n, got: g.dim() });
            }
        }
        let (kind, conductor, gens, identity) = if is_matrix {
            let m = generators
                .iter()
                .filter_map(|g| g.as_matrix())
                .fold(1u32, |a, g| a.lcm(&g.conductor()));
            let gens: Vec<GroupElement> =
                generators.iter().map(|g| GroupElement::Matrix(g.as_matrix().unwrap().embed(m))).collect();
            for g in &gens {
                if !g.as_matrix().unwrap().determinant().is_one() {
                    return Err(GroupError::NotSpecial(g.to_string()));
                }
            }
            (GroupKind::Matrix, m, gens, GroupElement::Matrix(MatrixElement::identity(n, m)))
        } else {
            for g in generators {
                if !g.as_weight().unwrap().is_special() {
                    return Err(GroupError::NotSpecial(g.to_string()));
                }
            }
            let m = generators.iter().filter_map(|g| g.as_weight()).fold(1u32, |a, g| a.lcm(&g.order()));
            (GroupKind::AbelianDiagonal, m, generators.to_vec(), GroupElement::Weight(WeightVector::identity(n)))
        };

        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let mut found = vec![identity.clone()];
        seen.insert(identity, ());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = found[i].compose(g);
                if !seen.contains_key(&y) {
                    if found.len() >= bound {
                        return Err(GroupError::NotFinite { bound });
                    }
                    seen.insert(y.clone(), ());
                    found.push(y);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        Ok(Self::from_elements(kind, n, conductor, found, &gens))
    }

    fn from_elements(
        kind: GroupKind,
        n: usize,
        conductor: u32,
        mut elements: Vec<GroupElement>,
        gens: &[GroupElement],
    ) -> Self {
        let orders_of = |els: &[GroupElement]| -> Vec<u32> {
            els.iter()
                .map(|e| match e {
                    GroupElement::Weight(w) => w.order(),
                    GroupElement::Matrix(m) => {
                        let mut k = 1;
                        let mut p = m.clone();
                        while !p.is_identity() {
                            p = p.mul(m);
                            k += 1;
                        }
                        k
                    }
                })
                .collect()
        };
        match kind {
            GroupKind::AbelianDiagonal => elements.sort_by(|a, b| a.as_weight().cmp(&b.as_weight())),
            GroupKind::Matrix => {
                let orders = orders_of(&elements);
                let mut keyed: Vec<_> = elements
                    .into_iter()
                    .zip(orders)
                    .map(|(e, o)| ((o, e.as_matrix().unwrap().sort_key()), e))
                    .collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                elements = keyed.into_iter().map(|(_, e)| e).collect();
            }
        }
        let orders = orders_of(&elements);
        let index: HashMap<GroupElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut generators: Vec<usize> = gens.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        let mut group = FiniteGroup {
            kind,
            n,
            conductor,
            elements,
            index,
            generators,
            inverses: Vec::new(),
            orders,
            table: None,
        };
        let order = group.order();
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for i in 0..order {
                for j in 0..order {
                    table.push(group.lookup(&group.elements[i].compose(&group.elements[j])) as u32);
                }
            }
            group.table = Some(table);
        }
        group.inverses = (0..order)
            .map(|i| {
                let k = group.orders[i] as usize;
                let mut p = 0;
                for _ in 0..k - 1 {
                    p = group.mul(p, i);
                }
                p
            })
            .collect();
        group
    }

    fn lookup(&self, e: &GroupElement) -> usize {
        *self.index.get(e).expect("product left the group")
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn is_abelian_diagonal(&self) -> bool {
        self.kind == GroupKind::AbelianDiagonal
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Conductor of the matrix entries, or the exponent of an abelian diagonal group.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |a, &b| a.lcm(&b))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.lookup(&self.elements[i].compose(&self.elements[j])),
        }
    }

    pub fn power(&self, i: usize, k: u32) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, i))
    }

    /// Weight vector of every element, for abelian diagonal groups.
    pub fn weights(&self) -> Result<Vec<&WeightVector>, GroupError> {
        self.elements.iter().map(|e| e.as_weight().ok_or(GroupError::NotAbelian)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Partition into conjugacy classes, ordered by representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                if self.kind == GroupKind::AbelianDiagonal {
                    break;
                }
                for &g in &self.generators {
                    let y = self.mul(self.mul(g, x), self.inverse(g));
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass { representative: members[0], members });
        }
        classes
    }

    /// Class index of every element.
    pub fn class_map(&self, classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut map = vec![0; self.order()];
        for (c, class) in classes.iter().enumerate() {
            for &m in &class.members {
                map[m] = c;
            }
        }
        map
    }

    /// Ordered pairs `(g, h)` with `gh = hg`, counted by brute force.
    pub fn commuting_pairs_count(&self) -> u64 {
        let order = self.order();
        let mut count = 0u64;
        for i in 0..order {
            for j in 0..order {
                if self.mul(i, j) == self.mul(j, i) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn centralizer(&self, i: usize) -> Vec<usize> {
        (0..self.order()).filter(|&j| self.mul(i, j) == self.mul(j, i)).collect()
    }

    pub fn fixed_subspace(&self, i: usize) -> FixedSubspace {
        fixed_subspace(&self.elements[i])
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// All subgroups, grouped into conjugacy classes.
    ///
    /// Matrix groups above `bound` are refused; abelian diagonal groups are always enumerated.
    pub fn subgroup_lattice(&self, bound: usize) -> Result<SubgroupLattice, GroupError> {
        if self.kind == GroupKind::Matrix && self.order() > bound {
            return Err(GroupError::TooLarge { order: self.order(), bound });
        }
        let mut known: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        let mut cyclic: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.order() {
            let c = self.generated_subgroup(&[i]);
            if known.insert(c.clone(), ()).is_none() {
                cyclic.push(c);
            }
        }
        let cyclic_gens: Vec<usize> = cyclic.iter().map(|c| *c.iter().max_by_key(|&&x| self.orders[x]).unwrap()).collect();
        let mut queue: VecDeque<Vec<usize>> = cyclic.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            for (c, &g) in cyclic.iter().zip(&cyclic_gens) {
                if h.binary_search(&g).is_ok() || c.len() == 1 {
                    continue;
                }
                let mut gens: Vec<usize> = h.clone();
                gens.push(g);
                let joined = self.generated_subgroup(&gens);
                if known.insert(joined.clone(), ()).is_none() {
                    queue.push_back(joined);
                }
            }
        }
        let mut subgroups: Vec<Vec<usize>> = known.into_keys().collect();
        subgroups.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let position: HashMap<Vec<usize>, usize> =
            subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for s in 0..subgroups.len() {
            if class_of[s] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[s] = id;
            let mut members = vec![s];
            let mut k = 0;
            while k < members.len() {
                let h = &subgroups[members[k]];
                k += 1;
                if self.kind == GroupKind::AbelianDiagonal {
                    break;
                }
                let mut conj: Vec<Vec<usize>> = Vec::new();
                for &g in &self.generators {
                    let mut c: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), self.inverse(g))).collect();
                    c.sort_unstable();
                    conj.push(c);
                }
                for c in conj {
                    let t = position[&c];
                    if class_of[t] == usize::MAX {
                        class_of[t] = id;
                        members.push(t);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(SubgroupLattice { subgroups, classes })
    }
}

/// Subgroups sorted by (order, elements); `classes` groups them up to conjugacy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Vec<usize>>,
    pub classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    /// True when subgroup `a` is contained in subgroup `b`.
    pub fn is_contained(&self, a: usize, b: usize) -> bool {
        let big = &self.subgroups[b];
        self.subgroups[a].iter().all(|x| big.binary_search(x).is_ok())
    }
}

pub fn fixed_subspace(g: &GroupElement) -> FixedSubspace {
    match g {
        GroupElement::Weight(w) => {
            let coords = w.fixed_coordinates();
            let basis = coords
                .iter()
                .map(|&i| (0..w.dim()).map(|j| CyclotomicNumber::from_int((i == j) as i64, 1)).collect())
                .collect();
            FixedSubspace { dim: coords.len(), coordinates: Some(coords), basis }
        }
        GroupElement::Matrix(m) => {
            let n = m.dim();
            let c = m.conductor();
            let a: Vec<CyclotomicNumber> = (0..n * n)
                .map(|k| {
                    let e = m.entry(k / n, k % n);
                    if k / n == k % n {
                        e - &CyclotomicNumber::one(c)
                    } else {
                        e.clone()
                    }
                })
                .collect();
            let basis = linalg::nullspace(n, n, a, c);
            FixedSubspace { dim: basis.len(), coordinates: None, basis }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(r: u32, a: &[i64]) -> FiniteGroup {
        let g = GroupElement::Weight(WeightVector::new(r, a).unwrap());
        close_group(a.len(), &[g], DEFAULT_BOUND).unwrap()
    }

    #[test]
    fn cyclic_closure() {
        let g = cyclic(7, &[1, 2, 4]);
        assert_eq!(g.order(), 7);
        assert_eq!(g.conjugacy_classes().len(), 7);
        assert_eq!(g.commuting_pairs_count(), 49);
        assert!(g.element(0).is_identity());
        assert_eq!(g.fixed_subspace(1).dim, 0);
        assert_eq!(g.fixed_subspace(0).dim, 3);
    }

    #[test]
    fn trivial_group() {
        let g = close_group(3, &[], DEFAULT_BOUND).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.commuting_pairs_count(), 1);
        assert_eq!(g.subgroup_lattice(DEFAULT_SUBGROUP_BOUND).unwrap().subgroups.len(), 1);
    }

    #[test]
    fn determinant_is_checked() {
        let g = GroupElement::Weight(WeightVector::new(3, &[1, 1]).unwrap());
        assert!(matches!(close_group(2, &[g], 100), Err(GroupError::NotSpecial(_))));
    }

    #[test]
    fn bound_is_enforced() {
        let g = GroupElement::Weight(WeightVector::new(50, &[1, 49]).unwrap());
        assert_eq!(close_group(2, &[g], 20).unwrap_err(), GroupError::NotFinite { bound: 20 });
    }

    #[test]
    fn prime_order_subgroups() {
        let l = cyclic(7, &[1, 2, 4]).subgroup_lattice(DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!(l.subgroups.len(), 2);
        assert_eq!(l.classes.len(), 2);
        assert!(l.is_contained(0, 1));
    }
}
