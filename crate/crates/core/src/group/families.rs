//! Standard groups used throughout the tests and the shipped corpus.

use num_integer::Integer;

use super::{close_group, FiniteGroup, GroupElement, GroupError, MatrixElement, WeightVector, DEFAULT_BOUND};
use crate::arith::CyclotomicNumber;

/// The cyclic group generated by `(1/r)(a)`.
pub fn cyclic(r: u32, a: &[i64]) -> Result<FiniteGroup, GroupError> {
    diagonal(a.len(), &[(r, a.to_vec())])
}

/// The diagonal group generated by the given weight vectors on `C^n`.
pub fn diagonal(n: usize, gens: &[(u32, Vec<i64>)]) -> Result<FiniteGroup, GroupError> {
    let gens = gens
        .iter()
        .map(|(r, a)| WeightVector::new(*r, a).map(GroupElement::Weight))
        .collect::<Result<Vec<_>, _>>()?;
    close_group(n, &gens, DEFAULT_BOUND)
}

/// `1/r(1, r-1)` in `SL(2, C)`.
pub fn sl2_cyclic(r: u32) -> Result<FiniteGroup, GroupError> {
    cyclic(r, &[1, r as i64 - 1])
}

/// `1/b(1, …, 1)` acting on `C^{ab}`.
pub fn scalar_cyclic(a: usize, b: u32) -> Result<FiniteGroup, GroupError> {
    cyclic(b, &vec![1; a * b as usize])
}

/// The maximal diagonal subgroup `(Z/2)^3` of `SL(4, C)`.
pub fn klein_cube() -> FiniteGroup {
    diagonal(4, &[(2, vec![1, 1, 0, 0]), (2, vec![0, 1, 1, 0]), (2, vec![0, 0, 1, 1])]).expect("valid generators")
}

/// Generators `α = diag(ε, ε^{-1})`, `β = [[0, 1], [-1, 0]]` of the binary dihedral group of order `4n`,
/// with `ε = exp(2πi/2n)`.
pub fn binary_dihedral_generators(n: u32) -> (MatrixElement, MatrixElement) {
    assert!(n >= 1, "binary dihedral groups need n >= 1");
    let m = (2 * n).lcm(&4);
    let step = (m / (2 * n)) as i64;
    let alpha = MatrixElement::diagonal(&[step, -step], m);
    let zero = CyclotomicNumber::zero(m);
    let one = CyclotomicNumber::one(m);
    let beta = MatrixElement::new(2, vec![zero.clone(), one.clone(), -&one, zero]).expect("2x2 matrix");
    (alpha, beta)
}

/// The binary dihedral group `BD_{4n}` of order `4n`.
pub fn binary_dihedral(n: u32) -> Result<FiniteGroup, GroupError> {
    let (a, b) = binary_dihedral_generators(n);
    close_group(2, &[GroupElement::Matrix(a), GroupElement::Matrix(b)], DEFAULT_BOUND)
}

/// The quaternion group, which is `BD_8`.
pub fn quaternion() -> FiniteGroup {
    binary_dihedral(2).expect("BD8 closes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_dihedral_orders_and_classes() {
        let q = quaternion();
        assert_eq!(q.order(), 8);
        assert_eq!(q.conjugacy_classes().len(), 5);
        assert_eq!(q.commuting_pairs_count(), 40);
        let bd12 = binary_dihedral(3).unwrap();
        assert_eq!(bd12.order(), 12);
        assert_eq!(bd12.conjugacy_classes().len(), 6);
        for n in 1..=6 {
            let g = binary_dihedral(n).unwrap();
            assert_eq!(g.order(), 4 * n as usize);
            assert_eq!(g.commuting_pairs_count(), (g.order() * g.conjugacy_classes().len()) as u64);
        }
    }

    #[test]
    fn quaternion_subgroups() {
        let l = quaternion().subgroup_lattice(512).unwrap();
        assert_eq!(l.subgroups.len(), 6);
        assert_eq!(l.classes.len(), 6);
        let sizes: Vec<usize> = l.subgroups.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn klein_cube_structure() {
        let g = klein_cube();
        assert_eq!(g.order(), 8);
        let mid = g.index_of(&GroupElement::Weight(WeightVector::new(2, &[1, 1, 0, 0]).unwrap())).unwrap();
        let fixed = g.fixed_subspace(mid);
        assert_eq!(fixed.coordinates, Some(vec![2, 3]));
        assert_eq!(fixed.dim, 2);
    }

    #[test]
    fn matrix_fixed_space_is_class_invariant() {
        let g = binary_dihedral(4).unwrap();
        for class in g.conjugacy_classes() {
            let d = g.fixed_subspace(class.representative).dim;
            assert!(class.members.iter().all(|&m| g.fixed_subspace(m).dim == d));
            assert!(g.order().is_multiple_of(class.size()));
        }
        assert_eq!(g.fixed_subspace(0).dim, 2);
        assert_eq!(g.fixed_subspace(1).dim, 0);
    }
}
