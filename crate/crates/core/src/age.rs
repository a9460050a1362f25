//! Eigen-exponents, age, and the junior/senior split of conjugacy classes.
//!
//! For `g` of order `r` with eigenvalues `ε^{a_i}`, `0 ≤ a_i < r`, the age is
//! `(Σ a_i)/r`. Matrix elements are never diagonalized: the exponent multiset
//! comes from the traces of the powers of `g`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{cyclo_dft_multiplicities, DftError};
use crate::group::{ConjugacyClass, FiniteGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgeError {
    #[error("exponents sum to {sum}, which is not a multiple of the order {order}; determinant is not 1")]
    NotSpecial { sum: u64, order: u32 },
    #[error("the identity has no exceptional divisor")]
    Identity,
    #[error(transparent)]
    Dft(#[from] DftError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgeProfile {
    pub class_index: usize,
    pub representative: usize,
    pub order: u32,
    /// Coordinate order for diagonal elements, ascending for matrices.
    pub exponents: Vec<u32>,
    pub age: u32,
    pub fixed_dim: usize,
    pub junior: bool,
}

/// Order, exponents and age of a single element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementAge {
    pub order: u32,
    pub exponents: Vec<u32>,
    pub age: u32,
}

impl ElementAge {
    pub fn fixed_dim(&self) -> usize {
        self.exponents.iter().filter(|&&a| a == 0).count()
    }

    /// Sorted exponent multiset; equal across a conjugacy class.
    pub fn multiset(&self) -> Vec<u32> {
        let mut e = self.exponents.clone();
        e.sort_unstable();
        e
    }
}

pub fn element_age(g: &GroupElement) -> Result<ElementAge, AgeError> {
    let (order, exponents) = match g {
        GroupElement::Weight(w) => (w.order(), w.exponents().to_vec()),
        GroupElement::Matrix(m) => {
            let mut traces = vec![crate::arith::CyclotomicNumber::from_int(m.dim() as i64, m.conductor())];
            let mut p = m.clone();
            while !p.is_identity() {
                traces.push(p.trace());
                p = p.mul(m);
            }
            let r = traces.len() as u32;
            let mult = cyclo_dft_multiplicities(&traces, r)?;
            let exps = mult.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat_n(j as u32, c as usize)).collect();
            (r, exps)
        }
    };
    let sum: u64 = exponents.iter().map(|&a| a as u64).sum();
    if !sum.is_multiple_of(order as u64) {
        return Err(AgeError::NotSpecial { sum, order });
    }
    Ok(ElementAge { order, exponents, age: (sum / order as u64) as u32 })
}

/// Discrepancy `age(g) - 1` of the divisor attached to `g`; zero exactly for junior `g`.
pub fn discrepancy_of_class(g: &GroupElement) -> Result<i64, AgeError> {
    if g.is_identity() {
        return Err(AgeError::Identity);
    }
    Ok(element_age(g)?.age as i64 - 1)
}

/// One profile per conjugacy class, in class order.
pub fn age_profiles(group: &FiniteGroup, classes: &[ConjugacyClass]) -> Result<Vec<AgeProfile>, AgeError> {
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let a = element_age(group.element(c.representative))?;
            Ok(AgeProfile {
                class_index: i,
                representative: c.representative,
                order: a.order,
                fixed_dim: a.fixed_dim(),
                junior: a.age == 1,
                age: a.age,
                exponents: a.exponents,
            })
        })
        .collect()
}

/// Classes of age exactly 1, in class order.
pub fn junior_classes(group: &FiniteGroup) -> Result<Vec<ConjugacyClass>, AgeError> {
    let classes = group.conjugacy_classes();
    let profiles = age_profiles(group, &classes)?;
    Ok(classes.into_iter().zip(profiles).filter(|(_, p)| p.junior).map(|(c, _)| c).collect())
}

/// Number of conjugacy classes of each age.
pub fn age_census(group: &FiniteGroup) -> Result<BTreeMap<u32, usize>, AgeError> {
    let classes = group.conjugacy_classes();
    let mut census = BTreeMap::new();
    for p in age_profiles(group, &classes)? {
        *census.entry(p.age).or_insert(0) += 1;
    }
    Ok(census)
}

/// Renders a census as `0:1 1:3 2:3`.
pub fn format_census(census: &BTreeMap<u32, usize>) -> String {
    census.iter().map(|(a, c)| format!("{a}:{c}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{families, WeightVector};

    fn census(pairs: &[(u32, usize)]) -> BTreeMap<u32, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn census_examples() {
        assert_eq!(age_census(&families::cyclic(7, &[1, 2, 4]).unwrap()).unwrap(), census(&[(0, 1), (1, 3), (2, 3)]));
        assert_eq!(age_census(&families::cyclic(2, &[1, 1, 1, 1]).unwrap()).unwrap(), census(&[(0, 1), (2, 1)]));
        assert_eq!(age_census(&families::cyclic(1, &[0, 0, 0]).unwrap()).unwrap(), census(&[(0, 1)]));
    }

    #[test]
    fn junior_counts() {
        let j = junior_classes(&families::cyclic(7, &[1, 2, 4]).unwrap()).unwrap();
        let reps: Vec<String> = j.iter().map(|c| c.representative.to_string()).collect();
        assert_eq!(reps.len(), 3);
        assert!(junior_classes(&families::cyclic(5, &[1, 4, 2, 3]).unwrap()).unwrap().is_empty());
        assert_eq!(junior_classes(&families::sl2_cyclic(2).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn discrepancies() {
        let g = GroupElement::Weight(WeightVector::new(7, &[3, 6, 5]).unwrap());
        assert_eq!(discrepancy_of_class(&g).unwrap(), 1);
        let id = GroupElement::Weight(WeightVector::identity(3));
        assert_eq!(discrepancy_of_class(&id), Err(AgeError::Identity));
        for (a, b) in [(1usize, 2u32), (2, 3), (3, 2)] {
            let g = GroupElement::Weight(WeightVector::new(b, &vec![1; a * b as usize]).unwrap());
            assert_eq!(discrepancy_of_class(&g).unwrap(), a as i64 - 1);
            for k in 0..b {
                if let GroupElement::Weight(w) = &g {
                    let p = GroupElement::Weight(w.pow(k as i64));
                    assert_eq!(element_age(&p).unwrap().age, a as u32 * k);
                }
            }
        }
    }

    #[test]
    fn matrix_ages_are_class_functions() {
        let g = families::binary_dihedral(4).unwrap();
        for class in g.conjugacy_classes() {
            let m0 = element_age(g.element(class.representative)).unwrap().multiset();
            for &m in &class.members {
                assert_eq!(element_age(g.element(m)).unwrap().multiset(), m0);
            }
        }
        // every nonidentity element of an SL(2) group has age 1
        for i in 1..g.order() {
            assert_eq!(element_age(g.element(i)).unwrap().age, 1);
        }
    }
}
