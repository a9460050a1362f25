//! Character tables, tensor decompositions and McKay quivers.
//!
//! Abelian diagonal groups get their table directly from the dual group.
//! Matrix groups use the Burnside–Dixon class-algebra method: the common
//! eigenvectors of the class multiplication matrices are found over a prime
//! field `F_p` with `p ≡ 1` modulo the group exponent, and every character
//! value is then rebuilt exactly as a sum of roots of unity from its
//! eigenvalue multiplicities. The finished table is checked against both
//! orthogonality relations in exact arithmetic.

mod dixon;
pub(crate) mod modp;
pub mod quiver;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{CyclotomicNumber, Rational};
use crate::group::{ConjugacyClass, FiniteGroup};

pub use quiver::{dynkin_recognize, mckay_quiver, DynkinType, McKayQuiver};

/// Largest table (classes squared times field degree) that will be materialized.
const MAX_TABLE_CELLS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("class function has {got} values, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("inner product with character {index} is {value}, not a non-negative integer")]
    NotACharacter { index: usize, value: String },
    #[error("character table of {classes} classes is too large to build")]
    TooLarge { classes: usize },
    #[error("class algebra failed to split: {0}")]
    SplitFailure(String),
    #[error("computed table fails orthogonality: {0}")]
    Orthogonality(String),
}

/// One value per conjugacy class, in class order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicNumber>) -> Self {
        ClassFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> CyclotomicNumber {
        self.values[0].clone()
    }

    pub fn product(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn sum(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn embed(&self, conductor: u32) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.embed(conductor)).collect() }
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    conductor: u32,
    classes: Vec<ConjugacyClass>,
    /// Class of each class's inverse.
    inverse_class: Vec<usize>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

/// Serializable view of a table: values in the `E(k)` literal syntax.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

impl CharacterTable {
    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }

    /// Field in which all values live.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(1/|G|) Σ_classes |C| χ(C) conj(ψ(C))`.
    pub fn inner_product(&self, chi: &ClassFunction, psi: &ClassFunction) -> Result<CyclotomicNumber, RepError> {
        let k = self.classes.len();
        for f in [chi, psi] {
            if f.len() != k {
                return Err(RepError::Length { expected: k, got: f.len() });
            }
        }
        let m = self.conductor;
        let mut acc = CyclotomicNumber::zero(m);
        for (c, class) in self.classes.iter().enumerate() {
            let a = chi.values[c].embed(m);
            let b = psi.values[c].embed(m).conj();
            let term = &a * &b;
            acc = &acc + &term.scale(&Rational::from_integer(class.size().into()));
        }
        Ok(acc.scale(&Rational::new(BigInt::one(), self.order.into())))
    }

    /// Multiplicities of the irreducibles in a character.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<u64>, RepError> {
        self.rows
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let v = self.inner_product(chi, row)?;
                match v.to_integer() {
                    Some(n) if !n.is_negative() => Ok(n.to_u64().expect("multiplicity fits")),
                    _ => Err(RepError::NotACharacter { index: j, value: v.to_string() }),
                }
            })
            .collect()
    }

    /// Exact check of row orthogonality, column orthogonality and `Σ deg² = |G|`.
    pub fn verify(&self) -> Result<(), RepError> {
        let k = self.rows.len();
        if k != self.classes.len() {
            return Err(RepError::Orthogonality(format!("{k} characters for {} classes", self.classes.len())));
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return Err(RepError::Orthogonality(format!("sum of squared degrees is {sum_sq}, not {}", self.order)));
        }
        for i in 0..k {
            for j in i..k {
                let v = self.inner_product(&self.rows[i], &self.rows[j])?;
                let expect = if i == j { 1 } else { 0 };
                if v != CyclotomicNumber::from_int(expect, self.conductor) {
                    return Err(RepError::Orthogonality(format!("<chi_{i}, chi_{j}> = {v}")));
                }
            }
        }
        let m = self.conductor;
        for a in 0..k {
            for b in a..k {
                let mut acc = CyclotomicNumber::zero(m);
                for row in &self.rows {
                    acc = &acc + &(&row.values[a] * &row.values[b].conj());
                }
                let expect = if a == b { (self.order / self.classes[a].size()) as i64 } else { 0 };
                if acc != CyclotomicNumber::from_int(expect, m) {
                    return Err(RepError::Orthogonality(format!("columns {a} and {b} give {acc}")));
                }
            }
        }
        Ok(())
    }

    pub fn report(&self) -> TableReport {
        TableReport {
            class_sizes: self.class_sizes(),
            degrees: self.degrees.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.values.iter().map(crate::arith::multipoly::cyclo_literal).collect())
                .collect(),
        }
    }

    /// Class of the inverse of each class.
    pub fn inverse_classes(&self) -> &[usize] {
        &self.inverse_class
    }

    fn finish(
        group: &FiniteGroup,
        classes: Vec<ConjugacyClass>,
        conductor: u32,
        mut rows: Vec<ClassFunction>,
    ) -> CharacterTable {
        let class_map = group.class_map(&classes);
        let inverse_class = classes.iter().map(|c| class_map[group.inverse(c.representative)]).collect();
        let one = CyclotomicNumber::one(conductor);
        rows.sort_by(|a, b| {
            let key = |r: &ClassFunction| {
                let trivial = r.values.iter().all(|v| *v == one);
                (r.values[0].coeffs()[0].clone(), !trivial)
            };
            key(a).cmp(&key(b)).then_with(|| {
                a.values.iter().map(|v| v.sort_key()).cmp(b.values.iter().map(|v| v.sort_key()))
            })
        });
        let degrees = rows
            .iter()
            .map(|r| r.values[0].to_integer().and_then(|d| d.to_u64()).expect("integral degree"))
            .collect();
        CharacterTable { order: group.order(), conductor, classes, inverse_class, rows, degrees }
    }
}

/// Field conductor for the characters of `group`: the exponent, together with the matrix entry field.
pub fn table_conductor(group: &FiniteGroup) -> u32 {
    group.exponent().lcm(&group.conductor())
}

/// The defining representation as a class function.
pub fn defining_character(group: &FiniteGroup, classes: &[ConjugacyClass]) -> ClassFunction {
    let m = table_conductor(group);
    ClassFunction::new(classes.iter().map(|c| group.element(c.representative).trace(m).embed(m)).collect())
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, RepError> {
    let classes = group.conjugacy_classes();
    let m = table_conductor(group);
    let cells = classes.len().saturating_mul(classes.len()).saturating_mul(crate::arith::totient(m) as usize);
    if cells > MAX_TABLE_CELLS {
        return Err(RepError::TooLarge { classes: classes.len() });
    }
    if group.is_abelian_diagonal() {
        return Ok(abelian_table(group, classes, m));
    }
    let rows = dixon::irreducible_characters(group, &classes, m)?;
    let table = CharacterTable::finish(group, classes, m, rows);
    table.verify()?;
    Ok(table)
}

/// Dual-group table: the characters `g ↦ ζ^{<m, a(g)>}` of the coordinate monomials, deduplicated.
fn abelian_table(group: &FiniteGroup, classes: Vec<ConjugacyClass>, m: u32) -> CharacterTable {
    let e = group.exponent();
    let weights = group.weights().expect("abelian diagonal group");
    let scaled: Vec<Vec<u64>> = weights.iter().map(|w| w.scaled(e)).collect();
    let n = group.dim();
    let coord: Vec<Vec<u64>> = (0..n).map(|i| scaled.iter().map(|s| s[i]).collect()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let trivial = vec![0u64; scaled.len()];
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    let mut k = 0;
    while k < queue.len() {
        let cur = queue[k].clone();
        k += 1;
        for c in &coord {
            let next: Vec<u64> = cur.iter().zip(c).map(|(a, b)| (a + b) % e as u64).collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let step = (m / e) as i64;
    let rows = queue
        .into_iter()
        .map(|exps| {
            ClassFunction::new(
                classes.iter().map(|c| CyclotomicNumber::zeta_pow(exps[c.representative] as i64 * step, m)).collect(),
            )
        })
        .collect();
    CharacterTable::finish(group, classes, m, rows)
}

/// Multiplicities of the irreducibles in `χ ⊗ ψ`; their degree-weighted sum is `χ(1) ψ(1)`.
pub fn tensor_decompose(
    chi: &ClassFunction,
    psi: &ClassFunction,
    table: &CharacterTable,
) -> Result<Vec<u64>, RepError> {
    let m = table.conductor();
    let prod = chi.embed(m).product(&psi.embed(m));
    table.decompose(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn cyclic_three_is_all_linear() {
        let g = families::cyclic(3, &[1, 2]).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1]);
        t.verify().unwrap();
        for row in t.rows() {
            for v in &row.values {
                assert_eq!(v.pow(3), Some(CyclotomicNumber::one(3)));
            }
        }
    }

    #[test]
    fn quaternion_table() {
        let t = character_table(&families::quaternion()).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert!(t.rows()[0].values.iter().all(|v| v.is_one()));
    }

    #[test]
    fn binary_dihedral_irreducible_count() {
        for n in 2..=5u32 {
            let t = character_table(&families::binary_dihedral(n).unwrap()).unwrap();
            assert_eq!(t.len(), n as usize + 3);
            t.verify().unwrap();
        }
    }

    #[test]
    fn decomposition_rejects_non_characters() {
        let g = families::cyclic(3, &[1, 2]).unwrap();
        let t = character_table(&g).unwrap();
        let bogus = ClassFunction::new(vec![CyclotomicNumber::from_int(1, 3); 2]);
        assert!(matches!(t.decompose(&bogus), Err(RepError::Length { .. })));
        let half = ClassFunction::new(vec![
            CyclotomicNumber::from_int(2, 3),
            CyclotomicNumber::zero(3),
            CyclotomicNumber::zero(3),
        ]);
        assert!(matches!(t.decompose(&half), Err(RepError::NotACharacter { .. })));
    }
}
