//! The lattice `N = Z^n + Σ Z·g` of an abelian diagonal group.
//!
//! Points are stored as integer vectors scaled by the group exponent `e`, so
//! `v ∈ Z^n` stands for `v/e`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ToricError;
use crate::arith::{rat, Rational};
use crate::group::FiniteGroup;

/// A point of `N`, `coords / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RayPoint {
    pub coords: Vec<u64>,
    pub denominator: u32,
}

impl RayPoint {
    pub fn new(coords: Vec<u64>, denominator: u32) -> Self {
        RayPoint { coords, denominator }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn fractions(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| rat(c as i64, self.denominator as i64)).collect()
    }

    /// The coordinate sum `s(v)`.
    pub fn coordinate_sum(&self) -> Rational {
        rat(self.coords.iter().sum::<u64>() as i64, self.denominator as i64)
    }

    /// `s(v) - 1`.
    pub fn discrepancy(&self) -> Rational {
        self.coordinate_sum() - rat(1, 1)
    }

    pub fn is_unit_vector(&self) -> bool {
        self.coords.iter().filter(|&&c| c != 0).count() == 1 && self.coords.iter().sum::<u64>() == self.denominator as u64
    }
}

impl fmt::Display for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})/{}", parts.join(","), self.denominator)
    }
}

#[derive(Debug, Clone)]
pub struct OrbifoldLattice {
    n: usize,
    exponent: u32,
    order: usize,
    residues: HashSet<Vec<u64>>,
    basis: Vec<Vec<BigInt>>,
}

impl OrbifoldLattice {
    pub fn new(group: &FiniteGroup) -> Result<Self, ToricError> {
        let weights = group.weights().map_err(|_| ToricError::NotAbelian)?;
        let e = group.exponent();
        let n = group.dim();
        let residues: HashSet<Vec<u64>> = weights.iter().map(|w| w.scaled(e)).collect();
        let mut rows: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| BigInt::from(if i == j { e } else { 0 })).collect()).collect();
        for &g in group.generators() {
            let w = group.element(g).as_weight().expect("abelian element");
            rows.push(w.scaled(e).into_iter().map(BigInt::from).collect());
        }
        let basis = hermite_normal_form(rows, n);
        Ok(OrbifoldLattice { n, exponent: e, order: group.order(), residues, basis })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Denominator of the scaled coordinates.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The index `|N / Z^n| = |G|`.
    pub fn index(&self) -> usize {
        self.order
    }

    /// Whether the scaled vector `v` (standing for `v/e`) lies in `N`.
    pub fn contains(&self, v: &[u64]) -> bool {
        let e = self.exponent as u64;
        v.len() == self.n && self.residues.contains(&v.iter().map(|x| x % e).collect::<Vec<_>>())
    }

    /// Primitive in `N`: `v/k ∉ N` for every `k > 1`.
    pub fn is_primitive(&self, v: &[u64]) -> bool {
        let g = v.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return false;
        }
        (2..=g).filter(|k| g % k == 0).all(|k| !self.contains(&v.iter().map(|x| x / k).collect::<Vec<_>>()))
    }

    /// Rows of an upper-triangular basis of `N`, as exact rationals.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        let e = BigInt::from(self.exponent);
        self.basis.iter().map(|r| r.iter().map(|x| Rational::new(x.clone(), e.clone())).collect()).collect()
    }

    /// Determinant of the basis matrix; equals `1/|G|`.
    pub fn basis_determinant(&self) -> Rational {
        let d = (0..self.n).fold(BigInt::from(1), |acc, i| acc * &self.basis[i][i]);
        Rational::new(d.abs(), BigInt::from(self.exponent).pow(self.n as u32))
    }

    /// Points of `N` on the junior simplex `{x ≥ 0, Σ x_i = 1}`: unit vectors first, then the rest in
    /// lexicographically decreasing order of scaled coordinates.
    pub fn junior_simplex_points(&self) -> Vec<RayPoint> {
        let e = self.exponent as u64;
        let mut out: Vec<RayPoint> = (0..self.n)
            .map(|i| RayPoint::new((0..self.n).map(|j| if i == j { e } else { 0 }).collect(), self.exponent))
            .collect();
        let mut rest: Vec<Vec<u64>> =
            self.residues.iter().filter(|r| r.iter().sum::<u64>() == e).cloned().collect();
        rest.sort_unstable_by(|a, b| b.cmp(a));
        out.extend(rest.into_iter().map(|c| RayPoint::new(c, self.exponent)));
        out
    }

    /// Points of `N` in the orthant with coordinate sum `s`.
    pub fn points_with_sum(&self, s: u64) -> Vec<RayPoint> {
        let e = self.exponent as u64;
        let target = s * e;
        let mut out = Vec::new();
        for r in &self.residues {
            let base: u64 = r.iter().sum();
            if base > target || !(target - base).is_multiple_of(e) {
                continue;
            }
            let extra = ((target - base) / e) as usize;
            for comp in compositions(extra, self.n) {
                out.push(RayPoint::new(r.iter().zip(&comp).map(|(a, c)| a + e * *c as u64).collect(), self.exponent));
            }
        }
        out.sort();
        out
    }
}

/// All ways to write `total` as an ordered sum of `parts` non-negative integers.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Row Hermite normal form of an integer matrix with full column rank `n`; returns the `n` basis rows.
fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut basis = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            let pivot = rows[p].clone();
            for &r in &nonzero {
                if r == p {
                    continue;
                }
                let q = rows[r][col].div_floor(&pivot[col]);
                for j in 0..n {
                    let t = &q * &pivot[j];
                    rows[r][j] -= t;
                }
            }
        }
        let p = (0..rows.len()).find(|&r| !rows[r][col].is_zero()).expect("full rank lattice");
        let mut row = rows.remove(p);
        if row[col].is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
        }
        basis.push(row);
    }
    for i in (0..n).rev() {
        for k in 0..i {
            let q = basis[k][i].div_floor(&basis[i][i]);
            if !q.is_zero() {
                let pivot = basis[i].clone();
                for j in 0..n {
                    let t = &q * &pivot[j];
                    basis[k][j] -= t;
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn lattice_index_matches_group_order() {
        for g in [
            families::cyclic(7, &[1, 2, 4]).unwrap(),
            families::klein_cube(),
            families::diagonal(3, &[(3, vec![1, 2, 0]), (3, vec![0, 1, 2])]).unwrap(),
            families::cyclic(1, &[0, 0]).unwrap(),
        ] {
            let l = OrbifoldLattice::new(&g).unwrap();
            assert_eq!(l.basis_determinant(), rat(1, g.order() as i64));
        }
    }

    #[test]
    fn junior_points() {
        let l = OrbifoldLattice::new(&families::cyclic(7, &[1, 2, 4]).unwrap()).unwrap();
        let pts: Vec<Vec<u64>> = l.junior_simplex_points().into_iter().map(|p| p.coords).collect();
        assert_eq!(pts.len(), 6);
        for want in [[1, 2, 4], [2, 4, 1], [4, 1, 2]] {
            assert!(pts.contains(&want.to_vec()));
        }
        let l = OrbifoldLattice::new(&families::klein_cube()).unwrap();
        assert_eq!(l.junior_simplex_points().len(), 10);
        let l = OrbifoldLattice::new(&families::cyclic(5, &[1, 4, 2, 3]).unwrap()).unwrap();
        assert_eq!(l.junior_simplex_points().len(), 4);
    }

    #[test]
    fn primitivity() {
        let l = OrbifoldLattice::new(&families::sl2_cyclic(2).unwrap()).unwrap();
        assert!(l.is_primitive(&[1, 1]));
        assert!(!l.is_primitive(&[2, 2]));
        assert!(l.is_primitive(&[2, 0]));
        assert!(!l.is_primitive(&[4, 0]));
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
