//! Group elements: diagonal weight vectors and cyclotomic matrices.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::{linalg, GroupError};
use crate::arith::{CyclotomicNumber, Rational};

/// The diagonal element `(1/r)(a_1, …, a_n)`, acting by `x_i ↦ ε^{a_i} x_i` with `ε = exp(2πi/r)`.
///
/// Stored with `r` minimal, so `r` is the order of the element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    r: u32,
    a: Vec<u32>,
}

impl WeightVector {
    /// Builds `(1/r)(a)`, reducing exponents modulo `r` and `r` to the element order.
    pub fn new(r: u32, a: &[i64]) -> Result<Self, GroupError> {
        if r == 0 {
            return Err(GroupError::Invalid("weight denominator must be positive".into()));
        }
        let a = a.iter().map(|&x| x.rem_euclid(r as i64) as u64).collect();
        Ok(Self::normalized(r as u64, a))
    }

    fn normalized(r: u64, a: Vec<u64>) -> Self {
        let g = a.iter().fold(r, |g, &x| g.gcd(&x));
        WeightVector { r: (r / g) as u32, a: a.iter().map(|&x| (x / g) as u32).collect() }
    }

    pub fn identity(n: usize) -> Self {
        WeightVector { r: 1, a: vec![0; n] }
    }

    /// Element order (the minimal `r`).
    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.r == 1
    }

    pub fn compose(&self, other: &WeightVector) -> WeightVector {
        assert_eq!(self.dim(), other.dim(), "weight vectors of different dimension");
        let l = (self.r as u64).lcm(&(other.r as u64));
        let (s, t) = (l / self.r as u64, l / other.r as u64);
        let a = self.a.iter().zip(&other.a).map(|(&x, &y)| (x as u64 * s + y as u64 * t) % l).collect();
        Self::normalized(l, a)
    }

    pub fn inverse(&self) -> WeightVector {
        let r = self.r as u64;
        Self::normalized(r, self.a.iter().map(|&x| (r - x as u64) % r).collect())
    }

    pub fn pow(&self, k: i64) -> WeightVector {
        let r = self.r as i64;
        let a = self.a.iter().map(|&x| ((x as i64 * k.rem_euclid(r)) % r) as u64).collect();
        Self::normalized(r as u64, a)
    }

    pub fn exponent_sum(&self) -> u64 {
        self.a.iter().map(|&x| x as u64).sum()
    }

    /// Determinant one: the exponents sum to a multiple of `r`.
    pub fn is_special(&self) -> bool {
        self.exponent_sum().is_multiple_of(self.r as u64)
    }

    /// Coordinates fixed by the element (`a_i = 0`).
    pub fn fixed_coordinates(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.a[i] == 0).collect()
    }

    /// Exponents rescaled to denominator `e`, which must be a multiple of the order.
    pub fn scaled(&self, e: u32) -> Vec<u64> {
        assert_eq!(e % self.r, 0, "{e} is not a multiple of the order {}", self.r);
        let s = (e / self.r) as u64;
        self.a.iter().map(|&x| x as u64 * s).collect()
    }

    /// Coordinates `a_i / r` as exact rationals.
    pub fn fractions(&self) -> Vec<Rational> {
        self.a.iter().map(|&x| crate::arith::rat(x as i64, self.r as i64)).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "1/{}({})", self.r, parts.join(","))
    }
}

/// A square matrix with entries in `Q(ζ_m)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    n: usize,
    entries: Vec<CyclotomicNumber>,
}

impl MatrixElement {
    pub fn new(n: usize, entries: Vec<CyclotomicNumber>) -> Result<Self, GroupError> {
        if n == 0 || entries.len() != n * n {
            return Err(GroupError::Invalid(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        let m = entries.iter().map(|c| c.conductor()).fold(1u32, |a, b| a.lcm(&b));
        let entries = entries.into_iter().map(|c| c.embed(m)).collect();
        Ok(MatrixElement { n, entries })
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { CyclotomicNumber::one(conductor) } else { CyclotomicNumber::zero(conductor) })
            .collect();
        MatrixElement { n, entries }
    }

    /// `diag(ζ_m^{k_1}, …)`.
    pub fn diagonal(exponents: &[i64], conductor: u32) -> Self {
        let n = exponents.len();
        let mut m = Self::identity(n, conductor);
        for (i, &k) in exponents.iter().enumerate() {
            m.entries[i * n + i] = CyclotomicNumber::zeta_pow(k, conductor);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.entries[0].conductor()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn embed(&self, conductor: u32) -> Self {
        MatrixElement { n: self.n, entries: self.entries.iter().map(|c| c.embed(conductor)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, c)| if k / self.n == k % self.n { c.is_one() } else { c.is_zero() })
    }

    pub fn mul(&self, other: &MatrixElement) -> MatrixElement {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let m = self.conductor();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicNumber::zero(m);
                for k in 0..n {
                    let (a, b) = (self.entry(i, k), other.entry(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        MatrixElement { n, entries }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.n).fold(CyclotomicNumber::zero(self.conductor()), |acc, i| &acc + self.entry(i, i))
    }

    pub fn determinant(&self) -> CyclotomicNumber {
        linalg::determinant(self.n, self.entries.clone())
    }

    pub fn rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Flattened coefficient key used for canonical ordering.
    pub(crate) fn sort_key(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(|c| c.sort_key().iter().cloned()).collect()
    }
}

impl fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(|c| c.format_with("z")).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Either representation behind one interface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Weight(WeightVector),
    Matrix(MatrixElement),
}

impl GroupElement {
    pub fn dim(&self) -> usize {
        match self {
            GroupElement::Weight(w) => w.dim(),
            GroupElement::Matrix(m) => m.dim(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Weight(w) => w.is_identity(),
            GroupElement::Matrix(m) => m.is_identity(),
        }
    }

    pub fn as_weight(&self) -> Option<&WeightVector> {
        match self {
            GroupElement::Weight(w) => Some(w),
            GroupElement::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&MatrixElement> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            GroupElement::Weight(_) => None,
        }
    }

    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Weight(a), GroupElement::Weight(b)) => GroupElement::Weight(a.compose(b)),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => GroupElement::Matrix(a.mul(b)),
            _ => panic!("cannot multiply a weight vector by a matrix"),
        }
    }

    /// Trace in the defining representation, in `Q(ζ_conductor)`.
    pub fn trace(&self, conductor: u32) -> CyclotomicNumber {
        match self {
            GroupElement::Weight(w) => {
                let m = conductor.lcm(&w.order());
                let e = m / w.order();
                let t = w
                    .exponents()
                    .iter()
                    .fold(CyclotomicNumber::zero(m), |acc, &a| &acc + &CyclotomicNumber::zeta_pow((a * e) as i64, m));
                t.embed(conductor.lcm(&m))
            }
            GroupElement::Matrix(m) => m.trace().embed(conductor.lcm(&m.conductor())),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Weight(w) => w.fmt(f),
            GroupElement::Matrix(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_vectors_normalize() {
        let g = WeightVector::new(14, &[2, 4, 8]).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.exponents(), &[1, 2, 4]);
        assert!(WeightVector::new(5, &[0, 0]).unwrap().is_identity());
        assert_eq!(g.pow(3).exponents(), &[3, 6, 5]);
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.to_string(), "1/7(1,2,4)");
    }

    #[test]
    fn mixed_orders_compose() {
        let a = WeightVector::new(2, &[1, 1, 0, 0]).unwrap();
        let b = WeightVector::new(3, &[1, 2, 0, 0]).unwrap();
        let c = a.compose(&b);
        assert_eq!(c.order(), 6);
        assert_eq!(c.exponents(), &[5, 1, 0, 0]);
    }

    #[test]
    fn matrix_products() {
        let a = MatrixElement::diagonal(&[1, -1], 4);
        let zero = CyclotomicNumber::zero(4);
        let one = CyclotomicNumber::one(4);
        let b = MatrixElement::new(2, vec![zero.clone(), one.clone(), -&one, zero]).unwrap();
        assert!(b.mul(&b).mul(&b).mul(&b).is_identity());
        assert!(a.determinant().is_one());
        assert!(b.determinant().is_one());
        assert_eq!(b.trace(), CyclotomicNumber::zero(4));
    }
}
