//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `{ζ^i : 0 <= i < φ(m)}` reduced
//! modulo the `m`-th cyclotomic polynomial, so every element has exactly one
//! representation and zero-testing is a coefficient comparison.
//!
//! Arithmetic between elements of different conductors is not defined; callers
//! embed into a common conductor first with [`CyclotomicNumber::embed`].

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::QPoly;
use super::Rational;

/// Precomputed data for `Q(ζ_m)`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    modulus: QPoly,
    /// `powers[k]` is `ζ^k` reduced to the power basis, for `0 <= k < m`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    fn new(m: u32) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.degree().expect("cyclotomic polynomial is nonzero");
        let phi: Vec<BigInt> = modulus
            .integer_coeffs()
            .expect("cyclotomic polynomials have integer coefficients");
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce: x^degree = -sum phi_i x^i
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * &phi[i];
                }
            }
        }
        CyclotomicField { conductor: m, degree, modulus, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(m)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }
}

/// Shared field data, cached per conductor.
pub fn field(m: u32) -> Arc<CyclotomicField> {
    assert!(m >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&m) {
        return f.clone();
    }
    let f = Arc::new(CyclotomicField::new(m));
    cache.lock().unwrap().entry(m).or_insert(f).clone()
}

/// The `m`-th cyclotomic polynomial, by exact division of `x^m - 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(m: u32) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = &QPoly::monomial(Rational::one(), m as usize) - &QPoly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = p.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(m: u32) -> Self {
        let field = field(m);
        let coeffs = vec![Rational::zero(); field.degree];
        CyclotomicNumber { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(Rational::one(), m)
    }

    pub fn from_int(c: i64, m: u32) -> Self {
        Self::from_rational(Rational::from_integer(c.into()), m)
    }

    pub fn from_rational(c: Rational, m: u32) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = c;
        z
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(k: i64, m: u32) -> Self {
        let field = field(m);
        let idx = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[idx].iter().map(|c| Rational::from_integer(c.clone())).collect();
        CyclotomicNumber { field, coeffs }
    }

    /// Builds from power-basis coefficients; the vector is reduced if it is longer than `φ(m)`.
    pub fn from_coeffs(coeffs: Vec<Rational>, m: u32) -> Self {
        let field = field(m);
        Self::reduce(field, coeffs)
    }

    fn reduce(field: Arc<CyclotomicField>, raw: Vec<Rational>) -> Self {
        let d = field.degree;
        let m = field.conductor as usize;
        let mut coeffs = vec![Rational::zero(); d];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                coeffs[k] += c;
            } else {
                for (i, p) in field.powers[k % m].iter().enumerate() {
                    if !p.is_zero() {
                        coeffs[i] += &c * p;
                    }
                }
            }
        }
        CyclotomicNumber { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    /// The integer value when the element lies in `Z`.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "cyclotomic conductor mismatch; embed into a common conductor first"
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&self.field.modulus);
        debug_assert!(g.is_one(), "cyclotomic polynomial is irreducible");
        Some(Self::reduce(self.field.clone(), s.coeffs().to_vec()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Some(acc)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.conductor() as i64;
        debug_assert_eq!(k.gcd(&m), 1);
        let mut out = vec![Rational::zero(); (m as usize).max(self.field.degree)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(i as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::reduce(self.field.clone(), out)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image in `Q(ζ_M)` for a multiple `M` of the conductor, via `ζ_m = ζ_M^{M/m}`.
    pub fn embed(&self, target: u32) -> Self {
        let m = self.conductor();
        assert!(target.is_multiple_of(m), "cannot embed Q(ζ_{m}) into Q(ζ_{target})");
        if target == m {
            return self.clone();
        }
        let step = (target / m) as usize;
        let mut raw = vec![Rational::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::reduce(field(target), raw)
    }

    /// Formats as a polynomial in `symbol`, e.g. `z^3 - 2`.
    pub fn format_with(&self, symbol: &str) -> String {
        QPoly::from_coeffs(self.coeffs.clone()).format_with(symbol)
    }

    /// A stable ordering key: the coefficient vector.
    pub fn sort_key(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when every coefficient is an integer (an element of `Z[ζ]`).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_negative_rational(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_negative())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}]({})", self.conductor(), self.format_with("z"))
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("z"))
    }
}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        let d = self.field.degree;
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber::reduce(self.field.clone(), raw)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).degree().unwrap() as u32, totient(m));
        }
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [1, 2, 3, 4, 5, 7, 8, 12, 20] {
            let z = CyclotomicNumber::zeta_pow(1, m);
            assert!(z.pow(m as i64).unwrap().is_one());
            for k in 1..m {
                assert!(!z.pow(k as i64).unwrap().is_one(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn sum_of_primitive_roots_is_mobius() {
        // sum of all m-th roots of unity is zero for m > 1
        for m in [2u32, 3, 5, 6, 8, 12] {
            let mut s = CyclotomicNumber::zero(m);
            for k in 0..m {
                s = &s + &CyclotomicNumber::zeta_pow(k as i64, m);
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn conjugation_and_embedding() {
        let i = CyclotomicNumber::zeta_pow(1, 4);
        assert_eq!(i.conj(), -&i);
        let i8 = i.embed(8);
        assert_eq!(i8, CyclotomicNumber::zeta_pow(2, 8));
        let w = CyclotomicNumber::zeta_pow(1, 3).embed(12);
        assert_eq!(w, CyclotomicNumber::zeta_pow(4, 12));
        assert_eq!(CyclotomicNumber::from_int(5, 1).embed(7), CyclotomicNumber::from_int(5, 7));
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(CyclotomicNumber::zero(5).inverse().is_none());
    }

    fn element(m: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let d = totient(m) as usize;
        proptest::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
            CyclotomicNumber::from_coeffs(coeffs, m)
        })
    }

    fn conductor_and_triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
        prop::sample::select(vec![3u32, 4, 5, 7, 8, 12])
            .prop_flat_map(|m| (element(m), element(m), element(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in conductor_and_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                let inv = a.inverse().unwrap();
                prop_assert!((&a * &inv).is_one());
            }
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
