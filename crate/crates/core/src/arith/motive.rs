//! Rational functions in the Tate class `L`.
//!
//! Every stringy computation lands in this ring. Values are kept as reduced
//! fractions `num / den` with `den` monic, which makes the representation
//! canonical.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::QPoly;
use super::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("expression has a pole at L = 1")]
    PoleAtOne,
    #[error("division by zero motive")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A reduced rational function `num(L) / den(L)` with rational coefficients.
#[derive(Clone, Debug)]
pub struct MotiveExpr {
    num: QPoly,
    den: QPoly,
}

impl MotiveExpr {
    /// Normalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return MotiveExpr::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        MotiveExpr { num, den }
    }

    pub fn zero() -> Self {
        MotiveExpr { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        MotiveExpr::from_poly(QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> Self {
        MotiveExpr { num: p, den: QPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        MotiveExpr::from_rational(Rational::from_integer(c.into()))
    }

    pub fn from_rational(c: Rational) -> Self {
        MotiveExpr::from_poly(QPoly::constant(c))
    }

    /// The Tate class `L = [A^1]`.
    pub fn lefschetz() -> Self {
        MotiveExpr::from_poly(QPoly::x())
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i64) -> Self {
        if k >= 0 {
            MotiveExpr::from_poly(QPoly::monomial(Rational::one(), k as usize))
        } else {
            MotiveExpr { num: QPoly::one(), den: QPoly::monomial(Rational::one(), (-k) as usize) }
        }
    }

    /// `(L - 1)^k`, the class of a `k`-dimensional torus.
    pub fn torus(k: u32) -> Self {
        MotiveExpr::from_poly(QPoly::from_ints(&[-1, 1]).pow(k))
    }

    /// `[P^k] = 1 + L + ... + L^k`.
    pub fn projective_space(k: u32) -> Self {
        MotiveExpr::from_poly(QPoly::from_ints(&vec![1; k as usize + 1]))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True for a polynomial in `L` with nonnegative integer coefficients.
    pub fn is_effective_polynomial(&self) -> bool {
        self.is_polynomial()
            && self.num.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::zero())
    }

    /// Euler specialization `L -> 1`, taken as a limit.
    ///
    /// Because the fraction is reduced, `(L - 1)` cannot divide both parts; a
    /// vanishing denominator at 1 is therefore a genuine pole.
    pub fn eval_at_one(&self) -> Result<Rational, MotiveError> {
        let one = Rational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(MotiveError::PoleAtOne);
        }
        Ok(self.num.eval(&one) / d)
    }

    pub fn pow(&self, e: i64) -> Result<Self, MotiveError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(MotiveExpr { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    pub fn inverse(&self) -> Result<Self, MotiveError> {
        if self.is_zero() {
            return Err(MotiveError::DivisionByZero);
        }
        Ok(MotiveExpr::new(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &MotiveExpr) -> Result<Self, MotiveError> {
        Ok(self * &rhs.inverse()?)
    }

    fn renormalized(self) -> Self {
        MotiveExpr::new(self.num, self.den)
    }

    /// Laurent expansion in `L^{-1}`.
    ///
    /// Returns `(top, coeffs)` where `coeffs[k]` is the coefficient of
    /// `L^{top - k}` for `k = 0..=depth`. `top` is the degree of the leading
    /// term (numerator degree minus denominator degree); for zero it is 0.
    pub fn laurent_expansion(&self, top: i64, depth: usize) -> Vec<Rational> {
        if self.is_zero() {
            return vec![Rational::zero(); depth + 1];
        }
        // f = L^{dn - dd} * N(t) / D(t) with t = 1/L and N, D the reversed polynomials.
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let lead = dn - dd;
        let rev = |p: &QPoly| -> Vec<Rational> { p.coeffs().iter().rev().cloned().collect() };
        let n = rev(&self.num);
        let d = rev(&self.den);
        // series s(t) = N(t)/D(t); D(0) = 1 since den is monic
        let offset = top - lead; // coefficient of L^{top-k} is s_{k - offset}
        let needed = depth as i64 - offset;
        let mut series: Vec<Rational> = Vec::new();
        if needed >= 0 {
            for k in 0..=(needed as usize) {
                let mut c = n.get(k).cloned().unwrap_or_else(Rational::zero);
                for j in 1..=k.min(d.len().saturating_sub(1)) {
                    c -= &d[j] * &series[k - j];
                }
                series.push(c);
            }
        }
        (0..=depth as i64)
            .map(|k| {
                let idx = k - offset;
                if idx < 0 {
                    Rational::zero()
                } else {
                    series[idx as usize].clone()
                }
            })
            .collect()
    }

    /// `k` when the denominator is `L^k`.
    fn monomial_denominator(&self) -> Option<usize> {
        let k = self.den.degree()?;
        (self.den.valuation() == Some(k)).then_some(k)
    }

    /// Degree of the leading term in `L` (`num` degree minus `den` degree); `None` for zero.
    pub fn top_degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }
}

impl PartialEq for MotiveExpr {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication; equivalent to structural equality on reduced forms
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for MotiveExpr {}

impl serde::Serialize for MotiveExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.format_with("L");
        if self.den.is_one() {
            f.write_str(&n)
        } else if let Some(k) = self.monomial_denominator() {
            f.write_str(&self.num.format_shifted("L", -(k as i64)))
        } else {
            write!(f, "({n})/({})", self.den.format_with("L"))
        }
    }
}

impl FromStr for MotiveExpr {
    type Err = MotiveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let expr = crate::expr::parse(s).map_err(|e| MotiveError::Parse(e.to_string()))?;
        crate::expr::eval_motive(&expr).map_err(|e| MotiveError::Parse(e.to_string()))
    }
}

impl Add<&MotiveExpr> for &MotiveExpr {
    type Output = MotiveExpr;
    fn add(self, rhs: &MotiveExpr) -> MotiveExpr {
        if self.den == rhs.den {
            return MotiveExpr::new(&self.num + &rhs.num, self.den.clone());
        }
        MotiveExpr::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&MotiveExpr> for &MotiveExpr {
    type Output = MotiveExpr;
    fn sub(self, rhs: &MotiveExpr) -> MotiveExpr {
        self + &(-rhs)
    }
}

impl Mul<&MotiveExpr> for &MotiveExpr {
    type Output = MotiveExpr;
    fn mul(self, rhs: &MotiveExpr) -> MotiveExpr {
        MotiveExpr::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&MotiveExpr> for &MotiveExpr {
    type Output = MotiveExpr;
    /// Panics on division by zero; see [`MotiveExpr::checked_div`].
    fn div(self, rhs: &MotiveExpr) -> MotiveExpr {
        self.checked_div(rhs).expect("division by zero motive")
    }
}

impl Neg for &MotiveExpr {
    type Output = MotiveExpr;
    fn neg(self) -> MotiveExpr {
        MotiveExpr { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MotiveExpr> for MotiveExpr {
            type Output = MotiveExpr;
            fn $m(self, rhs: MotiveExpr) -> MotiveExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for MotiveExpr {
    fn sum<I: Iterator<Item = MotiveExpr>>(iter: I) -> Self {
        iter.fold(MotiveExpr::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l() -> MotiveExpr {
        MotiveExpr::lefschetz()
    }

    fn int(c: i64) -> MotiveExpr {
        MotiveExpr::from_int(c)
    }

    #[test]
    fn eval_at_one_examples() {
        // (L^2 - 1)/(L - 1) -> 2
        let x = &(&l().pow(2).unwrap() - &int(1)) / &(&l() - &int(1));
        assert_eq!(x.eval_at_one().unwrap(), Rational::from_integer(2.into()));
        // L^3 + 3L^2 + 3L -> 7
        let y: MotiveExpr = "L^3 + 3*L^2 + 3*L".parse().unwrap();
        assert_eq!(y.eval_at_one().unwrap(), Rational::from_integer(7.into()));
        // (L - 1)/(L^3 - 1) -> 1/3
        let z = &(&l() - &int(1)) / &(&l().pow(3).unwrap() - &int(1));
        assert_eq!(z.eval_at_one().unwrap(), Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn pole_at_one() {
        let x = &int(1) / &(&l() - &int(1));
        assert_eq!(x.eval_at_one(), Err(MotiveError::PoleAtOne));
    }

    #[test]
    fn canonical_text() {
        let y = &(&l().pow(3).unwrap() + &(&int(3) * &l().pow(2).unwrap())) + &(&int(3) * &l());
        assert_eq!(y.to_string(), "L^3 + 3*L^2 + 3*L");
        let r = &int(1) / &(&l() + &int(1));
        assert_eq!(r.to_string(), "(1)/(L + 1)");
        let back: MotiveExpr = r.to_string().parse().unwrap();
        assert_eq!(back, r);
        assert_eq!(MotiveExpr::l_pow(-2).to_string(), "L^-2");
        let laurent: MotiveExpr = "L - 2 + 3/2*L^-1".parse().unwrap();
        assert_eq!(laurent.to_string(), "L - 2 + 3/2*L^-1");
        assert_eq!(laurent.to_string().parse::<MotiveExpr>().unwrap(), laurent);
    }

    #[test]
    fn reduced_and_monic() {
        let x = MotiveExpr::new(QPoly::from_ints(&[-2, 0, 2]), QPoly::from_ints(&[-3, 3]));
        assert_eq!(x.denominator(), &QPoly::one());
        assert_eq!(x.numerator(), &QPoly::from_ints(&[2, 2]).scale(&Rational::new(1.into(), 3.into())));
    }

    #[test]
    fn laurent_geometric_series() {
        // 1/(1 - L^{-1}) = L/(L - 1) = 1 + L^-1 + L^-2 + ...
        let x = &l() / &(&l() - &int(1));
        let s = x.laurent_expansion(0, 4);
        assert!(s.iter().all(|c| c.is_one()));
        // top above the leading term pads with zeros
        let s = x.laurent_expansion(2, 3);
        assert_eq!(s[0], Rational::zero());
        assert_eq!(s[1], Rational::zero());
        assert!(s[2].is_one() && s[3].is_one());
    }

    fn motive() -> impl Strategy<Value = MotiveExpr> {
        (
            proptest::collection::vec(-4i64..=4, 1..4),
            proptest::collection::vec(-3i64..=3, 0..3),
        )
            .prop_map(|(n, d)| {
                let mut den = d.clone();
                den.push(1);
                MotiveExpr::new(QPoly::from_ints(&n), QPoly::from_ints(&den))
            })
    }

    proptest! {
        #[test]
        fn equality_is_a_congruence(x in motive(), u in motive()) {
            let y = MotiveExpr::new(&x.numerator().clone() * &QPoly::from_ints(&[2, 1]), x.denominator() * &QPoly::from_ints(&[2, 1]));
            let v = MotiveExpr::new(u.numerator() * &QPoly::from_ints(&[-1, 3]), u.denominator() * &QPoly::from_ints(&[-1, 3]));
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(&u, &v);
            prop_assert_eq!(&x + &u, &y + &v);
            prop_assert_eq!(&x * &u, &y * &v);
        }

        #[test]
        fn text_round_trip(x in motive()) {
            let back: MotiveExpr = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
