//! Motivic measure of order strata of arcs on affine charts with monomial
//! divisors, and truncated motivic integrals.
//!
//! The measure is normalized so that the whole arc space of `C^n` has measure
//! `L^n`: a jet-level cylinder `π_k^{-1}(B_k)` has measure `[B_k] · L^{-nk}`.
//! Arcs inside the divisor have measure zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{MotiveExpr, Rational};

pub const MAX_CHART_DIM: usize = 16;
pub const MAX_LEVEL: u32 = 512;
pub const DEFAULT_TRUNCATION: u32 = 12;
const MAX_MULTIPLICITY: u32 = 1 << 16;
const MAX_STRATA: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("chart dimension {0} out of range 1..={MAX_CHART_DIM}")]
    Dimension(usize),
    #[error("{what} has {got} entries, expected {expected}")]
    Length { what: &'static str, got: usize, expected: usize },
    #[error("multiplicity {0} is too large")]
    Multiplicity(u32),
    #[error("level {0} exceeds {MAX_LEVEL}")]
    Level(u32),
    #[error("more than {MAX_STRATA} order strata")]
    TooManyStrata,
    #[error("jet level {level} is below the largest order {order}")]
    JetLevel { level: u32, order: u32 },
}

/// The divisor of `x_1^{m_1} ··· x_n^{m_n}` on `C^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialDivisorChart {
    n: usize,
    multiplicities: Vec<u32>,
}

/// Arcs with `ord x_i = orders[i]` for the coordinates in the divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderStratum {
    /// `None` for coordinates outside the divisor, which are unconstrained.
    pub orders: Vec<Option<u32>>,
    pub measure: MotiveExpr,
}

impl MonomialDivisorChart {
    pub fn new(multiplicities: Vec<u32>) -> Result<Self, ArcError> {
        let n = multiplicities.len();
        if n == 0 || n > MAX_CHART_DIM {
            return Err(ArcError::Dimension(n));
        }
        if let Some(&m) = multiplicities.iter().find(|&&m| m > MAX_MULTIPLICITY) {
            return Err(ArcError::Multiplicity(m));
        }
        Ok(MonomialDivisorChart { n, multiplicities })
    }

    /// `a · {x_1 = 0}` on `C^n`.
    pub fn coordinate_hyperplane(n: usize, a: u32) -> Result<Self, ArcError> {
        let mut m = vec![0; n];
        if n > 0 {
            m[0] = a;
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn is_trivial(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    fn components(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.multiplicities[i] > 0).collect()
    }

    /// The chart of `D = Σ a_i {x_i = 0}` weighted by the multiplicities: coefficient `m_i · a_i`.
    pub fn weighted(&self, a: &[u32]) -> Result<Self, ArcError> {
        if a.len() != self.n {
            return Err(ArcError::Length { what: "discrepancy vector", got: a.len(), expected: self.n });
        }
        Self::new(self.multiplicities.iter().zip(a).map(|(m, a)| m.saturating_mul(*a)).collect())
    }
}

impl fmt::Display for MonomialDivisorChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { format!("x{}", i + 1) } else { format!("x{}^{m}", i + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "div(1) on C^{}", self.n)
        } else {
            write!(f, "div({}) on C^{}", terms.join("*"), self.n)
        }
    }
}

fn l_minus_one() -> MotiveExpr {
    MotiveExpr::torus(1)
}

/// `(L-1) L^{-e}`: arcs in one coordinate with order exactly `e`.
fn order_measure(e: u32) -> MotiveExpr {
    &l_minus_one() * &MotiveExpr::l_pow(-(e as i64))
}

/// All order vectors on the divisor components with `Σ m_i e_i = s`, with their measures.
pub fn order_strata(chart: &MonomialDivisorChart, s: u32) -> Result<Vec<OrderStratum>, ArcError> {
    if s > MAX_LEVEL {
        return Err(ArcError::Level(s));
    }
    let comps = chart.components();
    let free = (chart.n - comps.len()) as i64;
    let mut out = Vec::new();
    let mut orders = vec![0u32; comps.len()];
    fn walk(
        chart: &MonomialDivisorChart,
        comps: &[usize],
        k: usize,
        left: u32,
        orders: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<(), ArcError> {
        if k == comps.len() {
            if left == 0 {
                if out.len() >= MAX_STRATA {
                    return Err(ArcError::TooManyStrata);
                }
                out.push(orders.clone());
            }
            return Ok(());
        }
        let m = chart.multiplicities[comps[k]];
        for e in 0..=left / m {
            orders[k] = e;
            walk(chart, comps, k + 1, left - e * m, orders, out)?;
        }
        Ok(())
    }
    let mut vectors = Vec::new();
    walk(chart, &comps, 0, s, &mut orders, &mut vectors)?;
    for e in vectors {
        let mut measure = MotiveExpr::l_pow(free);
        for &x in &e {
            measure = &measure * &order_measure(x);
        }
        let mut full = vec![None; chart.n];
        for (&i, &x) in comps.iter().zip(&e) {
            full[i] = Some(x);
        }
        out.push(OrderStratum { orders: full, measure });
    }
    Ok(out)
}

/// `μ(F_D^{-1}(s))`, computed by counting order vectors by their total order.
pub fn measure_of_order_level(chart: &MonomialDivisorChart, s: u32) -> Result<MotiveExpr, ArcError> {
    if s > MAX_LEVEL {
        return Err(ArcError::Level(s));
    }
    let comps = chart.components();
    let free = (chart.n - comps.len()) as i64;
    let k = comps.len() as u32;
    if k == 0 {
        return Ok(if s == 0 { MotiveExpr::l_pow(chart.n as i64) } else { MotiveExpr::zero() });
    }
    // counts[v][t] = #{e : Σ m_i e_i = v, Σ e_i = t} over the components seen so far
    let s = s as usize;
    let mut counts: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); s + 1]; s + 1];
    counts[0][0] = BigInt::from(1);
    for &i in &comps {
        let m = chart.multiplicities[i] as usize;
        let mut next = vec![vec![BigInt::zero(); s + 1]; s + 1];
        for v in 0..=s {
            for t in 0..=s {
                if counts[v][t].is_zero() {
                    continue;
                }
                let mut e = 0;
                while v + e * m <= s && t + e <= s {
                    next[v + e * m][t + e] += &counts[v][t];
                    e += 1;
                }
            }
        }
        counts = next;
    }
    let mut sum = MotiveExpr::zero();
    for (t, c) in counts[s].iter().enumerate() {
        if !c.is_zero() {
            let term = MotiveExpr::from_rational(Rational::from_integer(c.clone()));
            sum = &sum + &(&term * &MotiveExpr::l_pow(-(t as i64)));
        }
    }
    Ok(&(&sum * &l_minus_one().pow(k as i64).expect("torus power")) * &MotiveExpr::l_pow(free))
}

/// The same measure computed at jet level `level` as `[B_k] · L^{-nk}`.
pub fn measure_at_jet_level(chart: &MonomialDivisorChart, s: u32, level: u32) -> Result<MotiveExpr, ArcError> {
    let strata = order_strata(chart, s)?;
    let n = chart.n as i64;
    let k = level as i64;
    let mut total = MotiveExpr::zero();
    for st in strata {
        // k-jets: k+1 coefficients per coordinate
        let mut b = MotiveExpr::one();
        for o in &st.orders {
            let factor = match *o {
                None => MotiveExpr::l_pow(k + 1),
                Some(e) if e <= level => &l_minus_one() * &MotiveExpr::l_pow(k - e as i64),
                Some(e) => return Err(ArcError::JetLevel { level, order: e }),
            };
            b = &b * &factor;
        }
        total = &total + &(&b * &MotiveExpr::l_pow(-n * k));
    }
    Ok(total)
}

/// `Σ_{s ≤ s_max} μ(F_D^{-1}(s)) L^{-s}` for `D = Σ a_i m_i {x_i = 0}`.
pub fn motivic_integral_truncated(chart: &MonomialDivisorChart, a: &[u32], s_max: u32) -> Result<MotiveExpr, ArcError> {
    let d = chart.weighted(a)?;
    let mut sum = MotiveExpr::zero();
    for s in 0..=s_max {
        let mu = measure_of_order_level(&d, s)?;
        sum = &sum + &(&mu * &MotiveExpr::l_pow(-(s as i64)));
    }
    Ok(sum)
}

/// Closed form `Π_i (L-1) L^{c_i+1} / (L^{c_i+1} - 1)` with `c_i = m_i a_i`; `L` when `c_i = 0`.
pub fn motivic_integral_closed_form(chart: &MonomialDivisorChart, a: &[u32]) -> Result<MotiveExpr, ArcError> {
    let d = chart.weighted(a)?;
    let mut out = MotiveExpr::one();
    for &c in d.multiplicities() {
        let p = MotiveExpr::l_pow(c as i64 + 1);
        let factor = (&l_minus_one() * &p).checked_div(&(&p - &MotiveExpr::one())).expect("nonzero denominator");
        out = &out * &factor;
    }
    Ok(out)
}

/// The same value as a sum over the strata `D°_J` of the normal crossing divisor.
pub fn stringy_from_strata(chart: &MonomialDivisorChart, a: &[u32]) -> Result<MotiveExpr, ArcError> {
    let d = chart.weighted(a)?;
    let comps = d.components();
    let free = (d.n - comps.len()) as i64;
    let mut total = MotiveExpr::zero();
    for mask in 0u32..(1 << comps.len()) {
        let inside: Vec<usize> = (0..comps.len()).filter(|j| mask >> j & 1 == 1).collect();
        let mut term = &l_minus_one().pow((comps.len() - inside.len()) as i64).expect("torus power") * &MotiveExpr::l_pow(free);
        for &j in &inside {
            let c = d.multiplicities[comps[j]] as i64;
            let den = &MotiveExpr::l_pow(c + 1) - &MotiveExpr::one();
            term = &term * &l_minus_one().checked_div(&den).expect("nonzero denominator");
        }
        total = &total + &term;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    /// Exponent of `L` of the first compared coefficient.
    pub top: i64,
    pub depth: usize,
    /// `(k, lhs, rhs)` at the first `k` where the coefficients of `L^{top-k}` differ.
    #[serde(serialize_with = "crate::arith::rational_text::disagreement")]
    pub first_disagreement: Option<(usize, Rational, Rational)>,
}

impl SeriesReport {
    pub fn agree(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_disagreement {
            None => write!(f, "agree through L^{} (depth {})", self.top - self.depth as i64, self.depth),
            Some((k, l, r)) => write!(f, "disagree at L^{} (index {k}): {l} vs {r}", self.top - *k as i64),
        }
    }
}

/// Compares `L^{-1}`-expansions of `lhs` and `rhs` on the coefficients of `L^{top-k}`, `k = 0..=depth`.
pub fn series_compare(lhs: &MotiveExpr, rhs: &MotiveExpr, depth: usize) -> Result<SeriesReport, ArcError> {
    if depth > MAX_LEVEL as usize {
        return Err(ArcError::Level(depth as u32));
    }
    let top = match (lhs.top_degree(), rhs.top_degree()) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => 0,
    };
    let l = lhs.laurent_expansion(top, depth);
    let r = rhs.laurent_expansion(top, depth);
    let first_disagreement =
        l.into_iter().zip(r).enumerate().find(|(_, (x, y))| x != y).map(|(k, (x, y))| (k, x, y));
    Ok(SeriesReport { top, depth, first_disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn motive(s: &str) -> MotiveExpr {
        s.parse().unwrap()
    }

    fn chart(m: &[u32]) -> MonomialDivisorChart {
        MonomialDivisorChart::new(m.to_vec()).unwrap()
    }

    #[test]
    fn level_measures() {
        assert_eq!(measure_of_order_level(&chart(&[1]), 0).unwrap(), motive("L - 1"));
        assert_eq!(measure_of_order_level(&chart(&[1, 0, 0]), 0).unwrap(), motive("L^3 - L^2"));
        for a in 1..4u32 {
            for s in 0..10u32 {
                let want = if s % a == 0 {
                    motive(&format!("(L - 1)*L^{}", 2 - (s / a) as i64))
                } else {
                    MotiveExpr::zero()
                };
                assert_eq!(measure_of_order_level(&chart(&[a, 0, 0]), s).unwrap(), want);
            }
        }
        assert_eq!(measure_of_order_level(&chart(&[1, 1]), 1).unwrap(), motive("2*(L - 1)^2*L^-1"));
        assert_eq!(order_strata(&chart(&[1, 1]), 1).unwrap().len(), 2);
    }

    #[test]
    fn total_measure_is_l_to_the_n() {
        for n in 1..=4usize {
            let c = MonomialDivisorChart::coordinate_hyperplane(n, 1).unwrap();
            for s_max in 0..8u32 {
                let partial: MotiveExpr = (0..=s_max).map(|s| measure_of_order_level(&c, s).unwrap()).sum();
                let tail = MotiveExpr::l_pow(n as i64 - 1 - s_max as i64);
                assert_eq!(&partial + &tail, MotiveExpr::l_pow(n as i64));
            }
        }
    }

    #[test]
    fn jet_level_independence() {
        for m in [vec![1u32], vec![2, 0], vec![1, 1], vec![1, 2, 0]] {
            let c = chart(&m);
            for s in 0..6u32 {
                let k0 = s;
                let a = measure_at_jet_level(&c, s, k0).unwrap();
                let b = measure_at_jet_level(&c, s, k0 + 1).unwrap();
                assert_eq!(a, b);
                assert_eq!(a, measure_of_order_level(&c, s).unwrap());
            }
        }
        assert!(measure_at_jet_level(&chart(&[1]), 3, 2).is_err());
    }

    #[test]
    fn measures_tend_to_zero() {
        let valuation = |c: &MonomialDivisorChart, s: u32| -> Option<i64> {
            measure_of_order_level(c, s).unwrap().top_degree().map(|d| c.dim() as i64 - d)
        };
        // reduced divisors: strictly increasing
        for m in [vec![1u32], vec![1, 1], vec![1, 0, 1], vec![1, 1, 1]] {
            let c = chart(&m);
            let v: Vec<i64> = (0..10).map(|s| valuation(&c, s).unwrap()).collect();
            assert!(v.windows(2).all(|w| w[1] > w[0]), "{m:?}: {v:?}");
        }
        // in general only bounded below by s / max m
        for m in [vec![1u32, 2], vec![1, 5], vec![2, 3, 0]] {
            let c = chart(&m);
            let top = *m.iter().max().unwrap() as i64;
            for s in 0..12u32 {
                if let Some(v) = valuation(&c, s) {
                    assert!(v * top >= s as i64, "{m:?} s={s}");
                }
            }
        }
        let c = chart(&[1, 2]);
        assert_eq!(valuation(&c, 1), valuation(&c, 2));
    }

    #[test]
    fn integrals_match_closed_forms() {
        for (n, a) in [(1usize, 1u32), (2, 1), (2, 2), (3, 2), (2, 0)] {
            let c = MonomialDivisorChart::coordinate_hyperplane(n, 1).unwrap();
            let mut w = vec![0; n];
            w[0] = a;
            let closed = motivic_integral_closed_form(&c, &w).unwrap();
            let (n1, a1) = (n - 1, a + 1);
            let want = motive(&format!("L^{n1}*(L - 1)*L^{a1}/(L^{a1} - 1)"));
            assert_eq!(closed, want);
            assert_eq!(stringy_from_strata(&c, &w).unwrap(), closed);
            let partial = motivic_integral_truncated(&c, &w, DEFAULT_TRUNCATION).unwrap();
            assert!(series_compare(&closed, &partial, 10).unwrap().agree());
        }
        let c = chart(&[1, 1]);
        let closed = motivic_integral_closed_form(&c, &[1, 2]).unwrap();
        assert_eq!(stringy_from_strata(&c, &[1, 2]).unwrap(), closed);
        let partial = motivic_integral_truncated(&c, &[1, 2], DEFAULT_TRUNCATION).unwrap();
        assert!(series_compare(&closed, &partial, 10).unwrap().agree());
        assert_eq!(motivic_integral_truncated(&chart(&[1, 0]), &[0, 0], 0).unwrap(), motive("L^2"));
    }

    #[test]
    fn series_examples() {
        let lhs = motive("1/(1 - L^-1)");
        assert!(series_compare(&lhs, &motive("1 + L^-1 + L^-2"), 2).unwrap().agree());
        let lhs = motive("(L - 1)/(L^2 - 1)");
        let partial: MotiveExpr = (0..5).map(|e| motive(&format!("(L - 1)*L^{}", -2 - 2 * e))).sum();
        assert!(series_compare(&lhs, &partial, 6).unwrap().agree());
        let r = series_compare(&motive("1/(1 - L^-1)"), &motive("1 + L^-1 + 2*L^-2"), 4).unwrap();
        assert_eq!(r.first_disagreement.map(|d| d.0), Some(2));
    }

    proptest! {
        #[test]
        fn enumeration_matches_counting(m in proptest::collection::vec(0u32..4, 1..4), s in 0u32..9) {
            let c = MonomialDivisorChart::new(m).unwrap();
            let by_strata: MotiveExpr = order_strata(&c, s).unwrap().into_iter().map(|st| st.measure).sum();
            prop_assert_eq!(by_strata, measure_of_order_level(&c, s).unwrap());
        }
    }
}
