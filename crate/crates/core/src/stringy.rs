//! Stringy motives and orbifold Euler numbers.
//!
//! Two routes to the motive: a sum over the open strata of a marked resolution
//! fan, and a sum over isotropy strata of `C^n` weighted by ages. The Euler
//! number is the specialization `L = 1`, or directly the commuting-pair count.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::age::{element_age, AgeError};
use crate::arith::{rat, MotiveError, MotiveExpr, Rational};
use crate::group::FiniteGroup;
use crate::toric::{crepant_fan, SimplicialFan, Strategy, ToricError};

/// Coordinate subsets are enumerated exhaustively.
pub const MAX_GROUP_ROUTE_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringyError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Age(#[from] AgeError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error("ray {ray} has negative discrepancy {discrepancy}")]
    NegativeDiscrepancy { ray: usize, discrepancy: i64 },
    #[error("the stringy motive needs an abelian diagonal group; use the Euler number for this group")]
    NotAbelian,
    #[error("dimension {0} is too large for the isotropy sum")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Strata of a marked resolution fan.
    Fan,
    /// Isotropy strata of `C^n` with age weights.
    Group,
    /// Commuting pairs over `|G|`.
    CommutingPairs,
    /// Euler numbers of isotropy strata times class counts.
    Strata,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Fan => "fan",
            Route::Group => "group",
            Route::CommutingPairs => "commuting-pairs",
            Route::Strata => "strata",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringyResult {
    pub route: Route,
    pub motive: Option<MotiveExpr>,
    #[serde(serialize_with = "crate::arith::rational_text::one")]
    pub euler: Rational,
}

impl StringyResult {
    fn from_motive(route: Route, motive: MotiveExpr) -> Result<Self, StringyError> {
        let euler = motive.eval_at_one()?;
        Ok(StringyResult { route, motive: Some(motive), euler })
    }

    pub fn is_polynomial(&self) -> bool {
        self.motive.as_ref().is_some_and(|m| m.is_polynomial())
    }
}

/// `Σ_J [D°_J] Π_{j∈J} (L-1)/(L^{a_j+1}-1)` over the strata of a smooth marked fan.
pub fn stringy_from_fan(fan: &SimplicialFan) -> Result<StringyResult, StringyError> {
    if let Some((&ray, &discrepancy)) = fan.marks().iter().find(|(_, a)| **a < 0) {
        return Err(StringyError::NegativeDiscrepancy { ray, discrepancy });
    }
    let one = MotiveExpr::one();
    let factor = |a: i64| -> Result<MotiveExpr, StringyError> {
        let den = &MotiveExpr::l_pow(a + 1) - &one;
        Ok(MotiveExpr::torus(1).checked_div(&den)?)
    };
    let mut total = MotiveExpr::zero();
    for (j, class) in fan.strata_classes()? {
        let mut term = class;
        for i in j {
            term = &term * &factor(fan.marks()[&i])?;
        }
        total = &total + &term;
    }
    StringyResult::from_motive(Route::Fan, total)
}

/// One isotropy stratum: the points whose nonzero coordinates are exactly `support`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyStratum {
    /// Element indices of the stabilizer.
    pub stabilizer: Vec<usize>,
    pub supports: Vec<Vec<usize>>,
    pub class: MotiveExpr,
    pub age_sum: MotiveExpr,
}

/// Isotropy strata grouped by stabilizer, in order of first appearance over supports.
pub fn isotropy_strata(group: &FiniteGroup) -> Result<Vec<IsotropyStratum>, StringyError> {
    let weights = group.weights().map_err(|_| StringyError::NotAbelian)?;
    let n = group.dim();
    if n > MAX_GROUP_ROUTE_DIM {
        return Err(StringyError::TooLarge(n));
    }
    let ages: Vec<u32> = group.elements().iter().map(|g| element_age(g).map(|a| a.age)).collect::<Result<_, _>>()?;
    let mut by_stabilizer: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut out: Vec<IsotropyStratum> = Vec::new();
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let stabilizer: Vec<usize> = (0..group.order())
            .filter(|&g| support.iter().all(|&i| weights[g].exponents()[i] == 0))
            .collect();
        let slot = *by_stabilizer.entry(stabilizer.clone()).or_insert_with(|| {
            let age_sum = stabilizer.iter().map(|&g| MotiveExpr::l_pow(ages[g] as i64)).sum();
            out.push(IsotropyStratum { stabilizer, supports: Vec::new(), class: MotiveExpr::zero(), age_sum });
            out.len() - 1
        });
        let s = &mut out[slot];
        s.class = &s.class + &MotiveExpr::torus(support.len() as u32);
        s.supports.push(support);
    }
    Ok(out)
}

/// `Σ_H [X^H] Σ_{g∈H} L^{age g}`.
pub fn stringy_from_group(group: &FiniteGroup) -> Result<StringyResult, StringyError> {
    let total = isotropy_strata(group)?.iter().map(|s| &s.class * &s.age_sum).sum();
    StringyResult::from_motive(Route::Group, total)
}

/// `Σ_{g∈G} L^{n - age g}`.
pub fn census_motive(group: &FiniteGroup) -> Result<MotiveExpr, StringyError> {
    let n = group.dim() as i64;
    group.elements().iter().map(|g| Ok(MotiveExpr::l_pow(n - element_age(g)?.age as i64))).sum()
}

/// The stringy motive of the crepant resolution fan built with `strategy`.
pub fn stringy_from_crepant_fan(group: &FiniteGroup, strategy: Strategy) -> Result<StringyResult, StringyError> {
    stringy_from_fan(&crepant_fan(group, strategy)?)
}

/// `(1/|G|) · #{(g, h) : gh = hg}`; every fixed locus of a linear action has Euler number 1.
pub fn orbifold_euler(group: &FiniteGroup) -> StringyResult {
    let pairs = group.commuting_pairs_count();
    StringyResult { route: Route::CommutingPairs, motive: None, euler: rat(pairs as i64, group.order() as i64) }
}

/// `Σ_H e(X^H) · #classes(H)` with `e(X^H)` the value at `L = 1` of the stratum class.
pub fn orbifold_euler_strata(group: &FiniteGroup) -> Result<StringyResult, StringyError> {
    let mut euler = rat(0, 1);
    for s in isotropy_strata(group)? {
        // the stabilizer is abelian, so its classes are its elements
        euler += s.class.eval_at_one()? * rat(s.stabilizer.len() as i64, 1);
    }
    Ok(StringyResult { route: Route::Strata, motive: None, euler })
}
