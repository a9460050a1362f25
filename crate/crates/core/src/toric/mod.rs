//! Toric geometry of abelian quotients `C^n/G`: the lattice `N`, the junior
//! simplex, crepant triangulations, marked simplicial fans, star subdivisions
//! and strata classes.

mod chop;
mod fan;
mod lattice;
mod triangulation;

pub use chop::{corner_chop, CornerChop};
pub use fan::{FanParseError, SimplicialFan, StarSubdivision, MAX_FAN_DIM};
pub use lattice::{OrbifoldLattice, RayPoint};
pub use triangulation::{crepant_triangulate_3d, Strategy, Triangulation};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::Rational;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("toric methods need an abelian diagonal group")]
    NotAbelian,
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("not a cyclic subgroup of SL(2): {0}")]
    NotCyclicSl2(String),
    #[error("not a resolution: cone {cone:?} has normalized volume {volume}{}", if *simplicial { "" } else { " and is not simplicial" })]
    NotAResolution { cone: Vec<usize>, volume: u64, simplicial: bool },
    #[error("point {0} is not in the support of the fan")]
    NotInSupport(String),
    #[error("point {0} is not in the lattice N")]
    NotInLattice(String),
    #[error("point {0} is not primitive in N")]
    NotPrimitive(String),
    #[error("no crepant triangulation search in dimension {0}")]
    NoCrepantSearch(usize),
    #[error("{0}")]
    Inconsistent(String),
    #[error("fan is too large for this computation: {0}")]
    TooLarge(String),
}

/// Crepant resolution fan of `C^n/G` for `n ≤ 3`: the orthant for trivial `G`,
/// the Hirzebruch-Jung chain for `n = 2`, cones over a triangulation for `n = 3`.
pub fn crepant_fan(group: &FiniteGroup, strategy: Strategy) -> Result<SimplicialFan, ToricError> {
    if !group.is_abelian_diagonal() {
        return Err(ToricError::NotAbelian);
    }
    match group.dim() {
        _ if group.order() == 1 => Ok(SimplicialFan::orthant_of(group)?),
        2 => hirzebruch_jung_fan(group),
        3 => SimplicialFan::from_triangulation(&crepant_triangulate_3d(group, strategy)?),
        n => Err(ToricError::NoCrepantSearch(n)),
    }
}

/// The chain of junior points on the segment `x + y = 1`, consecutive pairs as cones.
pub fn hirzebruch_jung_fan(group: &FiniteGroup) -> Result<SimplicialFan, ToricError> {
    if group.dim() != 2 {
        return Err(ToricError::WrongDimension { expected: 2, got: group.dim() });
    }
    let r = group.order();
    if !(0..r).any(|i| group.element_order(i) as usize == r) {
        return Err(ToricError::NotCyclicSl2(format!("group of order {r} is not cyclic")));
    }
    let lattice = OrbifoldLattice::new(group)?;
    let mut points = lattice.junior_simplex_points();
    // order along the segment from e_2 to e_1
    points.sort_by_key(|p| p.coords[0]);
    let cones = (0..points.len() - 1).map(|i| vec![i, i + 1]).collect();
    let marks = points.iter().enumerate().filter(|(_, p)| !p.is_unit_vector()).map(|(i, _)| (i, 0)).collect();
    SimplicialFan::new(2, lattice.exponent(), r, points, cones, marks)
}

/// Self-intersections `E_k^2` of the exceptional curves of the minimal resolution of `1/r(1, r-1)`,
/// read off from `v_{k-1} + v_{k+1} = -(E_k^2) v_k`.
pub fn chain_self_intersections(group: &FiniteGroup) -> Result<Vec<i64>, ToricError> {
    if !group.is_abelian_diagonal() {
        return Err(ToricError::NotAbelian);
    }
    let fan = hirzebruch_jung_fan(group)?;
    let rays = fan.rays();
    let mut out = Vec::with_capacity(rays.len().saturating_sub(2));
    for k in 1..rays.len().saturating_sub(1) {
        let v = &rays[k].coords;
        let sum: Vec<u64> = rays[k - 1].coords.iter().zip(&rays[k + 1].coords).map(|(a, b)| a + b).collect();
        let pivot = v.iter().position(|&x| x != 0).expect("nonzero ray");
        if !sum[pivot].is_multiple_of(v[pivot]) {
            return Err(ToricError::Inconsistent(format!("rays around {} are not in a chain relation", rays[k])));
        }
        let c = sum[pivot] / v[pivot];
        if sum.iter().zip(v).any(|(s, x)| *s != c * x) {
            return Err(ToricError::Inconsistent(format!("rays around {} are not in a chain relation", rays[k])));
        }
        out.push(-(c as i64));
    }
    Ok(out)
}

/// Exact determinant of an integer matrix by fraction-free elimination.
pub(crate) fn int_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Normalized volume `|det| · |G| / e^n` of the simplex spanned by scaled vectors; 1 for a basic simplex.
pub(crate) fn normalized_volume(vectors: &[&[u64]], exponent: u32, order: usize) -> Rational {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = int_determinant(&rows).abs();
    Rational::new(det * BigInt::from(order), BigInt::from(exponent).pow(vectors.len() as u32))
}
