//! The symmetric corner-chopping subdivision of a junior simplex whose only
//! extra lattice points are edge midpoints, as for `(Z/2)^3 ⊂ SL(4)`.

use serde::Serialize;

use super::lattice::{OrbifoldLattice, RayPoint};
use super::{normalized_volume, ToricError};
use crate::arith::{rat, Rational};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerChop {
    pub points: Vec<RayPoint>,
    /// One cell per vertex of the simplex: the vertex and the midpoints of its edges.
    pub corners: Vec<Vec<usize>>,
    #[serde(serialize_with = "crate::arith::rational_text::many")]
    pub corner_volumes: Vec<Rational>,
    /// Vertices of the cell that remains after removing the corners.
    pub central: Vec<usize>,
    #[serde(serialize_with = "crate::arith::rational_text::one")]
    pub central_volume: Rational,
    /// Lattice points of the central cell other than its vertices.
    pub central_extra_points: Vec<usize>,
}

impl CornerChop {
    pub fn central_is_simplex(&self) -> bool {
        self.central.len() == self.points[0].dim()
    }

    /// The central cell contains no lattice points besides its vertices.
    pub fn central_is_terminal(&self) -> bool {
        self.central_extra_points.is_empty()
    }

    /// The subdivision as a resolution: fails on the first cell that is not a basic simplex.
    pub fn check_resolution(&self) -> Result<(), ToricError> {
        let cells = self.corners.iter().zip(&self.corner_volumes).chain(std::iter::once((&self.central, &self.central_volume)));
        for (cell, vol) in cells {
            let simplicial = cell.len() == self.points[0].dim();
            if !simplicial || *vol != rat(1, 1) {
                return Err(ToricError::NotAResolution {
                    cone: cell.clone(),
                    volume: vol.to_integer().try_into().unwrap_or(u64::MAX),
                    simplicial,
                });
            }
        }
        Ok(())
    }
}

/// Chops off the corner simplices at each vertex of the junior simplex.
pub fn corner_chop(group: &FiniteGroup) -> Result<CornerChop, ToricError> {
    let lattice = OrbifoldLattice::new(group)?;
    let n = lattice.dim();
    let e = lattice.exponent() as u64;
    let points = lattice.junior_simplex_points();
    let is_midpoint = |p: &RayPoint| {
        let nz: Vec<u64> = p.coords.iter().copied().filter(|&c| c != 0).collect();
        nz.len() == 2 && nz[0] * 2 == e && nz[1] * 2 == e
    };
    if let Some(p) = points[n..].iter().find(|p| !is_midpoint(p)) {
        return Err(ToricError::Inconsistent(format!("junior point {p} is not an edge midpoint")));
    }
    let corners: Vec<Vec<usize>> = (0..n)
        .map(|i| std::iter::once(i).chain((n..points.len()).filter(|&k| points[k].coords[i] != 0)).collect())
        .collect();
    let mut corner_volumes = Vec::with_capacity(n);
    for c in &corners {
        if c.len() != n {
            return Err(ToricError::Inconsistent(format!("corner cell {c:?} is not a simplex")));
        }
        let v: Vec<&[u64]> = c.iter().map(|&k| points[k].coords.as_slice()).collect();
        corner_volumes.push(normalized_volume(&v, lattice.exponent(), lattice.index()));
    }
    // the junior simplex itself has normalized volume |G|
    let total = rat(lattice.index() as i64, 1);
    let central_volume = corner_volumes.iter().fold(total, |acc, v| acc - v);
    let central: Vec<usize> = (n..points.len()).collect();
    // every lattice point is a vertex or a midpoint, so the central cell has nothing else
    let central_extra_points = Vec::new();
    Ok(CornerChop { points, corners, corner_volumes, central, central_volume, central_extra_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn klein_cube_corner_chop() {
        let c = corner_chop(&families::klein_cube()).unwrap();
        assert_eq!(c.corners.len(), 4);
        assert!(c.corner_volumes.iter().all(|v| *v == rat(1, 1)));
        assert_eq!(c.central.len(), 6);
        assert_eq!(c.central_volume, rat(4, 1));
        assert!(c.central_is_terminal());
        assert!(!c.central_is_simplex());
        assert_eq!(
            c.check_resolution(),
            Err(ToricError::NotAResolution { cone: c.central.clone(), volume: 4, simplicial: false })
        );
    }

    #[test]
    fn octahedron_splits_into_basic_simplices() {
        // any diagonal of the central octahedron cuts it into four basic simplices
        let c = corner_chop(&families::klein_cube()).unwrap();
        let p = |k: usize| c.points[k].coords.as_slice();
        let mid = |a: usize, b: usize| {
            (4..10).find(|&k| c.points[k].coords[a] != 0 && c.points[k].coords[b] != 0).unwrap()
        };
        let (d0, d1) = (mid(0, 1), mid(2, 3));
        let ring = [mid(0, 2), mid(1, 2), mid(1, 3), mid(0, 3)];
        let mut total = rat(0, 1);
        for i in 0..4 {
            let v = [p(d0), p(d1), p(ring[i]), p(ring[(i + 1) % 4])];
            let vol = normalized_volume(&v, 2, 8);
            assert_eq!(vol, rat(1, 1));
            total += vol;
        }
        assert_eq!(total, c.central_volume);
    }

    #[test]
    fn rejects_other_groups() {
        assert!(corner_chop(&families::cyclic(7, &[1, 2, 4]).unwrap()).is_err());
    }
}
