//! Full lattice triangulations of the junior triangle for `G ⊂ SL(3)`.
//!
//! Points are placed one at a time into the current triangulation; a point
//! inside a triangle splits it in three, a point on an edge splits both
//! neighbours in two. Since every lattice point becomes a vertex, each cell is
//! empty and therefore basic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use super::lattice::{OrbifoldLattice, RayPoint};
use super::{normalized_volume, ToricError};
use crate::arith::rat;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Deterministic,
    /// The deterministic triangulation followed by one pass of disjoint flips in reverse edge order.
    Alternate,
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "deterministic" => Ok(Strategy::Deterministic),
            "alternate" => Ok(Strategy::Alternate),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Deterministic => "deterministic",
            Strategy::Alternate => "alternate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub points: Vec<RayPoint>,
    /// Vertex indices, each sorted ascending; the list is sorted.
    pub cells: Vec<[usize; 3]>,
    pub exponent: u32,
    pub order: usize,
    pub strategy: Strategy,
}

type Point2 = (i64, i64);

fn orient(a: Point2, b: Point2, c: Point2) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn canonical(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Builds the triangulation; unit vectors come first in `points`.
pub fn crepant_triangulate_3d(group: &FiniteGroup, strategy: Strategy) -> Result<Triangulation, ToricError> {
    if group.dim() != 3 {
        return Err(ToricError::WrongDimension { expected: 3, got: group.dim() });
    }
    let lattice = OrbifoldLattice::new(group)?;
    let points = lattice.junior_simplex_points();
    let plane: Vec<Point2> = points.iter().map(|p| (p.coords[0] as i64, p.coords[1] as i64)).collect();

    let mut cells: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for p in 3..points.len() {
        place(&mut cells, &plane, p)?;
    }
    if strategy == Strategy::Alternate {
        flip_pass(&mut cells, &plane);
    }
    let mut cells: Vec<[usize; 3]> = cells.into_iter().map(canonical).collect();
    cells.sort_unstable();
    let t = Triangulation { points, cells, exponent: lattice.exponent(), order: group.order(), strategy };
    t.check()?;
    Ok(t)
}

fn place(cells: &mut Vec<[usize; 3]>, plane: &[Point2], p: usize) -> Result<(), ToricError> {
    let q = plane[p];
    let found = cells.iter().enumerate().find_map(|(ti, &[a, b, c])| {
        let (pa, pb, pc) = (plane[a], plane[b], plane[c]);
        let sign = orient(pa, pb, pc).signum();
        let o = [orient(pb, pc, q) * sign, orient(pc, pa, q) * sign, orient(pa, pb, q) * sign];
        (o.iter().all(|&x| x >= 0)).then_some((ti, [a, b, c], o))
    });
    let Some((ti, verts, o)) = found else {
        return Err(ToricError::Inconsistent(format!("point {p} lies in no cell")));
    };
    let [a, b, c] = verts;
    match o.iter().position(|&x| x == 0) {
        None => {
            cells.swap_remove(ti);
            cells.extend([[a, b, p], [b, c, p], [c, a, p]]);
        }
        Some(k) => {
            // q lies on the edge opposite verts[k]
            let (u, w) = (verts[(k + 1) % 3], verts[(k + 2) % 3]);
            let mut new = Vec::new();
            cells.retain(|t| {
                if !(t.contains(&u) && t.contains(&w)) {
                    return true;
                }
                let x = *t.iter().find(|&&v| v != u && v != w).unwrap();
                new.push([u, x, p]);
                new.push([x, w, p]);
                false
            });
            cells.extend(new);
        }
    }
    Ok(())
}

/// Interior edges with their two opposite vertices, in sorted edge order.
fn interior_edges(cells: &[[usize; 3]]) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for t in cells {
        let t = canonical(*t);
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            map.entry((t[i], t[j])).or_default().push(t[k]);
        }
    }
    map.retain(|_, v| v.len() == 2);
    map
}

/// One pass in reverse edge order flipping every edge whose quadrilateral is strictly convex and
/// whose two triangles are untouched so far in the pass.
fn flip_pass(cells: &mut Vec<[usize; 3]>, plane: &[Point2]) {
    let edges = interior_edges(cells);
    let mut touched: BTreeSet<[usize; 3]> = BTreeSet::new();
    let mut current: BTreeSet<[usize; 3]> = cells.iter().map(|t| canonical(*t)).collect();
    for (&(u, w), opp) in edges.iter().rev() {
        let (x, y) = (opp[0], opp[1]);
        let t1 = canonical([u, w, x]);
        let t2 = canonical([u, w, y]);
        if touched.contains(&t1) || touched.contains(&t2) {
            continue;
        }
        // the diagonal x-y must cross u-w strictly
        let s1 = orient(plane[x], plane[y], plane[u]);
        let s2 = orient(plane[x], plane[y], plane[w]);
        if s1 == 0 || s2 == 0 || s1.signum() == s2.signum() {
            continue;
        }
        let n1 = canonical([x, y, u]);
        let n2 = canonical([x, y, w]);
        current.remove(&t1);
        current.remove(&t2);
        current.insert(n1);
        current.insert(n2);
        touched.extend([t1, t2, n1, n2]);
    }
    *cells = current.into_iter().collect();
}

impl Triangulation {
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        self.cells.iter().flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.cells.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Normalized volume of each cell; all equal 1 for a crepant triangulation.
    pub fn cell_volumes(&self) -> Vec<crate::arith::Rational> {
        self.cells
            .iter()
            .map(|t| {
                let v: Vec<&[u64]> = t.iter().map(|&i| self.points[i].coords.as_slice()).collect();
                normalized_volume(&v, self.exponent, self.order)
            })
            .collect()
    }

    /// Cells are basic, cover the triangle (count = |G|) and use every lattice point.
    pub fn check(&self) -> Result<(), ToricError> {
        for (t, vol) in self.cells.iter().zip(self.cell_volumes()) {
            if vol != rat(1, 1) {
                return Err(ToricError::NotAResolution {
                    cone: t.to_vec(),
                    volume: vol.to_integer().try_into().unwrap_or(u64::MAX),
                    simplicial: true,
                });
            }
        }
        if self.cells.len() != self.order {
            return Err(ToricError::Inconsistent(format!("{} cells for a group of order {}", self.cells.len(), self.order)));
        }
        if self.vertex_count() != self.points.len() {
            return Err(ToricError::Inconsistent("some lattice point is not a vertex".into()));
        }
        Ok(())
    }

    /// Deterministic SVG picture of the junior triangle with lattice points, labels and edges.
    pub fn to_svg(&self) -> String {
        const W: i64 = 480;
        const H: i64 = 440;
        let corners = [(40i64, 400i64), (440, 400), (240, 54)];
        let e = self.exponent as i64;
        let place = |p: &RayPoint| -> (i64, i64) {
            let c: Vec<i64> = p.coords.iter().map(|&x| x as i64).collect();
            let x = (c[0] * corners[0].0 + c[1] * corners[1].0 + c[2] * corners[2].0 + e / 2) / e;
            let y = (c[0] * corners[0].1 + c[1] * corners[1].1 + c[2] * corners[2].1 + e / 2) / e;
            (x, y)
        };
        let pos: Vec<(i64, i64)> = self.points.iter().map(place).collect();
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5">"#);
        for (a, b) in self.edges() {
            let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, pos[a].0, pos[a].1, pos[b].0, pos[b].1);
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g font-family="monospace" font-size="11">"#);
        for (p, (x, y)) in self.points.iter().zip(&pos) {
            let fill = if p.is_unit_vector() { "black" } else { "crimson" };
            let label = if p.is_unit_vector() { p.to_string() } else { format!("{p} age 1") };
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="4" fill="{fill}"/>"#);
            let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, x + 6, y - 6);
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triangulation strategy={} order={} denominator={}", self.strategy, self.order, self.exponent)?;
        for (i, p) in self.points.iter().enumerate() {
            writeln!(f, "point {i} {p}")?;
        }
        for t in &self.cells {
            writeln!(f, "cell {} {} {}", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn seven_basic_triangles() {
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        for s in [Strategy::Deterministic, Strategy::Alternate] {
            let t = crepant_triangulate_3d(&g, s).unwrap();
            assert_eq!((t.cells.len(), t.edges().len(), t.vertex_count()), (7, 12, 6));
        }
    }

    #[test]
    fn centroid_star() {
        let g = families::cyclic(3, &[1, 1, 1]).unwrap();
        let t = crepant_triangulate_3d(&g, Strategy::Deterministic).unwrap();
        assert_eq!(t.cells, vec![[0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        // no interior edge of the star is flippable
        assert_eq!(crepant_triangulate_3d(&g, Strategy::Alternate).unwrap().cells, t.cells);
    }

    #[test]
    fn alternate_differs_when_a_flip_exists() {
        let g = families::diagonal(3, &[(3, vec![1, 2, 0]), (3, vec![0, 1, 2])]).unwrap();
        let a = crepant_triangulate_3d(&g, Strategy::Deterministic).unwrap();
        let b = crepant_triangulate_3d(&g, Strategy::Alternate).unwrap();
        assert_eq!(a.cells.len(), 9);
        assert_ne!(a.cells, b.cells);
    }

    #[test]
    fn edge_points_and_wrong_dimension() {
        let g = families::cyclic(4, &[1, 3, 0]).unwrap();
        let t = crepant_triangulate_3d(&g, Strategy::Deterministic).unwrap();
        assert_eq!(t.cells.len(), 4);
        assert!(crepant_triangulate_3d(&families::sl2_cyclic(2).unwrap(), Strategy::Deterministic).is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        let a = crepant_triangulate_3d(&g, Strategy::Deterministic).unwrap().to_svg();
        let b = crepant_triangulate_3d(&g, Strategy::Deterministic).unwrap().to_svg();
        assert_eq!(a, b);
        assert_eq!(a.matches("<line").count(), 12);
        assert_eq!(a.matches("<circle").count(), 6);
    }
}
