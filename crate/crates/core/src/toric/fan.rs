//! Marked simplicial fans in the orthant of `N`, their star subdivisions and
//! the classes of their open strata.
//!
//! Text form, one `key = value` per line, `#` starts a comment:
//!
//! ```text
//! n = 2
//! denominator = 2
//! order = 2
//! ray = 2 0
//! ray = 1 1
//! ray = 0 2
//! cone = 0 1
//! cone = 1 2
//! mark = 1 0
//! ```
//!
//! Rays are scaled by `denominator`; `order` is the index `|N / Z^n|`;
//! `mark = i a` flags ray `i` as exceptional with discrepancy `a`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::lattice::{OrbifoldLattice, RayPoint};
use super::triangulation::Triangulation;
use super::{int_determinant, ToricError};
use crate::arith::{MotiveExpr, Rational};
use crate::group::FiniteGroup;

pub const MAX_FAN_DIM: usize = 16;
const MAX_FAN_TEXT: usize = 1 << 20;
const MAX_RAYS: usize = 4096;
const MAX_CONES: usize = 65_536;
const MAX_DENOMINATOR: u64 = 1 << 20;
const MAX_COORDINATE: u64 = 1 << 40;
/// Face enumeration is exponential in `n`.
const MAX_STRATA_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FanParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialFan {
    n: usize,
    denominator: u32,
    order: usize,
    rays: Vec<RayPoint>,
    cones: Vec<Vec<usize>>,
    marks: BTreeMap<usize, i64>,
}

/// Result of a star subdivision.
#[derive(Debug, Clone)]
pub struct StarSubdivision {
    pub fan: SimplicialFan,
    /// Index of the new ray, or `None` when the point was already a ray.
    pub new_ray: Option<usize>,
    pub warning: Option<String>,
}

impl SimplicialFan {
    pub fn new(
        n: usize,
        denominator: u32,
        order: usize,
        rays: Vec<RayPoint>,
        cones: Vec<Vec<usize>>,
        marks: BTreeMap<usize, i64>,
    ) -> Result<Self, ToricError> {
        let bad = |m: String| Err(ToricError::Inconsistent(m));
        if n == 0 || n > MAX_FAN_DIM {
            return bad(format!("dimension {n} out of range 1..={MAX_FAN_DIM}"));
        }
        if denominator == 0 || order == 0 {
            return bad("denominator and order must be positive".into());
        }
        for r in &rays {
            if r.dim() != n || r.denominator != denominator || r.coords.iter().all(|&c| c == 0) {
                return bad(format!("bad ray {r}"));
            }
        }
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        for c in &cones {
            if c.len() != n || c.windows(2).any(|w| w[0] == w[1]) || c.iter().any(|&i| i >= rays.len()) {
                return bad(format!("bad cone {c:?}"));
            }
        }
        cones.sort();
        cones.dedup();
        if let Some(i) = marks.keys().find(|&&i| i >= rays.len()) {
            return bad(format!("mark on missing ray {i}"));
        }
        Ok(SimplicialFan { n, denominator, order, rays, cones, marks })
    }

    /// The positive orthant in the lattice of `group`, with no subdivision.
    pub fn orthant_of(group: &FiniteGroup) -> Result<Self, ToricError> {
        let lattice = OrbifoldLattice::new(group)?;
        let rays = lattice.junior_simplex_points().into_iter().take(group.dim()).collect();
        Self::new(group.dim(), lattice.exponent(), group.order(), rays, vec![(0..group.dim()).collect()], BTreeMap::new())
    }

    /// The orthant of `Z^n`.
    pub fn orthant(n: usize) -> Result<Self, ToricError> {
        let rays = (0..n).map(|i| RayPoint::new((0..n).map(|j| (i == j) as u64).collect(), 1)).collect();
        Self::new(n, 1, 1, rays, vec![(0..n).collect()], BTreeMap::new())
    }

    /// Cones over the cells; every non-unit point is marked with discrepancy `s(v) - 1 = 0`.
    pub fn from_triangulation(t: &Triangulation) -> Result<Self, ToricError> {
        let marks = t
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_unit_vector())
            .map(|(i, p)| (i, p.discrepancy().to_integer().try_into().unwrap_or(i64::MAX)))
            .collect();
        let fan = Self::new(3, t.exponent, t.order, t.points.clone(), t.cells.iter().map(|c| c.to_vec()).collect(), marks)?;
        fan.check_smooth()?;
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rays(&self) -> &[RayPoint] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn marks(&self) -> &BTreeMap<usize, i64> {
        &self.marks
    }

    pub fn mark(&mut self, ray: usize, discrepancy: i64) {
        self.marks.insert(ray, discrepancy);
    }

    /// Drops the marks with discrepancy 0.
    pub fn unmark_crepant(&self) -> Self {
        let mut f = self.clone();
        f.marks.retain(|_, a| *a != 0);
        f
    }

    fn cone_matrix(&self, cone: &[usize]) -> Vec<Vec<BigInt>> {
        cone.iter().map(|&i| self.rays[i].coords.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// `|det| · |G| / e^n` for a maximal cone; 1 exactly when its rays form a basis of `N`.
    pub fn cone_volume(&self, cone: &[usize]) -> Rational {
        let det = int_determinant(&self.cone_matrix(cone)).abs();
        Rational::new(det * BigInt::from(self.order), BigInt::from(self.denominator).pow(self.n as u32))
    }

    pub fn is_smooth(&self) -> bool {
        self.check_smooth().is_ok()
    }

    pub fn check_smooth(&self) -> Result<(), ToricError> {
        for c in &self.cones {
            let v = self.cone_volume(c);
            if !v.is_one() {
                let volume = if v.is_integer() { v.to_integer().try_into().unwrap_or(u64::MAX) } else { 0 };
                return Err(ToricError::NotAResolution { cone: c.clone(), volume, simplicial: true });
            }
        }
        Ok(())
    }

    /// Coordinates of the scaled vector `v` in the basis of `cone`, or `None` if the cone is degenerate.
    fn solve(&self, cone: &[usize], v: &[u64]) -> Option<Vec<Rational>> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|row| {
                let mut r: Vec<Rational> =
                    cone.iter().map(|&i| Rational::from_integer(BigInt::from(self.rays[i].coords[row]))).collect();
                r.push(Rational::from_integer(BigInt::from(v[row])));
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..=n {
                        let t = &f * &a[col][j];
                        a[r][j] -= t;
                    }
                }
            }
        }
        Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    /// Star subdivision at `v`, marking the new ray with `s(v) - 1`.
    pub fn star_subdivide(&self, v: &RayPoint) -> Result<StarSubdivision, ToricError> {
        if v.dim() != self.n {
            return Err(ToricError::WrongDimension { expected: self.n, got: v.dim() });
        }
        let d = self.denominator as u64;
        let scaled: Vec<u64> = {
            let mut out = Vec::with_capacity(self.n);
            for &c in &v.coords {
                let num = c as u128 * d as u128;
                if !num.is_multiple_of(v.denominator as u128) {
                    return Err(ToricError::NotInLattice(v.to_string()));
                }
                out.push(u64::try_from(num / v.denominator as u128).map_err(|_| ToricError::TooLarge(v.to_string()))?);
            }
            out
        };
        let point = RayPoint::new(scaled.clone(), self.denominator);
        if let Some(i) = self.rays.iter().position(|r| *r == point) {
            let warning = format!("{v} is already ray {i}; fan unchanged");
            log::warn!("{warning}");
            return Ok(StarSubdivision { fan: self.clone(), new_ray: None, warning: Some(warning) });
        }
        let (cone, lambda) = self
            .cones
            .iter()
            .find_map(|c| self.solve(c, &scaled).filter(|l| l.iter().all(|x| !x.is_negative())).map(|l| (c, l)))
            .ok_or_else(|| ToricError::NotInSupport(v.to_string()))?;
        let tau: Vec<usize> = cone.iter().zip(&lambda).filter(|(_, l)| !l.is_zero()).map(|(&i, _)| i).collect();
        if self.cone_volume(cone).is_one() {
            if lambda.iter().any(|l| !l.is_integer()) {
                return Err(ToricError::NotInLattice(v.to_string()));
            }
            let g = lambda.iter().fold(BigInt::zero(), |acc, l| acc.gcd(l.numer()));
            if !g.is_one() {
                return Err(ToricError::NotPrimitive(v.to_string()));
            }
        }
        let mut rays = self.rays.clone();
        rays.push(point.clone());
        let new = rays.len() - 1;
        let mut cones = Vec::new();
        for c in &self.cones {
            if tau.iter().all(|t| c.contains(t)) {
                for &rho in &tau {
                    cones.push(c.iter().map(|&i| if i == rho { new } else { i }).collect());
                }
            } else {
                cones.push(c.clone());
            }
        }
        let mut marks = self.marks.clone();
        let disc = point.discrepancy();
        if !disc.is_integer() {
            return Err(ToricError::Inconsistent(format!("{v} has non-integral coordinate sum")));
        }
        marks.insert(new, disc.to_integer().try_into().map_err(|_| ToricError::TooLarge(v.to_string()))?);
        let fan = Self::new(self.n, self.denominator, self.order, rays, cones, marks)?;
        Ok(StarSubdivision { fan, new_ray: Some(new), warning: None })
    }

    /// All faces of all maximal cones, including the zero cone.
    pub fn faces(&self) -> Result<BTreeSet<Vec<usize>>, ToricError> {
        if self.n > MAX_STRATA_DIM {
            return Err(ToricError::TooLarge(format!("face enumeration in dimension {}", self.n)));
        }
        let mut out = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u32..(1 << self.n) {
                out.insert(c.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect());
            }
        }
        Ok(out)
    }

    /// `[D°_J]` for every set `J` of marked rays that occurs, keyed by ray indices.
    pub fn strata_classes(&self) -> Result<BTreeMap<Vec<usize>, MotiveExpr>, ToricError> {
        self.check_smooth()?;
        let n = self.n;
        let mut out: BTreeMap<Vec<usize>, MotiveExpr> = BTreeMap::new();
        for face in self.faces()? {
            let j: Vec<usize> = face.iter().copied().filter(|i| self.marks.contains_key(i)).collect();
            let class = MotiveExpr::torus((n - face.len()) as u32);
            let slot = out.entry(j).or_insert_with(MotiveExpr::zero);
            *slot = &*slot + &class;
        }
        Ok(out)
    }

    /// `[Y] = Σ_σ (L-1)^{n - dim σ}`.
    pub fn total_class(&self) -> Result<MotiveExpr, ToricError> {
        Ok(self.strata_classes()?.into_values().sum())
    }
}

impl fmt::Display for SimplicialFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "denominator = {}", self.denominator)?;
        writeln!(f, "order = {}", self.order)?;
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
        for r in &self.rays {
            writeln!(f, "ray = {}", join(&mut r.coords.iter().map(|c| c.to_string())))?;
        }
        for c in &self.cones {
            writeln!(f, "cone = {}", join(&mut c.iter().map(|c| c.to_string())))?;
        }
        for (i, a) in &self.marks {
            writeln!(f, "mark = {i} {a}")?;
        }
        Ok(())
    }
}

impl FromStr for SimplicialFan {
    type Err = FanParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| FanParseError { line, message };
        if text.len() > MAX_FAN_TEXT {
            return Err(err(0, format!("input exceeds {MAX_FAN_TEXT} bytes")));
        }
        let mut n: Option<usize> = None;
        let mut denominator: Option<u32> = None;
        let mut order: Option<usize> = None;
        let mut rays: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut cones: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut marks: BTreeMap<usize, i64> = BTreeMap::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) =
                content.split_once('=').ok_or_else(|| err(line, "expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let ints = |v: &str| -> Result<Vec<u64>, FanParseError> {
                v.split_whitespace()
                    .map(|t| t.parse::<u64>().map_err(|_| err(line, format!("bad integer {t:?}"))))
                    .collect()
            };
            let single = |v: &str, max: u64| -> Result<u64, FanParseError> {
                let x = v.parse::<u64>().map_err(|_| err(line, format!("bad integer {v:?}")))?;
                if x == 0 || x > max {
                    return Err(err(line, format!("{key} must lie in 1..={max}")));
                }
                Ok(x)
            };
            match key {
                "n" if n.is_none() => n = Some(single(value, MAX_FAN_DIM as u64)? as usize),
                "denominator" if denominator.is_none() => denominator = Some(single(value, MAX_DENOMINATOR)? as u32),
                "order" if order.is_none() => order = Some(single(value, u32::MAX as u64)? as usize),
                "n" | "denominator" | "order" => return Err(err(line, format!("duplicate key {key}"))),
                "ray" => {
                    if rays.len() >= MAX_RAYS {
                        return Err(err(line, format!("more than {MAX_RAYS} rays")));
                    }
                    let v = ints(value)?;
                    if v.iter().any(|&x| x > MAX_COORDINATE) {
                        return Err(err(line, "coordinate too large".into()));
                    }
                    rays.push((line, v));
                }
                "cone" => {
                    if cones.len() >= MAX_CONES {
                        return Err(err(line, format!("more than {MAX_CONES} cones")));
                    }
                    cones.push((line, ints(value)?.into_iter().map(|x| x as usize).collect()));
                }
                "mark" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [i, a] = parts[..] else {
                        return Err(err(line, "expected `mark = ray discrepancy`".into()));
                    };
                    let i = i.parse::<usize>().map_err(|_| err(line, format!("bad ray index {i:?}")))?;
                    let a = a.parse::<i64>().map_err(|_| err(line, format!("bad discrepancy {a:?}")))?;
                    if a.unsigned_abs() > 1 << 20 {
                        return Err(err(line, "discrepancy too large".into()));
                    }
                    if marks.insert(i, a).is_some() {
                        return Err(err(line, format!("ray {i} marked twice")));
                    }
                }
                other => return Err(err(line, format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| err(last, "missing n".into()))?;
        let denominator = denominator.unwrap_or(1);
        let order = order.unwrap_or(1);
        if !(BigInt::from(denominator).pow(n as u32) % BigInt::from(order)).is_zero() {
            return Err(err(last, format!("order {order} does not divide denominator^n")));
        }
        let mut points = Vec::with_capacity(rays.len());
        for (line, v) in rays {
            if v.len() != n {
                return Err(err(line, format!("ray has {} coordinates, expected {n}", v.len())));
            }
            if v.iter().all(|&x| x == 0) {
                return Err(err(line, "zero ray".into()));
            }
            points.push(RayPoint::new(v, denominator));
        }
        let mut cone_list = Vec::with_capacity(cones.len());
        for (line, c) in cones {
            let mut sorted = c.clone();
            sorted.sort_unstable();
            if c.len() != n || sorted.windows(2).any(|w| w[0] == w[1]) || c.iter().any(|&i| i >= points.len()) {
                return Err(err(line, format!("cone must list {n} distinct ray indices below {}", points.len())));
            }
            cone_list.push(c);
        }
        if let Some(&i) = marks.keys().find(|&&i| i >= points.len()) {
            return Err(err(last, format!("mark on missing ray {i}")));
        }
        SimplicialFan::new(n, denominator, order, points, cone_list, marks).map_err(|e| err(last, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::families;

    fn motive(s: &str) -> MotiveExpr {
        s.parse().unwrap()
    }

    fn a1_fan() -> SimplicialFan {
        let g = families::sl2_cyclic(2).unwrap();
        super::super::hirzebruch_jung_fan(&g).unwrap()
    }

    #[test]
    fn orthant_strata() {
        let f = SimplicialFan::orthant(3).unwrap();
        assert!(f.is_smooth());
        let s = f.strata_classes().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[&vec![]], motive("L^3"));
    }

    #[test]
    fn a1_strata() {
        let f = a1_fan();
        assert_eq!(f.cones().len(), 2);
        let s = f.strata_classes().unwrap();
        let v = *f.marks().keys().next().unwrap();
        assert_eq!(s[&vec![]], motive("L^2 - 1"));
        assert_eq!(s[&vec![v]], motive("L + 1"));
        assert_eq!(f.total_class().unwrap(), motive("L^2 + L"));
    }

    #[test]
    fn blowup_of_the_origin() {
        for n in 2..=5 {
            let f = SimplicialFan::orthant(n).unwrap();
            let s = f.star_subdivide(&RayPoint::new(vec![1; n], 1)).unwrap();
            let fan = s.fan;
            assert_eq!(fan.marks()[&n], n as i64 - 1);
            assert_eq!(fan.cones().len(), n);
            assert!(fan.is_smooth());
            assert_eq!(fan.total_class().unwrap(), motive(&format!("L^{n} - 1 + (L^{n} - 1)/(L - 1)")));
        }
    }

    #[test]
    fn weighted_blowup_of_scalar_quotient() {
        for (a, b) in [(1usize, 2u32), (2, 2), (1, 3), (2, 3)] {
            let g = families::scalar_cyclic(a, b).unwrap();
            let orthant = SimplicialFan::orthant_of(&g).unwrap();
            assert!(!orthant.is_smooth());
            let v = RayPoint::new(vec![1; a * b as usize], b);
            let fan = orthant.star_subdivide(&v).unwrap().fan;
            assert!(fan.is_smooth());
            assert_eq!(fan.marks().values().copied().collect::<Vec<_>>(), vec![a as i64 - 1]);
        }
    }

    #[test]
    fn blowup_strata_of_c4_mod_2() {
        let g = families::cyclic(2, &[1, 1, 1, 1]).unwrap();
        let fan = SimplicialFan::orthant_of(&g).unwrap().star_subdivide(&RayPoint::new(vec![1; 4], 2)).unwrap().fan;
        let s = fan.strata_classes().unwrap();
        assert_eq!(s[&vec![]], motive("L^4 - 1"));
        assert_eq!(s[&vec![4]], motive("L^3 + L^2 + L + 1"));
    }

    #[test]
    fn subdivision_edge_cases() {
        let f = SimplicialFan::orthant(2).unwrap();
        let same = f.star_subdivide(&RayPoint::new(vec![1, 0], 1)).unwrap();
        assert!(same.new_ray.is_none() && same.warning.is_some());
        assert_eq!(same.fan, f);
        assert_eq!(f.star_subdivide(&RayPoint::new(vec![2, 2], 1)).unwrap_err(), ToricError::NotPrimitive("(2,2)/1".into()));
        assert!(matches!(f.star_subdivide(&RayPoint::new(vec![1, 1], 2)), Err(ToricError::NotInLattice(_))));
        let two = f.star_subdivide(&RayPoint::new(vec![1, 1], 1)).unwrap().fan;
        assert_eq!(two.cones().len(), 2);
        assert!(two.is_smooth());
        assert_eq!(two.cone_volume(&two.cones()[0]), rat(1, 1));
    }

    #[test]
    fn text_round_trip() {
        let f = a1_fan();
        let text = f.to_string();
        assert_eq!(text.parse::<SimplicialFan>().unwrap(), f);
        assert!("n = 2\nray = 1\n".parse::<SimplicialFan>().unwrap_err().line == 2);
        assert!("n = 2\nray = 1 0\ncone = 0 0\n".parse::<SimplicialFan>().is_err());
        assert!("n = 2\ndenominator = 2\norder = 3\n".parse::<SimplicialFan>().is_err());
    }
}
