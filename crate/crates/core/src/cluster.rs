//! Torus-fixed G-clusters of an abelian diagonal group: monomial ideals whose
//! quotient is the regular representation.
//!
//! The enumerator grows staircases one corner at a time, keyed by characters
//! on the generators of `G`. The verifier recomputes characters from the
//! values on every group element and shares no code with the enumerator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;

pub const DEFAULT_CLUSTER_BOUND: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("clusters need an abelian diagonal group")]
    NotAbelian,
    #[error("group order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: &'static str, got: usize },
}

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub n: usize,
    /// Monomials outside the ideal, sorted.
    pub basis: Vec<Monomial>,
    /// Minimal monomial generators of the ideal, sorted.
    pub generators: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GCluster {
    pub staircase: Staircase,
    /// Character of each basis monomial, as its values on the generators of `G`.
    pub characters: Vec<Vec<u32>>,
}

fn is_downward_closed(set: &BTreeSet<Monomial>) -> bool {
    set.iter().all(|m| {
        (0..m.len()).filter(|&i| m[i] > 0).all(|i| {
            let mut p = m.clone();
            p[i] -= 1;
            set.contains(&p)
        })
    })
}

/// Minimal monomials outside a downward-closed set.
pub fn minimal_generators(n: usize, basis: &BTreeSet<Monomial>) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    let candidates = basis.iter().flat_map(|m| {
        (0..n).map(move |i| {
            let mut c = m.clone();
            c[i] += 1;
            c
        })
    });
    for c in candidates {
        if basis.contains(&c) {
            continue;
        }
        let minimal = (0..n).filter(|&i| c[i] > 0).all(|i| {
            let mut p = c.clone();
            p[i] -= 1;
            basis.contains(&p)
        });
        if minimal {
            out.insert(c);
        }
    }
    if basis.is_empty() {
        out.insert(vec![0; n]);
    }
    out.into_iter().collect()
}

impl Staircase {
    pub fn new(n: usize, basis: impl IntoIterator<Item = Monomial>) -> Self {
        let set: BTreeSet<Monomial> = basis.into_iter().collect();
        let generators = minimal_generators(n, &set);
        Staircase { n, basis: set.into_iter().collect(), generators }
    }

    pub fn is_downward_closed(&self) -> bool {
        is_downward_closed(&self.basis.iter().cloned().collect())
    }
}

struct Enumerator<'a> {
    n: usize,
    order: usize,
    gens: Vec<(u32, &'a [u32])>,
    out: Vec<BTreeSet<Monomial>>,
}

impl Enumerator<'_> {
    fn character(&self, m: &[u32]) -> Vec<u32> {
        self.gens
            .iter()
            .map(|(r, a)| (m.iter().zip(a.iter()).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % *r as u64) as u32)
            .collect()
    }

    fn maximal(set: &BTreeSet<Monomial>, n: usize) -> Vec<Monomial> {
        set.iter()
            .filter(|m| {
                (0..n).all(|i| {
                    let mut c = (*m).clone();
                    c[i] += 1;
                    !set.contains(&c)
                })
            })
            .cloned()
            .collect()
    }

    /// Reverse search: the parent of a staircase removes its largest maximal element, so each
    /// staircase is reached once.
    fn grow(&mut self, set: &mut BTreeSet<Monomial>, used: &mut BTreeSet<Vec<u32>>) {
        if set.len() == self.order {
            self.out.push(set.clone());
            return;
        }
        let mut corners: BTreeSet<Monomial> = BTreeSet::new();
        for m in set.iter() {
            for i in 0..self.n {
                let mut c = m.clone();
                c[i] += 1;
                if set.contains(&c) {
                    continue;
                }
                let addable = (0..self.n).filter(|&j| c[j] > 0).all(|j| {
                    let mut p = c.clone();
                    p[j] -= 1;
                    set.contains(&p)
                });
                if addable {
                    corners.insert(c);
                }
            }
        }
        for c in corners {
            let ch = self.character(&c);
            if used.contains(&ch) {
                continue;
            }
            set.insert(c.clone());
            let largest = Self::maximal(set, self.n).into_iter().max();
            if largest.as_ref() == Some(&c) {
                used.insert(ch.clone());
                self.grow(set, used);
                used.remove(&ch);
            }
            set.remove(&c);
        }
    }
}

/// All torus-fixed G-clusters, sorted by basis.
pub fn enumerate_torus_fixed_clusters(group: &FiniteGroup, bound: usize) -> Result<Vec<GCluster>, ClusterError> {
    let n = group.dim();
    if !(2..=4).contains(&n) {
        return Err(ClusterError::WrongDimension { expected: "2, 3 or 4", got: n });
    }
    if !group.is_abelian_diagonal() {
        return Err(ClusterError::NotAbelian);
    }
    if group.order() > bound {
        return Err(ClusterError::TooLarge { order: group.order(), bound });
    }
    let gens: Vec<(u32, &[u32])> = group
        .generators()
        .iter()
        .map(|&g| {
            let w = group.element(g).as_weight().expect("abelian element");
            (w.order(), w.exponents())
        })
        .collect();
    let mut e = Enumerator { n, order: group.order(), gens, out: Vec::new() };
    let origin = vec![0u32; n];
    let mut set = BTreeSet::from([origin.clone()]);
    let mut used = BTreeSet::from([e.character(&origin)]);
    e.grow(&mut set, &mut used);
    let mut clusters: Vec<GCluster> = e
        .out
        .iter()
        .map(|s| {
            let staircase = Staircase::new(n, s.iter().cloned());
            let characters = staircase.basis.iter().map(|m| e.character(m)).collect();
            GCluster { staircase, characters }
        })
        .collect();
    clusters.sort_by(|a, b| a.staircase.basis.cmp(&b.staircase.basis));
    Ok(clusters)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    pub regular: bool,
    pub downward_closed: bool,
    pub size: usize,
    pub order: usize,
    /// Characters hit more than once, with the monomials hitting them.
    pub repeated: Vec<(String, Vec<Monomial>)>,
    pub missing: Vec<String>,
}

impl fmt::Display for RegularityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.regular {
            return write!(f, "regular representation");
        }
        let mut parts = Vec::new();
        if !self.downward_closed {
            parts.push("basis is not downward closed".to_string());
        }
        if self.size != self.order {
            parts.push(format!("basis has {} monomials, group order {}", self.size, self.order));
        }
        for (c, ms) in &self.repeated {
            parts.push(format!("character {c} repeated by {}", ms.iter().map(|m| monomial_text(m)).collect::<Vec<_>>().join(", ")));
        }
        for c in &self.missing {
            parts.push(format!("character {c} missing"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks that the basis monomials carry every character of `G` exactly once.
pub fn verify_regular_representation(group: &FiniteGroup, basis: &[Monomial]) -> Result<RegularityCertificate, ClusterError> {
    let weights = group.weights().map_err(|_| ClusterError::NotAbelian)?;
    let e = group.exponent() as u64;
    let scaled: Vec<Vec<u64>> = weights.iter().map(|w| w.scaled(group.exponent())).collect();
    // a character is its table of values on all of G, as exponents of ζ_e
    let values = |m: &[u32]| -> Vec<u64> {
        scaled.iter().map(|g| g.iter().zip(m).map(|(&a, &x)| a * x as u64).sum::<u64>() % e).collect()
    };
    let label = |v: &[u64]| -> String {
        let parts: Vec<String> = group
            .generators()
            .iter()
            .map(|&g| {
                let r = weights[g].order() as u64;
                (v[g] / (e / r)).to_string()
            })
            .collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(","))
        }
    };
    let mut hits: BTreeMap<Vec<u64>, Vec<Monomial>> = BTreeMap::new();
    for m in basis {
        hits.entry(values(m)).or_default().push(m.clone());
    }
    // the dual group, generated by the coordinate characters
    let n = group.dim();
    let mut dual: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0; group.order()]]);
    let mut frontier = vec![vec![0u64; group.order()]];
    while let Some(v) = frontier.pop() {
        for i in 0..n {
            let mut unit = vec![0u32; n];
            unit[i] = 1;
            let w: Vec<u64> = v.iter().zip(values(&unit)).map(|(a, b)| (a + b) % e).collect();
            if dual.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    let repeated: Vec<(String, Vec<Monomial>)> =
        hits.iter().filter(|(_, ms)| ms.len() > 1).map(|(v, ms)| (label(v), ms.clone())).collect();
    let missing: Vec<String> = dual.iter().filter(|v| !hits.contains_key(*v)).map(|v| label(v)).collect();
    let downward_closed = is_downward_closed(&basis.iter().cloned().collect());
    let regular = downward_closed && repeated.is_empty() && missing.is_empty() && basis.len() == group.order();
    Ok(RegularityCertificate { regular, downward_closed, size: basis.len(), order: group.order(), repeated, missing })
}

/// Planar image of a three-variable staircase in `Z^3 / Z·(1,1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripodProfile {
    /// Largest `k` with `x^k`, `y^k`, `z^k` in the basis.
    pub legs: [u32; 3],
    /// Image of each basis monomial `x^a y^b z^c` as `(a - c, b - c)`.
    pub planar: Vec<(i64, i64)>,
    pub injective: bool,
}

impl TripodProfile {
    /// Only one leg is nonempty.
    pub fn is_degenerate(&self) -> bool {
        self.legs.iter().filter(|&&l| l > 0).count() <= 1
    }

    pub fn size(&self) -> usize {
        self.planar.len()
    }
}

pub fn tripod_profile(c: &GCluster) -> Result<TripodProfile, ClusterError> {
    let s = &c.staircase;
    if s.n != 3 {
        return Err(ClusterError::WrongDimension { expected: "3", got: s.n });
    }
    let mut legs = [0u32; 3];
    for m in &s.basis {
        for i in 0..3 {
            if (0..3).all(|j| j == i || m[j] == 0) {
                legs[i] = legs[i].max(m[i]);
            }
        }
    }
    let planar: Vec<(i64, i64)> =
        s.basis.iter().map(|m| (m[0] as i64 - m[2] as i64, m[1] as i64 - m[2] as i64)).collect();
    let injective = planar.iter().collect::<BTreeSet<_>>().len() == planar.len();
    Ok(TripodProfile { legs, planar, injective })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorShape {
    /// `x^{a+1}`, one variable.
    Power,
    /// `y^{d+1} z^{g+1}`, two variables.
    Binomial,
    /// `xyz`.
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub shapes: Vec<(Monomial, Option<GeneratorShape>)>,
    pub xyz_in_ideal: bool,
    pub conforming: bool,
}

pub fn nakamura_generator_shape(c: &GCluster) -> Result<GeneratorReport, ClusterError> {
    let s = &c.staircase;
    if s.n != 3 {
        return Err(ClusterError::WrongDimension { expected: "3", got: s.n });
    }
    let shapes: Vec<(Monomial, Option<GeneratorShape>)> = s
        .generators
        .iter()
        .map(|g| {
            let support = g.iter().filter(|&&x| x > 0).count();
            let shape = match support {
                1 => Some(GeneratorShape::Power),
                2 => Some(GeneratorShape::Binomial),
                3 if g.iter().all(|&x| x == 1) => Some(GeneratorShape::Triple),
                _ => None,
            };
            (g.clone(), shape)
        })
        .collect();
    let count = |k: GeneratorShape| shapes.iter().filter(|(_, s)| *s == Some(k)).count();
    // at most one mixed generator per pair of variables
    let mut pairs = BTreeSet::new();
    let pairs_ok = shapes.iter().filter(|(_, s)| *s == Some(GeneratorShape::Binomial)).all(|(g, _)| {
        let pair: Vec<usize> = (0..3).filter(|&i| g[i] > 0).collect();
        pairs.insert(pair)
    });
    let xyz_in_ideal = !s.basis.contains(&vec![1, 1, 1]) && !s.basis.iter().any(|m| m.iter().all(|&x| x >= 1));
    let conforming = shapes.len() <= 7
        && shapes.iter().all(|(_, s)| s.is_some())
        && count(GeneratorShape::Power) <= 3
        && count(GeneratorShape::Triple) <= 1
        && pairs_ok;
    Ok(GeneratorReport { shapes, xyz_in_ideal, conforming })
}

pub fn monomial_text(m: &[u32]) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{}", i + 1));
            if e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Text picture of a two-variable staircase, `y` upwards.
pub fn staircase_art(s: &Staircase) -> Option<String> {
    if s.n != 2 {
        return None;
    }
    let height = s.basis.iter().map(|m| m[1]).max().unwrap_or(0);
    let width = s.basis.iter().map(|m| m[0]).max().unwrap_or(0);
    let mut out = String::new();
    for y in (0..=height).rev() {
        let row: String = (0..=width).map(|x| if s.basis.contains(&vec![x, y]) { '#' } else { '.' }).collect();
        out.push_str(row.trim_end_matches('.'));
        out.push('\n');
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    fn count(g: &FiniteGroup) -> usize {
        enumerate_torus_fixed_clusters(g, DEFAULT_CLUSTER_BOUND).unwrap().len()
    }

    #[test]
    fn a_series_clusters() {
        for r in 1..=12u32 {
            let g = families::sl2_cyclic(r).unwrap();
            let cs = enumerate_torus_fixed_clusters(&g, 60).unwrap();
            assert_eq!(cs.len(), r as usize);
            for k in 0..r {
                let want: BTreeSet<Monomial> =
                    (0..=k).map(|i| vec![i, 0]).chain((1..r - k).map(|j| vec![0, j])).collect();
                assert!(cs.iter().any(|c| c.staircase.basis.iter().cloned().collect::<BTreeSet<_>>() == want));
            }
        }
    }

    #[test]
    fn three_dimensional_counts() {
        assert_eq!(count(&families::cyclic(7, &[1, 2, 4]).unwrap()), 7);
        assert_eq!(count(&families::cyclic(3, &[1, 1, 1]).unwrap()), 3);
        assert_eq!(count(&families::diagonal(3, &[(2, vec![1, 1, 0]), (2, vec![0, 1, 1])]).unwrap()), 4);
    }

    #[test]
    fn verification_and_certificates() {
        let g = families::cyclic(3, &[1, 1, 1]).unwrap();
        for c in enumerate_torus_fixed_clusters(&g, 60).unwrap() {
            assert!(verify_regular_representation(&g, &c.staircase.basis).unwrap().regular);
        }
        let cert = verify_regular_representation(&g, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(!cert.regular);
        assert_eq!(cert.missing, vec!["2".to_string()]);
        assert!(cert.to_string().contains("character 2 missing"));
        let cert = verify_regular_representation(&g, &[vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert!(!cert.regular && cert.size == 2);
        let cert = verify_regular_representation(&g, &[vec![0, 0, 0], vec![2, 0, 0], vec![0, 0, 1]]).unwrap();
        assert!(!cert.downward_closed && !cert.regular);
    }

    #[test]
    fn tripods_and_generators() {
        let g = families::cyclic(3, &[1, 1, 1]).unwrap();
        let cs = enumerate_torus_fixed_clusters(&g, 60).unwrap();
        for c in &cs {
            let t = tripod_profile(c).unwrap();
            assert!(t.injective && t.is_degenerate());
            assert_eq!(t.size(), 3);
            assert_eq!(1 + t.legs.iter().sum::<u32>(), 3);
            let r = nakamura_generator_shape(c).unwrap();
            assert!(r.conforming && r.xyz_in_ideal);
        }
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        let cs = enumerate_torus_fixed_clusters(&g, 60).unwrap();
        let shapes: BTreeSet<Vec<(i64, i64)>> = cs.iter().map(|c| tripod_profile(c).unwrap().planar).collect();
        assert_eq!(shapes.len(), 7);
        assert!(cs.iter().all(|c| nakamura_generator_shape(c).unwrap().conforming));
        let two = enumerate_torus_fixed_clusters(&families::sl2_cyclic(3).unwrap(), 60).unwrap();
        assert!(nakamura_generator_shape(&two[0]).is_err());
    }

    #[test]
    fn bounds_and_art() {
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        assert_eq!(enumerate_torus_fixed_clusters(&g, 5), Err(ClusterError::TooLarge { order: 7, bound: 5 }));
        let s = Staircase::new(2, [vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(staircase_art(&s).unwrap(), "#\n##\n");
        assert_eq!(s.generators, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomial_text(&[2, 0, 1]), "x^2*z");
    }
}
