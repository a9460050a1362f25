//! The McKay quiver of `(G, Q)` and recognition of extended Dynkin diagrams.

use std::fmt;

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use super::{character_table, defining_character, tensor_decompose, CharacterTable, RepError};
use crate::group::FiniteGroup;

/// Irreducibles as nodes; `adjacency[i][j]` is the multiplicity of `V_j` in `V_i ⊗ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McKayQuiver {
    pub labels: Vec<String>,
    pub degrees: Vec<u64>,
    pub adjacency: Vec<Vec<u64>>,
}

impl McKayQuiver {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| (0..k).all(|j| self.adjacency[i][j] == self.adjacency[j][i]))
    }

    /// Undirected multigraph view, available when the adjacency is symmetric.
    pub fn undirected(&self) -> Option<UnGraph<u64, u64>> {
        if !self.is_symmetric() {
            return None;
        }
        Some(weighted_graph(&self.adjacency))
    }

    /// DOT text. With `parallel` set, multiplicities become parallel edges; otherwise a `label` attribute.
    pub fn to_dot(&self, parallel: bool) -> String {
        let symmetric = self.is_symmetric();
        let (kw, arrow) = if symmetric { ("graph", "--") } else { ("digraph", "->") };
        let mut out = format!("{kw} mckay {{\n");
        for (i, (label, d)) in self.labels.iter().zip(&self.degrees).enumerate() {
            out.push_str(&format!("  n{i} [label=\"{label}:{d}\"];\n"));
        }
        let k = self.len();
        for i in 0..k {
            for j in 0..k {
                let a = self.adjacency[i][j];
                if a == 0 || (symmetric && j < i) {
                    continue;
                }
                if parallel {
                    for _ in 0..a {
                        out.push_str(&format!("  n{i} {arrow} n{j};\n"));
                    }
                } else {
                    out.push_str(&format!("  n{i} {arrow} n{j} [label=\"{a}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn mckay_quiver(group: &FiniteGroup) -> Result<(McKayQuiver, CharacterTable), RepError> {
    let table = character_table(group)?;
    let quiver = quiver_from_table(group, &table)?;
    Ok((quiver, table))
}

pub fn quiver_from_table(group: &FiniteGroup, table: &CharacterTable) -> Result<McKayQuiver, RepError> {
    let q = defining_character(group, table.classes());
    let adjacency = table
        .rows()
        .iter()
        .map(|row| tensor_decompose(row, &q, table))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(McKayQuiver {
        labels: (0..table.len()).map(|i| format!("chi{i}")).collect(),
        degrees: table.degrees().to_vec(),
        adjacency,
    })
}

/// Extended (affine) Dynkin types, or anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
    Other,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(m) => write!(f, "A~{m}"),
            DynkinType::D(m) => write!(f, "D~{m}"),
            DynkinType::E(m) => write!(f, "E~{m}"),
            DynkinType::Other => f.write_str("other"),
        }
    }
}

fn weighted_graph(adj: &[Vec<u64>]) -> UnGraph<u64, u64> {
    let k = adj.len();
    let mut g = UnGraph::<u64, u64>::with_capacity(k, k);
    let nodes: Vec<_> = (0..k).map(|_| g.add_node(0)).collect();
    for i in 0..k {
        for j in i..k {
            if adj[i][j] > 0 {
                g.add_edge(nodes[i], nodes[j], adj[i][j]);
            }
        }
    }
    g
}

fn from_edges(k: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<u64>> {
    let mut adj = vec![vec![0u64; k]; k];
    for &(a, b, w) in edges {
        adj[a][b] += w;
        adj[b][a] += w;
    }
    adj
}

fn path_edges(nodes: &[usize]) -> Vec<(usize, usize, u64)> {
    nodes.windows(2).map(|w| (w[0], w[1], 1)).collect()
}

/// Adjacency of the extended diagram of the given type; `None` when the type does not exist.
pub fn extended_template(t: DynkinType) -> Option<Vec<Vec<u64>>> {
    match t {
        DynkinType::A(1) => Some(from_edges(2, &[(0, 1, 2)])),
        DynkinType::A(m) if m >= 2 => {
            let mut e = path_edges(&(0..=m).collect::<Vec<_>>());
            e.push((m, 0, 1));
            Some(from_edges(m + 1, &e))
        }
        DynkinType::D(m) if m >= 4 => {
            // chain 0..m-2 with two extra leaves at each end
            let mut e = path_edges(&(0..=m - 2).collect::<Vec<_>>());
            e.push((m - 1, 1, 1));
            e.push((m, m - 3, 1));
            Some(from_edges(m + 1, &e))
        }
        DynkinType::E(6) => Some(from_edges(7, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1), (5, 6, 1)])),
        DynkinType::E(7) => Some(from_edges(8, &{
            let mut e = path_edges(&(0..7).collect::<Vec<_>>());
            e.push((3, 7, 1));
            e
        })),
        DynkinType::E(8) => Some(from_edges(9, &{
            let mut e = path_edges(&(0..8).collect::<Vec<_>>());
            e.push((5, 8, 1));
            e
        })),
        _ => None,
    }
}

/// Adjacency of the finite Dynkin diagram of the given type.
pub fn finite_template(t: DynkinType) -> Option<Vec<Vec<u64>>> {
    match t {
        DynkinType::A(m) if m >= 1 => Some(from_edges(m, &path_edges(&(0..m).collect::<Vec<_>>()))),
        DynkinType::D(m) if m >= 4 => {
            let mut e = path_edges(&(0..m - 1).collect::<Vec<_>>());
            e.push((m - 3, m - 1, 1));
            Some(from_edges(m, &e))
        }
        DynkinType::E(m @ 6..=8) => {
            let mut e = path_edges(&(0..m - 1).collect::<Vec<_>>());
            e.push((2, m - 1, 1));
            Some(from_edges(m, &e))
        }
        _ => None,
    }
}

fn same_graph(a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    a.len() == b.len() && is_isomorphic_matching(&weighted_graph(a), &weighted_graph(b), |_, _| true, |x, y| x == y)
}

fn zero_diagonal_symmetric(adj: &[Vec<u64>]) -> bool {
    let k = adj.len();
    (0..k).all(|i| adj[i][i] == 0 && (0..k).all(|j| adj[i][j] == adj[j][i]))
}

/// Matches the quiver against the extended Dynkin diagrams with the same node count.
pub fn dynkin_recognize(q: &McKayQuiver) -> DynkinType {
    recognize_adjacency(&q.adjacency, 2, extended_template, |k| {
        vec![DynkinType::A(k - 1), DynkinType::D(k - 1), DynkinType::E(k - 1)]
    })
}

/// Matches a graph against the finite Dynkin diagrams with the same node count.
pub fn dynkin_recognize_finite(adj: &[Vec<u64>]) -> DynkinType {
    recognize_adjacency(adj, 1, finite_template, |k| vec![DynkinType::A(k), DynkinType::D(k), DynkinType::E(k)])
}

fn recognize_adjacency(
    adj: &[Vec<u64>],
    min_nodes: usize,
    template: fn(DynkinType) -> Option<Vec<Vec<u64>>>,
    candidates: impl Fn(usize) -> Vec<DynkinType>,
) -> DynkinType {
    let k = adj.len();
    if k < min_nodes || !zero_diagonal_symmetric(adj) {
        return DynkinType::Other;
    }
    candidates(k)
        .into_iter()
        .find(|&t| template(t).is_some_and(|tpl| same_graph(adj, &tpl)))
        .unwrap_or(DynkinType::Other)
}

/// Generalized Cartan matrix `2I - A` of a symmetric adjacency.
pub fn cartan_matrix(adj: &[Vec<u64>]) -> Vec<Vec<i64>> {
    let k = adj.len();
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { 2 - adj[i][j] as i64 } else { -(adj[i][j] as i64) }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_have_expected_shapes() {
        for m in 1..=8 {
            let a = extended_template(DynkinType::A(m)).unwrap();
            assert_eq!(a.len(), m + 1);
            assert!(a.iter().all(|r| r.iter().sum::<u64>() == 2));
        }
        for m in 4..=8 {
            let d = extended_template(DynkinType::D(m)).unwrap();
            let edges: u64 = d.iter().flatten().sum::<u64>() / 2;
            assert_eq!(edges, m as u64);
            let leaves = d.iter().filter(|r| r.iter().sum::<u64>() == 1).count();
            assert_eq!(leaves, 4);
        }
        for m in 6..=8 {
            let e = extended_template(DynkinType::E(m)).unwrap();
            assert_eq!(e.len(), m + 1);
            assert_eq!(e.iter().filter(|r| r.iter().sum::<u64>() == 3).count(), 1);
        }
    }

    #[test]
    fn finite_diagrams_are_positive_definite_by_determinant() {
        // det of the Cartan matrix: A_m -> m+1, D_m -> 4, E_m -> 9-m
        fn det(mut a: Vec<Vec<i64>>) -> i64 {
            // fraction-free Bareiss elimination
            let n = a.len();
            let mut sign = 1;
            let mut prev = 1;
            for c in 0..n {
                if a[c][c] == 0 {
                    let p = (c + 1..n).find(|&r| a[r][c] != 0).unwrap();
                    a.swap(c, p);
                    sign = -sign;
                }
                for r in c + 1..n {
                    for j in c + 1..n {
                        a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
                    }
                }
                prev = a[c][c];
            }
            sign * a[n - 1][n - 1]
        }
        for m in 1..=7 {
            assert_eq!(det(cartan_matrix(&finite_template(DynkinType::A(m)).unwrap())), m as i64 + 1);
        }
        for m in 4..=7 {
            assert_eq!(det(cartan_matrix(&finite_template(DynkinType::D(m)).unwrap())), 4);
        }
        for m in 6..=8 {
            assert_eq!(det(cartan_matrix(&finite_template(DynkinType::E(m)).unwrap())), 9 - m as i64);
        }
    }

    #[test]
    fn recognition_distinguishes_types() {
        let d4 = extended_template(DynkinType::D(4)).unwrap();
        let q = McKayQuiver { labels: vec![String::new(); 5], degrees: vec![1; 5], adjacency: d4 };
        assert_eq!(dynkin_recognize(&q), DynkinType::D(4));
        let a4 = extended_template(DynkinType::A(4)).unwrap();
        let q = McKayQuiver { labels: vec![String::new(); 5], degrees: vec![1; 5], adjacency: a4 };
        assert_eq!(dynkin_recognize(&q), DynkinType::A(4));
        assert_eq!(DynkinType::D(6).to_string(), "D~6");
    }

    fn sl2_checks(group: &FiniteGroup, expected: DynkinType) {
        let (q, _) = mckay_quiver(group).unwrap();
        assert!(q.is_symmetric());
        assert_eq!(dynkin_recognize(&q), expected);
        // removing the trivial node leaves the finite diagram
        let reduced: Vec<Vec<u64>> = q.adjacency[1..].iter().map(|r| r[1..].to_vec()).collect();
        let finite = expected;
        assert_eq!(dynkin_recognize_finite(&reduced), finite);
    }

    #[test]
    fn sl2_quivers() {
        use crate::group::families;
        for n in 2..=5u32 {
            sl2_checks(&families::binary_dihedral(n).unwrap(), DynkinType::D(n as usize + 2));
        }
        for r in 2..=8u32 {
            sl2_checks(&families::sl2_cyclic(r).unwrap(), DynkinType::A(r as usize - 1));
        }
        let (q, _) = mckay_quiver(&families::sl2_cyclic(2).unwrap()).unwrap();
        assert_eq!(q.adjacency, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn degree_balance_and_sl3_label() {
        use crate::group::families;
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        let (q, _) = mckay_quiver(&g).unwrap();
        assert!(!q.is_symmetric());
        assert_eq!(dynkin_recognize(&q), DynkinType::Other);
        for g in [g, families::binary_dihedral(3).unwrap()] {
            let (q, _) = mckay_quiver(&g).unwrap();
            let n = g.dim() as u64;
            for i in 0..q.len() {
                let s: u64 = (0..q.len()).map(|j| q.adjacency[i][j] * q.degrees[j]).sum();
                assert_eq!(s, n * q.degrees[i]);
            }
        }
        let dot = mckay_quiver(&families::sl2_cyclic(2).unwrap()).unwrap().0.to_dot(true);
        assert_eq!(dot.matches("n0 -- n1").count(), 2);
    }
}
