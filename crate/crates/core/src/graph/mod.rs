//! Finite connected vertex-weighted multigraphs with loops.

mod bullet;
mod contraction;

pub use bullet::{bullet_model, BulletModel};
pub use contraction::{contract, ContractionMap};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg;

/// Connected multigraph with a nonnegative weight on every vertex.
///
/// Vertices are addressed by their position in construction order; string ids
/// are kept for I/O. Edges are addressed by position in the edge list. The
/// graph is immutable and cheap to clone.
#[derive(Clone)]
pub struct Graph(Arc<GraphInner>);

struct GraphInner {
    ids: Vec<String>,
    weights: Vec<u64>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    /// `(v·w)` for `v != w`; diagonal left at zero.
    multiplicity: Vec<Vec<i64>>,
    loops: Vec<usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ids == other.0.ids
                && self.0.weights == other.0.weights
                && self.0.edges == other.0.edges)
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field(
                "vertices",
                &self.0.ids.iter().zip(&self.0.weights).collect::<Vec<_>>(),
            )
            .field("edges", &self.0.edges)
            .finish()
    }
}

impl Graph {
    /// Builds and validates a graph from `(id, weight)` pairs and an edge
    /// multiset given by endpoint ids.
    pub fn build<S: AsRef<str>>(vertices: &[(S, i64)], edges: &[(S, S)]) -> Result<Graph> {
        let mut index = HashMap::new();
        let mut ids = Vec::with_capacity(vertices.len());
        let mut weights = Vec::with_capacity(vertices.len());
        for (id, w) in vertices {
            let id = id.as_ref();
            if *w < 0 {
                return Err(Error::NegativeWeight(id.to_string(), *w));
            }
            if index.insert(id.to_string(), ids.len()).is_some() {
                return Err(Error::DuplicateVertexId(id.to_string()));
            }
            ids.push(id.to_string());
            weights.push(*w as u64);
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownVertexId(id.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(ids, weights, edges)
    }

    /// Builds a graph on indices `0..weights.len()` with ids `v1, v2, ...`.
    pub fn from_indices(weights: &[u64], edges: &[(usize, usize)]) -> Result<Graph> {
        let ids = (1..=weights.len()).map(|i| format!("v{i}")).collect();
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= weights.len() {
                    return Err(Error::UnknownVertexId(x.to_string()));
                }
            }
        }
        Self::from_parts(ids, weights.to_vec(), edges.to_vec())
    }

    pub(crate) fn from_parts(
        ids: Vec<String>,
        weights: Vec<u64>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Graph> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let index = ids
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut multiplicity = vec![vec![0i64; n]; n];
        let mut loops = vec![0usize; n];
        for &(a, b) in &edges {
            if a == b {
                loops[a] += 1;
            } else {
                multiplicity[a][b] += 1;
                multiplicity[b][a] += 1;
            }
        }
        let graph = Graph(Arc::new(GraphInner {
            ids,
            weights,
            edges,
            index,
            multiplicity,
            loops,
        }));
        if !graph.is_connected_without(None) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.0.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.0.ids[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.0.weights
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.0.weights[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.0.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.0.edges.get(e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.0
            .index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertexId(id.to_string()))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertexId(v.to_string()))
        }
    }

    /// Number of non-loop edges joining `v` and `w` (zero when `v == w`).
    pub fn edges_between(&self, v: usize, w: usize) -> i64 {
        self.0.multiplicity[v][w]
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.0.loops[v]
    }

    pub fn loop_count(&self) -> usize {
        self.0.loops.iter().sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.0.weights.iter().sum()
    }

    pub fn is_weightless(&self) -> bool {
        self.0.weights.iter().all(|&w| w == 0)
    }

    pub fn is_loopless(&self) -> bool {
        self.loop_count() == 0
    }

    /// `|E| - |V| + 1 + total weight`.
    pub fn genus(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + 1 + self.total_weight() as i64
    }

    /// Intersection number `(v·w)`, with `(v·v) = -Σ_{w≠v} (v·w)`.
    pub fn intersection_number(&self, v: usize, w: usize) -> i64 {
        if v == w {
            -self.0.multiplicity[v].iter().sum::<i64>()
        } else {
            self.0.multiplicity[v][w]
        }
    }

    /// Bilinear extension `(Z·W) = Σ_{z∈Z, w∈W} (z·w)`.
    pub fn intersection(&self, z: &[usize], w: &[usize]) -> Result<i64> {
        for &v in z.iter().chain(w) {
            self.check_vertex(v)?;
        }
        Ok(z.iter()
            .flat_map(|&a| w.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.intersection_number(a, b))
            .sum())
    }

    /// `(Z·Z^c)`: the number of edges leaving `z`.
    pub fn cut_size(&self, z: &[usize]) -> i64 {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in z {
            inside[v] = true;
        }
        let mut total = 0;
        for (a, row) in self.0.multiplicity.iter().enumerate() {
            if inside[a] {
                total += (0..n).filter(|&b| !inside[b]).map(|b| row[b]).sum::<i64>();
            }
        }
        total
    }

    /// Non-loop edges at `v` plus two per loop.
    pub fn valency(&self, v: usize) -> Result<i64> {
        self.check_vertex(v)?;
        Ok(self.0.multiplicity[v].iter().sum::<i64>() + 2 * self.0.loops[v] as i64)
    }

    /// Whether deleting edge `e` disconnects the graph. Loops are never bridges.
    pub fn is_bridge(&self, e: usize) -> Result<bool> {
        let (a, b) = self.edge(e)?;
        if a == b {
            return Ok(false);
        }
        Ok(!self.is_connected_without(Some(e)))
    }

    fn is_connected_without(&self, skip: Option<usize>) -> bool {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in self.0.edges.iter().enumerate() {
            if Some(i) != skip && a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Laplacian `L = diag(deg) - A` of the underlying loopless multigraph.
    /// Column `v` of `-L` is the principal divisor `t_v`.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| (0..n).map(|j| -self.intersection_number(i, j)).collect())
            .collect()
    }

    /// Laplacian with the row and column of `q` deleted.
    pub fn reduced_laplacian(&self, q: usize) -> Vec<Vec<i64>> {
        let full = self.laplacian();
        full.into_iter()
            .enumerate()
            .filter(|&(i, _)| i != q)
            .map(|(_, row)| {
                row.into_iter()
                    .enumerate()
                    .filter(|&(j, _)| j != q)
                    .map(|(_, x)| x)
                    .collect()
            })
            .collect()
    }

    /// Number of spanning trees, as the determinant of a reduced Laplacian.
    pub fn complexity(&self) -> BigInt {
        linalg::determinant(&linalg::from_i64(&self.reduced_laplacian(0)))
    }

    /// Copy of this graph with a different weight function.
    pub fn with_weights(&self, weights: &[u64]) -> Result<Graph> {
        if weights.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count(),
                found: weights.len(),
            });
        }
        Self::from_parts(self.0.ids.clone(), weights.to_vec(), self.0.edges.clone())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    /// Three weight-0 vertices; e1, e2 join v1-v2, e3 joins v1-v3, e4 joins v2-v3.
    pub fn doubled_triangle() -> Graph {
        Graph::from_indices(&[0, 0, 0], &[(0, 1), (0, 1), (0, 2), (1, 2)]).unwrap()
    }

    pub fn binary(genus: usize) -> Graph {
        Graph::from_indices(&[0, 0], &vec![(0, 1); genus + 1]).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_indices(&vec![0; n], &edges).unwrap()
    }

    /// `v` of weight 1 joined to `w` of weight 0, loop at `w`.
    pub fn weight_and_loop() -> Graph {
        Graph::build(&[("v", 1), ("w", 0)], &[("v", "w"), ("w", "w")]).unwrap()
    }

    pub fn single_vertex(weight: u64, loops: usize) -> Graph {
        Graph::from_indices(&[weight], &vec![(0, 0); loops]).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_indices(&vec![0; n], &edges).unwrap()
    }
}
