use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// Result of contracting an edge set `S`: the contracted graph together with
/// the vertex surjection and the identification `E(G/S) = E(G) \ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub source: Graph,
    pub target: Graph,
    /// Image of each source vertex.
    pub vertex_map: Vec<usize>,
    /// Sorted, deduplicated contracted edges.
    pub contracted_edges: Vec<usize>,
    /// For each source edge, its index in `target` or `None` if contracted.
    pub edge_map: Vec<Option<usize>>,
}

impl ContractionMap {
    /// Source vertices mapping to target vertex `t`.
    pub fn fiber(&self, t: usize) -> Vec<usize> {
        (0..self.vertex_map.len())
            .filter(|&v| self.vertex_map[v] == t)
            .collect()
    }

    /// Fiber-summed push-forward of a coefficient vector.
    pub fn push_coeffs(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.target.vertex_count()];
        for (v, &c) in coeffs.iter().enumerate() {
            out[self.vertex_map[v]] += c;
        }
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so fibers are named by their first vertex
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Contracts every edge in `edges`. Fibers are the connected components of
/// the spanning subgraph `(V(G), S)`; a merged vertex carries the summed
/// weight plus the first Betti number of its fiber. Target vertices are
/// ordered by their smallest source vertex.
pub fn contract(graph: &Graph, edges: &[usize]) -> Result<ContractionMap> {
    let s: BTreeSet<usize> = edges.iter().copied().collect();
    for &e in &s {
        let (a, b) = graph.edge(e)?;
        if a == b {
            return Err(Error::LoopInContractionSet(e));
        }
    }
    let n = graph.vertex_count();
    let mut uf = UnionFind((0..n).collect());
    for &e in &s {
        let (a, b) = graph.edges()[e];
        uf.union(a, b);
    }
    let roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let mut target_of_root = vec![usize::MAX; n];
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for (v, &r) in roots.iter().enumerate() {
        if target_of_root[r] == usize::MAX {
            target_of_root[r] = fibers.len();
            fibers.push(Vec::new());
        }
        fibers[target_of_root[r]].push(v);
    }
    let vertex_map: Vec<usize> = (0..n).map(|v| target_of_root[roots[v]]).collect();

    let mut inner_edges = vec![0u64; fibers.len()];
    for &e in &s {
        inner_edges[vertex_map[graph.edges()[e].0]] += 1;
    }
    let ids: Vec<String> = fibers
        .iter()
        .map(|f| f.iter().map(|&v| graph.id(v)).collect::<Vec<_>>().join("+"))
        .collect();
    let weights: Vec<u64> = fibers
        .iter()
        .zip(&inner_edges)
        .map(|(f, &inner)| {
            let w: u64 = f.iter().map(|&v| graph.weight(v)).sum();
            // b1 of a connected fiber: |S_fiber| - |fiber| + 1
            w + inner + 1 - f.len() as u64
        })
        .collect();

    let mut target_edges = Vec::with_capacity(graph.edge_count() - s.len());
    let mut edge_map = Vec::with_capacity(graph.edge_count());
    for (i, &(a, b)) in graph.edges().iter().enumerate() {
        if s.contains(&i) {
            edge_map.push(None);
        } else {
            edge_map.push(Some(target_edges.len()));
            target_edges.push((vertex_map[a], vertex_map[b]));
        }
    }
    let target = Graph::from_parts(ids, weights, target_edges)
        .expect("contraction of a connected graph is connected");
    Ok(ContractionMap {
        source: graph.clone(),
        target,
        vertex_map,
        contracted_edges: s.into_iter().collect(),
        edge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn doubled_triangle_contract_e4() {
        let g = doubled_triangle();
        let cm = contract(&g, &[3]).unwrap();
        let t = &cm.target;
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.edges_between(0, 1), 3);
        assert_eq!(t.genus(), 2);
        assert_eq!(cm.vertex_map, vec![0, 1, 1]);
        assert_eq!(t.ids(), &["v1", "v2+v3"]);
        assert_eq!(cm.edge_map, vec![Some(0), Some(1), Some(2), None]);
    }

    #[test]
    fn parallel_edge_becomes_loop() {
        let g = binary(1);
        let cm = contract(&g, &[0]).unwrap();
        assert_eq!(cm.target.vertex_count(), 1);
        assert_eq!(cm.target.loop_count(), 1);
        assert_eq!(cm.target.weight(0), 0);
        assert_eq!(cm.target.genus(), 1);
    }

    #[test]
    fn contracting_a_cycle_adds_weight() {
        let g = cycle(3);
        let cm = contract(&g, &[0, 1, 2]).unwrap();
        assert_eq!(cm.target.vertex_count(), 1);
        assert_eq!(cm.target.weight(0), 1);
        assert_eq!(cm.target.genus(), 1);
    }

    #[test]
    fn empty_set_is_identity() {
        let g = weight_and_loop();
        let cm = contract(&g, &[]).unwrap();
        assert_eq!(cm.target, g);
        assert_eq!(cm.vertex_map, vec![0, 1]);
    }

    #[test]
    fn loops_rejected() {
        let g = weight_and_loop();
        assert_eq!(
            contract(&g, &[1]).unwrap_err(),
            Error::LoopInContractionSet(1)
        );
        assert_eq!(contract(&g, &[5]).unwrap_err(), Error::UnknownEdge(5));
    }

    #[test]
    fn weights_merge() {
        let g = Graph::from_indices(&[1, 1], &[(0, 1)]).unwrap();
        let cm = contract(&g, &[0]).unwrap();
        assert_eq!(cm.target.weights(), &[2]);
        assert_eq!(cm.push_coeffs(&[3, -1]), vec![2]);
    }
}
