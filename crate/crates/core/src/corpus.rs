//! Exhaustive enumeration of small connected multigraphs up to isomorphism.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CORPUS_VERTICES: usize = 6;
pub const MAX_CORPUS_EDGES: usize = 8;
pub const MAX_CORPUS_WEIGHT: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Weighted variants with total weight up to this bound are included.
    pub max_total_weight: u64,
    pub loops: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_vertices: 4,
            max_edges: 6,
            max_total_weight: 2,
            loops: true,
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            (
                "max_vertices",
                self.max_vertices as u64,
                MAX_CORPUS_VERTICES as u64,
            ),
            ("max_edges", self.max_edges as u64, MAX_CORPUS_EDGES as u64),
            ("max_total_weight", self.max_total_weight, MAX_CORPUS_WEIGHT),
        ];
        for (name, value, limit) in checks {
            if value > limit {
                return Err(Error::CorpusCapExceeded { name, value, limit });
            }
        }
        Ok(())
    }
}

type Key = (Vec<u64>, Vec<(usize, usize)>);

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(weights: &[u64], edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Key {
    perms
        .iter()
        .map(|p| {
            let mut w = vec![0; weights.len()];
            for (v, &x) in weights.iter().enumerate() {
                w[p[v]] = x;
            }
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a], p[b]);
                    if x <= y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .collect();
            e.sort_unstable();
            (w, e)
        })
        .min()
        .expect("at least one permutation")
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut components = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

fn multisets(slots: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(
        start: usize,
        slots: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..slots {
            cur.push(s);
            rec(s, slots, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, slots, size, &mut Vec::new(), &mut out);
    out
}

fn weight_vectors(n: usize, max_total: u64) -> Vec<Vec<u64>> {
    fn rec(i: usize, n: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for w in 0..=left {
            cur.push(w);
            rec(i + 1, n, left - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, max_total, &mut Vec::new(), &mut out);
    out
}

/// All connected multigraphs within `spec`, one per isomorphism class of
/// weighted graph, ordered by (vertices, edges, total weight, canonical form).
/// Vertex ids are `v1, v2, ...`.
pub fn enumerate(spec: &CorpusSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    let mut keys: BTreeSet<(usize, usize, u64, Key)> = BTreeSet::new();
    for n in 1..=spec.max_vertices {
        let perms = permutations(n);
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .filter(|&(a, b)| spec.loops || a != b)
            .collect();
        let weightings = weight_vectors(n, spec.max_total_weight);
        for m in (n - 1)..=spec.max_edges {
            for choice in multisets(slots.len(), m) {
                let edges: Vec<(usize, usize)> = choice.iter().map(|&s| slots[s]).collect();
                if !connected(n, &edges) {
                    continue;
                }
                for w in &weightings {
                    let key = canonical(w, &edges, &perms);
                    keys.insert((n, m, w.iter().sum(), key));
                }
            }
        }
    }
    keys.into_iter()
        .map(|(_, _, _, (w, e))| Graph::from_indices(&w, &e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(v: usize, e: usize, w: u64, loops: bool) -> usize {
        enumerate(&CorpusSpec {
            max_vertices: v,
            max_edges: e,
            max_total_weight: w,
            loops,
        })
        .unwrap()
        .len()
    }

    #[test]
    fn known_counts() {
        // loopless connected multigraphs on 3 vertices with exactly 3 edges:
        // triangle, and path with one doubled edge
        let three = enumerate(&CorpusSpec {
            max_vertices: 3,
            max_edges: 3,
            max_total_weight: 0,
            loops: false,
        })
        .unwrap()
        .into_iter()
        .filter(|g| g.vertex_count() == 3 && g.edge_count() == 3)
        .count();
        assert_eq!(three, 2);
        // single vertex with up to 3 loops
        assert_eq!(count(1, 3, 0, true), 4);
        // simple connected graphs on 4 vertices number 6; multigraphs add more
        assert!(count(4, 6, 0, false) > 6);
    }

    #[test]
    fn weighted_variants_are_distinct_up_to_symmetry() {
        // two vertices one edge: weights (0,0),(0,1),(1,1),(0,2) up to swap; plus single vertex weights 0..=2
        let graphs = enumerate(&CorpusSpec {
            max_vertices: 2,
            max_edges: 1,
            max_total_weight: 2,
            loops: false,
        })
        .unwrap();
        assert_eq!(graphs.len(), 3 + 4);
    }

    #[test]
    fn caps_enforced() {
        let spec = CorpusSpec {
            max_vertices: 9,
            ..CorpusSpec::default()
        };
        assert!(matches!(
            enumerate(&spec),
            Err(Error::CorpusCapExceeded { .. })
        ));
    }

    #[test]
    fn default_corpus_is_connected_and_bounded() {
        let graphs = enumerate(&CorpusSpec::default()).unwrap();
        for g in &graphs {
            assert!(g.vertex_count() <= 4 && g.edge_count() <= 6 && g.total_weight() <= 2);
        }
        assert!(graphs.len() > 100);
    }
}
