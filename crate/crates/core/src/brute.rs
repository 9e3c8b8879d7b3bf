//! Brute-force reference routines used to cross-check the main algorithms.
//!
//! Nothing here shares code with the determinant, Smith form, lattice or
//! burning routines; each answer comes from direct enumeration.

use std::collections::VecDeque;

use crate::graph::Graph;

fn forms_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn count_trees(n: usize, edges: &[(usize, usize)]) -> u64 {
    let k = n - 1;
    let m = edges.len();
    if k == 0 {
        return 1;
    }
    if m < k {
        return 0;
    }
    // iterate over k-subsets of edge indices
    let mut idx: Vec<usize> = (0..k).collect();
    let mut count = 0;
    loop {
        let chosen: Vec<(usize, usize)> = idx.iter().map(|&i| edges[i]).collect();
        if forms_spanning_tree(n, &chosen) {
            count += 1;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn non_loop_edges(graph: &Graph, skip: Option<usize>) -> Vec<(usize, usize)> {
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, &(a, b))| a != b && Some(i) != skip)
        .map(|(_, &e)| e)
        .collect()
}

/// Number of spanning trees by enumerating `(|V|-1)`-subsets of edges.
pub fn spanning_tree_count(graph: &Graph) -> u64 {
    count_trees(graph.vertex_count(), &non_loop_edges(graph, None))
}

/// Number of spanning trees that do not use edge `e`.
pub fn spanning_trees_avoiding(graph: &Graph, e: usize) -> u64 {
    count_trees(graph.vertex_count(), &non_loop_edges(graph, Some(e)))
}

/// Chip-firing closure of the zero divisor.
///
/// Degree-zero divisors are identified with `Z^{n-1}` by dropping vertex 0.
/// Since `c · Z^{n-1}` lies inside the principal lattice (`c` the spanning
/// tree count), principal divisors form a subgroup of `(Z/c)^{n-1}`; a BFS
/// from zero with the moves "fire v" and "borrow at v" visits exactly that
/// subgroup.
pub struct FiringClosure {
    modulus: i64,
    dims: usize,
    reachable: Vec<bool>,
}

impl FiringClosure {
    /// Returns `None` when the state space would exceed `max_states`.
    pub fn new(graph: &Graph, max_states: usize) -> Option<FiringClosure> {
        let n = graph.vertex_count();
        let modulus = spanning_tree_count(graph) as i64;
        let dims = n - 1;
        let states = (modulus as usize).checked_pow(dims as u32)?;
        if states > max_states {
            return None;
        }
        let moves: Vec<Vec<i64>> = (1..n)
            .flat_map(|v| {
                // firing v adds column v of the intersection matrix
                let fire: Vec<i64> = (1..n).map(|w| graph.intersection_number(w, v)).collect();
                let borrow: Vec<i64> = fire.iter().map(|x| -x).collect();
                [fire, borrow]
            })
            .collect();
        let mut closure = FiringClosure {
            modulus,
            dims,
            reachable: vec![false; states.max(1)],
        };
        let start = vec![0i64; dims];
        let origin = closure.encode(&start);
        closure.reachable[origin] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            for mv in &moves {
                let next: Vec<i64> = state
                    .iter()
                    .zip(mv)
                    .map(|(a, b)| (a + b).rem_euclid(modulus))
                    .collect();
                let code = closure.encode(&next);
                if !closure.reachable[code] {
                    closure.reachable[code] = true;
                    queue.push_back(next);
                }
            }
        }
        Some(closure)
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter().fold(0usize, |acc, &x| {
            acc * self.modulus as usize + x.rem_euclid(self.modulus) as usize
        })
    }

    /// Whether `d1 - d2` is reachable from zero by firing moves.
    pub fn equivalent(&self, d1: &[i64], d2: &[i64]) -> bool {
        let degree: i64 = d1.iter().sum::<i64>() - d2.iter().sum::<i64>();
        if degree != 0 {
            return false;
        }
        let diff: Vec<i64> = (1..=self.dims).map(|i| d1[i] - d2[i]).collect();
        self.reachable[self.encode(&diff)]
    }

    /// Number of principal residues, `c^{n-2}` when the closure is correct.
    pub fn reachable_count(&self) -> usize {
        self.reachable.iter().filter(|&&r| r).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn tree_counts() {
        assert_eq!(spanning_tree_count(&binary(2)), 3);
        assert_eq!(spanning_tree_count(&cycle(5)), 5);
        assert_eq!(spanning_tree_count(&doubled_triangle()), 5);
        assert_eq!(spanning_tree_count(&path(4)), 1);
        assert_eq!(spanning_tree_count(&single_vertex(1, 2)), 1);
        // doubled_triangle minus e4: trees avoiding e4 are {e1,e3},{e2,e3}
        assert_eq!(spanning_trees_avoiding(&doubled_triangle(), 3), 2);
    }

    #[test]
    fn closure_examples() {
        let c = cycle(3);
        let fc = FiringClosure::new(&c, 1 << 20).unwrap();
        assert_eq!(fc.reachable_count(), 3);
        assert!(!fc.equivalent(&[1, 0, 0], &[0, 1, 0]));
        assert!(fc.equivalent(&[0, 2, 0], &[1, 0, 1]));
        let g = doubled_triangle();
        let fc = FiringClosure::new(&g, 1 << 20).unwrap();
        assert!(fc.equivalent(&[-2, 3, -1], &[0, 0, 0]));
        assert!(!fc.equivalent(&[1, -1, 1], &[1, 0, 0]));
        assert!(FiringClosure::new(&cycle(9), 100).is_none());
    }
}
