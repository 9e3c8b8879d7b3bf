//! Linear equivalence, q-reduced divisors and the Picard group.
//!
//! Loops and weights do not enter the intersection product, so everything
//! here works on the underlying loopless multigraph of any [`Graph`].

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg;

/// Default guardrail on the number of classes `enumerate_classes` may return.
pub const DEFAULT_CLASS_CAP: u64 = 1_000_000;

/// Precomputed chip-firing data for computing `q`-reduced forms.
#[derive(Debug, Clone)]
pub struct Reducer {
    q: usize,
    neighbors: Vec<Vec<(usize, i64)>>,
    /// BFS layers from `q`; `layers[0] == [q]`.
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl Reducer {
    pub fn new(graph: &Graph, q: usize) -> Result<Reducer> {
        graph.check_vertex(q)?;
        let n = graph.vertex_count();
        let neighbors: Vec<Vec<(usize, i64)>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| w != v && graph.edges_between(v, w) > 0)
                    .map(|w| (w, graph.edges_between(v, w)))
                    .collect()
            })
            .collect();
        let mut layer_of = vec![usize::MAX; n];
        let mut layers = vec![vec![q]];
        layer_of[q] = 0;
        loop {
            let k = layers.len() - 1;
            let mut next = Vec::new();
            for &a in &layers[k] {
                for &(b, _) in &neighbors[a] {
                    if layer_of[b] == usize::MAX {
                        layer_of[b] = k + 1;
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        Ok(Reducer {
            q,
            neighbors,
            layers,
            layer_of,
        })
    }

    pub fn basepoint(&self) -> usize {
        self.q
    }

    /// Replaces `d` by the unique `q`-reduced divisor equivalent to it.
    pub fn reduce_in_place(&self, d: &mut [i64]) {
        self.make_nonnegative_off_q(d);
        self.burn_and_fire(d);
    }

    pub fn reduce(&self, d: &[i64]) -> Vec<i64> {
        let mut out = d.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    /// Firing the ball `W_k` of radius `k` around `q` moves chips from layer
    /// `k` to layer `k+1` only. Fixing the layers from the outside in means
    /// each step only disturbs the layer fixed next.
    fn make_nonnegative_off_q(&self, d: &mut [i64]) {
        for k in (0..self.layers.len().saturating_sub(1)).rev() {
            let mut times = 0i64;
            for &v in &self.layers[k + 1] {
                if d[v] < 0 {
                    let gain: i64 = self.neighbors[v]
                        .iter()
                        .filter(|&&(w, _)| self.layer_of[w] == k)
                        .map(|&(_, m)| m)
                        .sum();
                    times = times.max((-d[v] + gain - 1) / gain);
                }
            }
            if times == 0 {
                continue;
            }
            for &a in &self.layers[k] {
                for &(b, m) in &self.neighbors[a] {
                    if self.layer_of[b] == k + 1 {
                        d[a] -= times * m;
                        d[b] += times * m;
                    }
                }
            }
        }
    }

    /// Dhar's burning loop: burn from `q`; while some vertices survive, fire
    /// the surviving set (as many times as stays legal).
    fn burn_and_fire(&self, d: &mut [i64]) {
        let n = d.len();
        let mut burnt = vec![false; n];
        let mut to_burnt = vec![0i64; n];
        let mut stack = Vec::with_capacity(n);
        loop {
            burnt.iter_mut().for_each(|b| *b = false);
            to_burnt.iter_mut().for_each(|c| *c = 0);
            burnt[self.q] = true;
            stack.push(self.q);
            let mut burnt_count = 1;
            while let Some(u) = stack.pop() {
                for &(w, m) in &self.neighbors[u] {
                    if !burnt[w] {
                        to_burnt[w] += m;
                        if d[w] < to_burnt[w] {
                            burnt[w] = true;
                            burnt_count += 1;
                            stack.push(w);
                        }
                    }
                }
            }
            if burnt_count == n {
                return;
            }
            // Unburnt vertices satisfy d(v) >= edges into the burnt set.
            let times = (0..n)
                .filter(|&v| !burnt[v] && to_burnt[v] > 0)
                .map(|v| d[v] / to_burnt[v])
                .min()
                .expect("connected graph: some survivor borders the fire");
            debug_assert!(times >= 1);
            for v in 0..n {
                if !burnt[v] {
                    d[v] -= times * to_burnt[v];
                } else {
                    let into: i64 = self.neighbors[v]
                        .iter()
                        .filter(|&&(w, _)| !burnt[w])
                        .map(|&(_, m)| m)
                        .sum();
                    d[v] += times * into;
                }
            }
        }
    }

    /// Whether `d` is `q`-reduced: nonnegative off `q` and fully burnt by Dhar.
    pub fn is_reduced(&self, d: &[i64]) -> bool {
        if (0..d.len()).any(|v| v != self.q && d[v] < 0) {
            return false;
        }
        let mut copy = d.to_vec();
        self.burn_and_fire(&mut copy);
        copy == d
    }
}

/// A `q`-reduced divisor: the canonical representative of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDivisor {
    pub base: Divisor,
    pub basepoint: usize,
}

impl ReducedDivisor {
    /// A class contains an effective divisor iff its reduced form is
    /// nonnegative at the basepoint.
    pub fn is_class_effective(&self) -> bool {
        self.base[self.basepoint] >= 0
    }
}

pub fn q_reduce(d: &Divisor, q: usize) -> Result<ReducedDivisor> {
    let reducer = Reducer::new(d.graph(), q)?;
    let coeffs = reducer.reduce(d.coeffs());
    Ok(ReducedDivisor {
        base: Divisor::new(d.graph(), coeffs)?,
        basepoint: q,
    })
}

/// The lattice `Prin(G)` inside `Div^0(G)`, represented through the adjugate
/// of the reduced Laplacian at vertex 0: a degree-zero `D` is principal iff
/// `adj(L_0) · D' ≡ 0 (mod det L_0)` where `D'` drops coordinate 0.
#[derive(Debug, Clone)]
pub struct PrincipalLattice {
    graph: Graph,
    adjugate: Vec<Vec<BigInt>>,
    determinant: BigInt,
}

impl PrincipalLattice {
    pub fn new(graph: &Graph) -> PrincipalLattice {
        let lap = linalg::from_i64(&graph.reduced_laplacian(0));
        let (adjugate, determinant) =
            linalg::adjugate(&lap).expect("reduced Laplacian of a connected graph is nonsingular");
        PrincipalLattice {
            graph: graph.clone(),
            adjugate,
            determinant,
        }
    }

    pub fn contains_coeffs(&self, d: &[i64]) -> bool {
        if d.iter().sum::<i64>() != 0 {
            return false;
        }
        let rest = &d[1..];
        self.adjugate.iter().all(|row| {
            let s: BigInt = row.iter().zip(rest).map(|(a, &b)| a * b).sum();
            s.is_multiple_of(&self.determinant)
        })
    }

    pub fn contains(&self, d: &Divisor) -> Result<bool> {
        if *d.graph() != self.graph {
            return Err(Error::GraphMismatch);
        }
        Ok(self.contains_coeffs(d.coeffs()))
    }

    pub fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        self.contains(&d1.try_sub(d2)?)
    }
}

/// Linear equivalence by exact lattice membership of `d1 - d2`.
pub fn is_equivalent(d1: &Divisor, d2: &Divisor) -> Result<bool> {
    let diff = d1.try_sub(d2)?;
    if diff.degree() != 0 {
        return Ok(false);
    }
    PrincipalLattice::new(d1.graph()).contains(&diff)
}

/// Cyclic decomposition of `Pic^0(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardStructure {
    pub graph: Graph,
    /// Invariant factors greater than one, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

impl PicardStructure {
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|f| f.to_u64().expect("factor fits in u64"))
            .collect()
    }
}

/// Smith normal form of the reduced Laplacian.
pub fn picard_structure(graph: &Graph) -> PicardStructure {
    let lap = linalg::from_i64(&graph.reduced_laplacian(0));
    let invariant_factors: Vec<BigInt> = linalg::smith_diagonal(&lap)
        .into_iter()
        .filter(|f| !f.is_one())
        .collect();
    debug_assert!(invariant_factors.iter().all(|f| !f.is_zero()));
    let order = invariant_factors
        .iter()
        .fold(BigInt::one(), |acc, f| acc * f);
    PicardStructure {
        graph: graph.clone(),
        invariant_factors,
        order,
    }
}

/// One representative per class of `Pic^d(G)`: the reduced forms at the
/// first vertex, sorted lexicographically.
pub fn enumerate_classes(graph: &Graph, degree: i64, cap: u64) -> Result<Vec<Divisor>> {
    let count = graph.complexity();
    if count > BigInt::from(cap) {
        return Err(Error::EnumerationCapExceeded {
            count: count.to_string(),
            cap,
        });
    }
    let n = graph.vertex_count();
    let reducer = Reducer::new(graph, 0)?;
    let mut start = vec![0; n];
    start[0] = degree;
    reducer.reduce_in_place(&mut start);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    // e_v - e_0 generate Div^0, so this closure reaches every class.
    while let Some(d) = queue.pop_front() {
        for v in 1..n {
            let mut next = d.clone();
            next[v] += 1;
            next[0] -= 1;
            reducer.reduce_in_place(&mut next);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut classes: Vec<Vec<i64>> = seen.into_iter().collect();
    classes.sort();
    classes
        .into_iter()
        .map(|c| Divisor::new(graph, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::t_v;
    use crate::graph::bullet_model;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    /// Brute-force reduced form: search the class inside a coefficient box for
    /// the divisor that is nonnegative off `q` and admits no legal firing of
    /// any nonempty subset of `V \ {q}`.
    fn brute_reduced(graph: &Graph, d: &[i64], q: usize, radius: i64) -> Vec<i64> {
        let n = d.len();
        let lap = graph.laplacian();
        let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
        let mut found = Vec::new();
        let mut script = vec![-radius; others.len()];
        loop {
            let mut cand = d.to_vec();
            for (i, &v) in others.iter().enumerate() {
                for w in 0..n {
                    cand[w] -= lap[w][v] * script[i];
                }
            }
            let nonneg = others.iter().all(|&v| cand[v] >= 0);
            if nonneg {
                let mut legal = false;
                for mask in 1u32..(1 << others.len()) {
                    let set: Vec<usize> = (0..others.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| others[i])
                        .collect();
                    if set.iter().all(|&v| {
                        cand[v]
                            >= graph.cut_size(&[v]) - {
                                // edges from v back into the set stay inside
                                set.iter().map(|&w| graph.edges_between(v, w)).sum::<i64>()
                            }
                    }) {
                        legal = true;
                        break;
                    }
                }
                if !legal {
                    found.push(cand);
                }
            }
            let mut i = 0;
            loop {
                if i == script.len() {
                    found.sort();
                    found.dedup();
                    assert_eq!(found.len(), 1, "reduced form must be unique: {found:?}");
                    return found.pop().unwrap();
                }
                script[i] += 1;
                if script[i] > radius {
                    script[i] = -radius;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn c3_reduction_matches_brute_force() {
        let g = cycle(3);
        let oracle = brute_reduced(&g, &[0, 2, 0], 0, 4);
        assert_eq!(oracle, vec![1, 0, 1]);
        let d = Divisor::new(&g, vec![0, 2, 0]).unwrap();
        assert_eq!(q_reduce(&d, 0).unwrap().base.coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn reduction_examples() {
        let g = doubled_triangle();
        let d = Divisor::new(&g, vec![-2, 3, -1]).unwrap();
        assert_eq!(q_reduce(&d, 0).unwrap().base.coeffs(), &[0, 0, 0]);
        let r = Divisor::new(&g, vec![5, 1, 0]).unwrap();
        assert_eq!(q_reduce(&r, 0).unwrap().base, r);
        assert!(q_reduce(&r, 3).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let g = doubled_triangle();
        let d = Divisor::new(&g, vec![-2, 3, -1]).unwrap();
        assert!(is_equivalent(&d, &Divisor::zero(&g)).unwrap());
        assert!(is_equivalent(&d, &d).unwrap());
        let c = cycle(3);
        let a = Divisor::new(&c, vec![1, 0, 0]).unwrap();
        let b = Divisor::new(&c, vec![0, 1, 0]).unwrap();
        assert!(!is_equivalent(&a, &b).unwrap());
        assert_eq!(is_equivalent(&a, &d).unwrap_err(), Error::GraphMismatch);
        let e = Divisor::new(&c, vec![1, 1, 0]).unwrap();
        assert!(!is_equivalent(&a, &e).unwrap());
    }

    #[test]
    fn picard_examples() {
        let fig = bullet_model(&weight_and_loop()).bullet;
        let p = picard_structure(&fig);
        assert_eq!(p.factors_u64(), vec![2, 2]);
        assert_eq!(p.order, BigInt::from(4));
        assert_eq!(picard_structure(&binary(2)).factors_u64(), vec![3]);
        let tree = path(4);
        let p = picard_structure(&tree);
        assert!(p.invariant_factors.is_empty());
        assert_eq!(p.order, BigInt::one());
        assert_eq!(picard_structure(&weight_and_loop()).order, BigInt::one());
        assert_eq!(picard_structure(&cycle(6)).factors_u64(), vec![6]);
    }

    #[test]
    fn class_enumeration_examples() {
        let c = cycle(3);
        let reps = enumerate_classes(&c, 1, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(reps.len(), 3);
        for listed in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            let l = Divisor::new(&c, listed.to_vec()).unwrap();
            let hits = reps
                .iter()
                .filter(|r| is_equivalent(r, &l).unwrap())
                .count();
            assert_eq!(hits, 1);
        }

        let b = binary(2);
        let reps = enumerate_classes(&b, 0, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(reps.len(), 3);
        for listed in [[0, 0], [1, -1], [2, -2]] {
            let l = Divisor::new(&b, listed.to_vec()).unwrap();
            assert_eq!(
                reps.iter()
                    .filter(|r| is_equivalent(r, &l).unwrap())
                    .count(),
                1
            );
        }

        let t = path(3);
        assert_eq!(
            enumerate_classes(&t, 7, DEFAULT_CLASS_CAP).unwrap().len(),
            1
        );
        assert!(matches!(
            enumerate_classes(&cycle(5), 0, 4),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_sorted_and_reduced() {
        let g = doubled_triangle();
        let reps = enumerate_classes(&g, 2, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(reps.len(), 5);
        let reducer = Reducer::new(&g, 0).unwrap();
        for w in reps.windows(2) {
            assert!(w[0].coeffs() < w[1].coeffs());
        }
        for r in &reps {
            assert!(reducer.is_reduced(r.coeffs()));
        }
    }

    proptest! {
        #[test]
        fn reduce_is_class_invariant(
            d in proptest::collection::vec(-6i64..6, 4),
            script in proptest::collection::vec(-3i64..3, 4),
        ) {
            let g = Graph::from_indices(&[0, 0, 0, 0], &[(0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
            let reducer = Reducer::new(&g, 0).unwrap();
            let r1 = reducer.reduce(&d);
            let mut moved = Divisor::new(&g, d.clone()).unwrap();
            for (v, &k) in script.iter().enumerate() {
                moved = moved.try_add(&t_v(&g, v).unwrap().scaled(k)).unwrap();
            }
            let r2 = reducer.reduce(moved.coeffs());
            prop_assert_eq!(&r1, &r2);
            prop_assert_eq!(reducer.reduce(&r1), r1.clone());
            prop_assert!(reducer.is_reduced(&r1));
        }

        #[test]
        fn reduce_matches_lattice(
            a in proptest::collection::vec(-3i64..=3, 4),
            b in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let g = Graph::from_indices(&[0, 0, 0, 0], &[(0, 1), (0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
            let reducer = Reducer::new(&g, 2).unwrap();
            let lattice = PrincipalLattice::new(&g);
            let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            prop_assert_eq!(reducer.reduce(&a) == reducer.reduce(&b), lattice.contains_coeffs(&diff));
        }
    }
}
