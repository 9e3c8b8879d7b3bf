//! Push-forward along contractions and semibalanced multidegrees.

use num_rational::Ratio;

use crate::divisor::{canonical_divisor, t_v, Divisor};
use crate::error::{Error, Result};
use crate::graph::{ContractionMap, Graph};
use crate::rank::RankEngine;

/// `σ_*`: sums coefficients over each fiber of the contraction.
pub fn push_forward(cm: &ContractionMap, d: &Divisor) -> Result<Divisor> {
    if *d.graph() != cm.source {
        return Err(Error::GraphMismatch);
    }
    Divisor::new(&cm.target, cm.push_coeffs(d.coeffs()))
}

fn single_edge(cm: &ContractionMap) -> Result<usize> {
    match cm.contracted_edges.as_slice() {
        [e] => Ok(*e),
        other => Err(Error::MultiEdgeContraction(other.len())),
    }
}

/// Checks `σ_*(Prin(G)) ⊇ Prin(G/e)` constructively: each target generator
/// `t̄_u` must be the push-forward of the sum of `t_v` over the fiber of `u`.
pub fn verify_prin_pushforward(cm: &ContractionMap) -> Result<bool> {
    single_edge(cm)?;
    let source = &cm.source;
    for u in 0..cm.target.vertex_count() {
        let mut preimage = Divisor::zero(source);
        for v in cm.fiber(u) {
            preimage = preimage.try_add(&t_v(source, v)?)?;
        }
        if push_forward(cm, &preimage)? != t_v(&cm.target, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether contracting the bridge in `cm` leaves the rank of `d` unchanged.
pub fn bridge_rank_preservation(cm: &ContractionMap, d: &Divisor) -> Result<bool> {
    let e = single_edge(cm)?;
    if !cm.source.is_bridge(e)? {
        return Err(Error::NotABridge(e));
    }
    let before = RankEngine::new(&cm.source).rank_value(d)?;
    let after = RankEngine::new(&cm.target).rank_value(&push_forward(cm, d)?)?;
    Ok(before == after)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A subset `Z` (sorted) with `d(Z)` below the bound.
    Subset(Vec<usize>),
    /// A weight-zero valency-2 vertex with the wrong coefficient.
    Vertex(usize),
}

/// One evaluation of `d(Z) >= k(Z) d / (2g-2) - (Z·Z^c) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCheck {
    pub subset: Vec<usize>,
    pub value: i64,
    pub bound: Ratio<i64>,
}

impl SubsetCheck {
    pub fn holds(&self) -> bool {
        Ratio::from_integer(self.value) >= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub divisor: Divisor,
    pub semibalanced: bool,
    pub balanced: bool,
    /// Lexicographically least reason for failing to be semibalanced, or
    /// (if semibalanced) for failing to be balanced.
    pub violation: Option<Violation>,
    /// Every subset, in lexicographic order of sorted vertex lists.
    pub subset_checks: Vec<SubsetCheck>,
}

fn check_semistable(graph: &Graph) -> Result<()> {
    let g = graph.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    for v in 0..graph.vertex_count() {
        if graph.weight(v) == 0 && graph.valency(v)? < 2 {
            return Err(Error::NotSemistable(graph.id(v).to_string()));
        }
    }
    Ok(())
}

/// All subsets of `0..n` as sorted vectors, in lexicographic order.
fn subsets_lex(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort();
    all
}

pub fn balance_report(graph: &Graph, d: &Divisor) -> Result<BalanceReport> {
    if *d.graph() != *graph {
        return Err(Error::GraphMismatch);
    }
    check_semistable(graph)?;
    let k = canonical_divisor(graph);
    let denom = 2 * graph.genus() - 2;
    let degree = d.degree();
    let subset_checks: Vec<SubsetCheck> = subsets_lex(graph.vertex_count())
        .into_iter()
        .map(|z| {
            let bound = Ratio::new(k.restrict(&z).expect("in range") * degree, denom)
                - Ratio::new(graph.cut_size(&z), 2);
            SubsetCheck {
                value: d.restrict(&z).expect("in range"),
                bound,
                subset: z,
            }
        })
        .collect();
    let two_valent: Vec<usize> = (0..graph.vertex_count())
        .filter(|&v| graph.weight(v) == 0 && graph.valency(v) == Ok(2))
        .collect();

    let mut violation = subset_checks
        .iter()
        .find(|c| !c.holds())
        .map(|c| Violation::Subset(c.subset.clone()));
    if violation.is_none() {
        violation = two_valent
            .iter()
            .find(|&&v| d[v] < 0)
            .map(|&v| Violation::Vertex(v));
    }
    let semibalanced = violation.is_none();
    if semibalanced {
        violation = two_valent
            .iter()
            .find(|&&v| d[v] != 1)
            .map(|&v| Violation::Vertex(v));
    }
    let balanced = semibalanced && violation.is_none();
    Ok(BalanceReport {
        divisor: d.clone(),
        semibalanced,
        balanced,
        violation,
        subset_checks,
    })
}

/// Searches `d + Σ_{v≠v1} m_v t_v` over multiplier shells of growing sup-norm
/// (lexicographic within a shell) for a semibalanced divisor. The initial
/// bound is `degree + genus + 2`, doubled up to four times.
pub fn find_semibalanced_representative(graph: &Graph, d: &Divisor) -> Result<Divisor> {
    let initial = (d.degree() + graph.genus() + 2).max(1);
    find_semibalanced_within(graph, d, initial << 4)
}

pub fn find_semibalanced_within(graph: &Graph, d: &Divisor, bound: i64) -> Result<Divisor> {
    let first = balance_report(graph, d)?;
    if first.semibalanced {
        return Ok(d.clone());
    }
    let n = graph.vertex_count();
    let gens: Vec<Divisor> = (1..n).map(|v| t_v(graph, v)).collect::<Result<_>>()?;
    for radius in 1..=bound {
        let mut m = vec![-radius; n - 1];
        loop {
            if m.iter().any(|&x| x.abs() == radius) {
                let mut cand = d.clone();
                for (gen, &k) in gens.iter().zip(&m) {
                    if k != 0 {
                        cand = cand.try_add(&gen.scaled(k))?;
                    }
                }
                if balance_report(graph, &cand)?.semibalanced {
                    return Ok(cand);
                }
            }
            if !next_lex(&mut m, radius) {
                break;
            }
        }
    }
    Err(Error::SearchExhausted(bound))
}

fn next_lex(m: &mut [i64], radius: i64) -> bool {
    for i in (0..m.len()).rev() {
        if m[i] < radius {
            m[i] += 1;
            for x in &mut m[i + 1..] {
                *x = -radius;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::contract;
    use crate::graph::fixtures::*;
    use crate::picard::is_equivalent;

    fn div(g: &Graph, c: &[i64]) -> Divisor {
        Divisor::new(g, c.to_vec()).unwrap()
    }

    #[test]
    fn push_forward_examples() {
        let g = doubled_triangle();
        let cm = contract(&g, &[3]).unwrap();
        assert_eq!(
            push_forward(&cm, &div(&g, &[-2, 3, -1])).unwrap().coeffs(),
            &[-2, 2]
        );
        assert_eq!(
            push_forward(&cm, &div(&g, &[1, -1, 2])).unwrap().coeffs(),
            &[1, 1]
        );
        let id = contract(&g, &[]).unwrap();
        assert_eq!(
            push_forward(&id, &div(&g, &[4, 0, -1])).unwrap().coeffs(),
            &[4, 0, -1]
        );
        assert_eq!(
            push_forward(&cm, &Divisor::zero(&cycle(3))).unwrap_err(),
            Error::GraphMismatch
        );
    }

    #[test]
    fn prin_pushforward_examples() {
        let g = doubled_triangle();
        assert!(verify_prin_pushforward(&contract(&g, &[3]).unwrap()).unwrap());
        let p = path(4);
        assert!(verify_prin_pushforward(&contract(&p, &[1]).unwrap()).unwrap());
        let c = cycle(3);
        let cm = contract(&c, &[0]).unwrap();
        assert!(verify_prin_pushforward(&cm).unwrap());
        // vertex v3 is a singleton fiber: σ_*(t_{v3}) equals the target generator directly
        let pushed = push_forward(&cm, &t_v(&c, 2).unwrap()).unwrap();
        assert_eq!(pushed, t_v(&cm.target, cm.vertex_map[2]).unwrap());
        assert_eq!(
            verify_prin_pushforward(&contract(&g, &[0, 3]).unwrap()).unwrap_err(),
            Error::MultiEdgeContraction(2)
        );
    }

    #[test]
    fn bridge_examples() {
        let g = Graph::from_indices(&[1, 1], &[(0, 1)]).unwrap();
        let cm = contract(&g, &[0]).unwrap();
        assert!(bridge_rank_preservation(&cm, &div(&g, &[0, 1])).unwrap());
        assert!(bridge_rank_preservation(&cm, &Divisor::zero(&g)).unwrap());
        let f = doubled_triangle();
        let cm = contract(&f, &[3]).unwrap();
        assert_eq!(
            bridge_rank_preservation(&cm, &Divisor::zero(&f)).unwrap_err(),
            Error::NotABridge(3)
        );
    }

    #[test]
    fn balance_binary() {
        let b = binary(2);
        let r = balance_report(&b, &div(&b, &[1, 1])).unwrap();
        assert!(r.semibalanced && r.balanced);
        assert_eq!(r.subset_checks.len(), 4);

        let r = balance_report(&b, &div(&b, &[5, 0])).unwrap();
        assert!(!r.semibalanced && !r.balanced);
        assert_eq!(r.violation, Some(Violation::Subset(vec![1])));
        let check = r
            .subset_checks
            .iter()
            .find(|c| c.subset == vec![1])
            .unwrap();
        assert_eq!(check.value, 0);
        assert_eq!(check.bound, Ratio::from_integer(1));
        let check = r
            .subset_checks
            .iter()
            .find(|c| c.subset == vec![0])
            .unwrap();
        assert_eq!(check.bound, Ratio::from_integer(1));
    }

    #[test]
    fn balance_exact_halves() {
        // bound k(Z) d/(2g-2) - cut/2 with odd cut is a genuine half
        let b = binary(2);
        let r = balance_report(&b, &div(&b, &[2, 0])).unwrap();
        let check = r
            .subset_checks
            .iter()
            .find(|c| c.subset == vec![1])
            .unwrap();
        assert_eq!(check.bound, Ratio::new(-1, 2));
        assert_eq!(check.bound.to_string(), "-1/2");
        assert!(r.semibalanced);
    }

    #[test]
    fn balanced_requires_one_on_two_valent() {
        // genus-2 graph: cycle of length 3 with a doubled edge, v3 is 2-valent
        let g = doubled_triangle();
        let r = balance_report(&g, &div(&g, &[1, 1, 0])).unwrap();
        assert!(r.semibalanced);
        assert!(!r.balanced);
        assert_eq!(r.violation, Some(Violation::Vertex(2)));
        let r = balance_report(&g, &div(&g, &[1, 2, -1])).unwrap();
        assert!(!r.semibalanced);
    }

    #[test]
    fn canonical_is_semibalanced() {
        let b = binary(3);
        let k = canonical_divisor(&b);
        assert!(balance_report(&b, &k).unwrap().semibalanced);
    }

    #[test]
    fn balance_preconditions() {
        let c = cycle(3);
        assert_eq!(
            balance_report(&c, &Divisor::zero(&c)).unwrap_err(),
            Error::GenusTooSmall(1)
        );
        let g = Graph::from_indices(&[0, 0, 0], &[(0, 1), (0, 1), (0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            balance_report(&g, &Divisor::zero(&g)),
            Err(Error::NotSemistable(_))
        ));
    }

    #[test]
    fn semibalanced_representatives() {
        let b = binary(2);
        let d = div(&b, &[5, 0]);
        let rep = find_semibalanced_representative(&b, &d).unwrap();
        assert_eq!(rep.coeffs(), &[2, 3]);
        assert!(is_equivalent(&rep, &d).unwrap());
        assert_eq!(RankEngine::new(&b).rank_value(&rep).unwrap(), 3);

        let ok = div(&b, &[1, 1]);
        assert_eq!(find_semibalanced_representative(&b, &ok).unwrap(), ok);

        let d = div(&b, &[3, -1]);
        let rep = find_semibalanced_representative(&b, &d).unwrap();
        assert!(is_equivalent(&rep, &d).unwrap());
        assert!(rep.coeffs().iter().all(|&c| (0..=2).contains(&c)));
        assert_eq!(rep.coeffs(), &[0, 2]);
    }
}
