//! Rank of divisors and the checks built on it.
//!
//! The rank on a general graph is the rank of the embedded divisor on the
//! weightless loopless model. On that model we use
//! `r(d) = -1` if `d` has no effective representative, and otherwise
//! `r(d) = 1 + min_v r(d - v)`, which unrolls the quantifier over effective
//! divisors one chip at a time. Results are memoized on `q`-reduced forms.

use std::collections::HashMap;

use crate::divisor::{canonical_divisor, Divisor};
use crate::error::{Error, Result};
use crate::graph::{bullet_model, BulletModel, Graph};
use crate::picard::{PrincipalLattice, Reducer};

/// Inputs of larger degree are refused by default.
pub const DEFAULT_RANK_DEGREE_CAP: i64 = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub value: i64,
    /// For `value >= 0`: the lexicographically first effective divisor of
    /// degree `value + 1` on the weightless loopless model whose removal
    /// leaves a class with no effective representative.
    pub witness: Option<Divisor>,
}

/// Rank computations on one graph, sharing a memo table.
pub struct RankEngine {
    graph: Graph,
    model: BulletModel,
    base_reducer: Reducer,
    bullet_reducer: Reducer,
    class_memo: HashMap<Vec<i64>, i64>,
    bullet_memo: HashMap<Vec<i64>, i64>,
    degree_cap: i64,
}

impl RankEngine {
    pub fn new(graph: &Graph) -> RankEngine {
        let model = bullet_model(graph);
        let base_reducer = Reducer::new(graph, 0).expect("vertex 0 exists");
        let bullet_reducer = Reducer::new(&model.bullet, 0).expect("vertex 0 exists");
        RankEngine {
            graph: graph.clone(),
            model,
            base_reducer,
            bullet_reducer,
            class_memo: HashMap::new(),
            bullet_memo: HashMap::new(),
            degree_cap: DEFAULT_RANK_DEGREE_CAP,
        }
    }

    pub fn with_degree_cap(mut self, cap: i64) -> RankEngine {
        self.degree_cap = cap;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn model(&self) -> &BulletModel {
        &self.model
    }

    fn check(&self, d: &Divisor) -> Result<()> {
        if *d.graph() != self.graph {
            return Err(Error::GraphMismatch);
        }
        let degree = d.degree();
        if degree > self.degree_cap {
            return Err(Error::RankDegreeCapExceeded {
                degree,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// Rank value only (no witness).
    pub fn rank_value(&mut self, d: &Divisor) -> Result<i64> {
        self.check(d)?;
        Ok(self.rank_coeffs(d.coeffs()))
    }

    /// Rank of a coefficient vector on this engine's graph; no cap check.
    pub(crate) fn rank_coeffs(&mut self, coeffs: &[i64]) -> i64 {
        if coeffs.iter().sum::<i64>() < 0 {
            return -1;
        }
        // Pic(G) injects into Pic(G•), so the class on G is a valid key.
        let key = self.base_reducer.reduce(coeffs);
        if let Some(&r) = self.class_memo.get(&key) {
            return r;
        }
        let lifted = self.model.embed_coeffs(&key);
        let r = self.bullet_rank(lifted);
        self.class_memo.insert(key, r);
        r
    }

    /// Rank computed on the model directly, bypassing the class memo.
    pub(crate) fn rank_on_model(&mut self, coeffs: &[i64]) -> i64 {
        let lifted = self.model.embed_coeffs(coeffs);
        self.bullet_rank(lifted)
    }

    fn bullet_rank(&mut self, mut coeffs: Vec<i64>) -> i64 {
        self.bullet_reducer.reduce_in_place(&mut coeffs);
        if let Some(&r) = self.bullet_memo.get(&coeffs) {
            return r;
        }
        let r = if coeffs[0] < 0 {
            -1
        } else {
            let mut best = i64::MAX;
            for v in 0..coeffs.len() {
                let mut next = coeffs.clone();
                next[v] -= 1;
                best = best.min(self.bullet_rank(next));
                if best == -1 {
                    break;
                }
            }
            1 + best
        };
        self.bullet_memo.insert(coeffs, r);
        r
    }

    /// Rank with the lexicographically first failing effective divisor.
    pub fn rank(&mut self, d: &Divisor) -> Result<RankResult> {
        let value = self.rank_value(d)?;
        if value < 0 {
            return Ok(RankResult {
                value,
                witness: None,
            });
        }
        let lifted = self.model.embed_coeffs(d.coeffs());
        let mut e = vec![0; lifted.len()];
        let found = self.first_failure(&lifted, &mut e, 0, value + 1);
        debug_assert!(
            found,
            "rank {value} must be witnessed at degree {}",
            value + 1
        );
        Ok(RankResult {
            value,
            witness: Some(Divisor::new(&self.model.bullet, e)?),
        })
    }

    /// Depth-first search over effective `e` of degree `remaining` placed on
    /// coordinates `i..`, smallest coordinates first.
    fn first_failure(&mut self, d: &[i64], e: &mut [i64], i: usize, remaining: i64) -> bool {
        let n = e.len();
        let diff = |e: &[i64]| d.iter().zip(e).map(|(a, b)| a - b).collect::<Vec<_>>();
        if i == n - 1 {
            e[i] = remaining;
            if self.bullet_rank(diff(e)) == -1 {
                return true;
            }
            e[i] = 0;
            return false;
        }
        for c in 0..=remaining {
            e[i] = c;
            // If d - prefix keeps rank >= rest, no completion can fail.
            if self.bullet_rank(diff(e)) >= remaining - c {
                continue;
            }
            if self.first_failure(d, e, i + 1, remaining - c) {
                return true;
            }
        }
        e[i] = 0;
        false
    }

    pub fn riemann_roch(&mut self, d: &Divisor) -> Result<RiemannRoch> {
        let k = canonical_divisor(&self.graph);
        let dual = k.try_sub(d)?;
        self.check(d)?;
        self.check(&dual)?;
        let rank = self.rank_coeffs(d.coeffs());
        let dual_rank = self.rank_coeffs(dual.coeffs());
        Ok(RiemannRoch {
            rank,
            dual_rank,
            expected: d.degree() - self.graph.genus() + 1,
        })
    }

    /// `r(d) <= deg(d) / 2`, for `0 <= deg(d) <= 2g - 2`.
    pub fn clifford(&mut self, d: &Divisor) -> Result<bool> {
        let degree = d.degree();
        let max = 2 * self.graph.genus() - 2;
        if degree < 0 || degree > max {
            return Err(Error::DegreeOutOfRange {
                degree,
                min: 0,
                max,
            });
        }
        Ok(2 * self.rank_value(d)? <= degree)
    }
}

/// Both sides of `r(d) - r(k - d) = deg d - g + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiemannRoch {
    pub rank: i64,
    pub dual_rank: i64,
    pub expected: i64,
}

impl RiemannRoch {
    pub fn holds(&self) -> bool {
        self.rank - self.dual_rank == self.expected
    }
}

fn require_weightless_loopless(graph: &Graph) -> Result<()> {
    if graph.is_weightless() && graph.is_loopless() {
        Ok(())
    } else {
        Err(Error::RequiresWeightlessLoopless)
    }
}

/// Whether some effective divisor is linearly equivalent to `d`.
pub fn is_class_effective(d: &Divisor) -> Result<bool> {
    require_weightless_loopless(d.graph())?;
    let reducer = Reducer::new(d.graph(), 0)?;
    Ok(reducer.reduce(d.coeffs())[0] >= 0)
}

/// Rank on a weightless loopless graph.
pub fn rank_weightless(d: &Divisor) -> Result<RankResult> {
    require_weightless_loopless(d.graph())?;
    RankEngine::new(d.graph()).rank(d)
}

/// Rank on any graph, through its weightless loopless model.
pub fn rank(graph: &Graph, d: &Divisor) -> Result<RankResult> {
    RankEngine::new(graph).rank(d)
}

pub fn riemann_roch_check(graph: &Graph, d: &Divisor) -> Result<bool> {
    Ok(RankEngine::new(graph).riemann_roch(d)?.holds())
}

pub fn clifford_check(graph: &Graph, d: &Divisor) -> Result<bool> {
    RankEngine::new(graph).clifford(d)
}

/// Checks the hypotheses that force `r(d) <= r - 1`: `d(v) < r`, and
/// `d(Z) < (Z·Z^c)` for every nonempty `Z ⊆ V \ {v}`.
pub fn kz_bound(graph: &Graph, d: &Divisor, v: usize, r: u32) -> Result<bool> {
    graph.check_vertex(v)?;
    if *d.graph() != *graph {
        return Err(Error::GraphMismatch);
    }
    if d[v] >= r as i64 {
        return Ok(false);
    }
    let others: Vec<usize> = (0..graph.vertex_count()).filter(|&w| w != v).collect();
    let subsets = 1u64 << others.len();
    for mask in 1..subsets {
        let z: Vec<usize> = others
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &w)| w)
            .collect();
        if d.restrict(&z)? >= graph.cut_size(&z) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeZeroClass {
    /// Equivalent to zero; rank 0.
    PrincipalRank0,
    /// Not principal; rank -1.
    NonprincipalRankNeg,
}

pub fn degree_zero_classification(graph: &Graph, d: &Divisor) -> Result<DegreeZeroClass> {
    if *d.graph() != *graph {
        return Err(Error::GraphMismatch);
    }
    if d.degree() != 0 {
        return Err(Error::DegreeNotZero(d.degree()));
    }
    if PrincipalLattice::new(graph).contains(d)? {
        Ok(DegreeZeroClass::PrincipalRank0)
    } else {
        Ok(DegreeZeroClass::NonprincipalRankNeg)
    }
}
