//! Divisors and rational functions on a fixed graph.

use std::fmt;
use std::ops::{Index, Neg};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Integer combination of vertices, stored in graph vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    graph: Graph,
    coeffs: Vec<i64>,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor{:?}", self.coeffs)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Divisor {
    pub fn new(graph: &Graph, coeffs: Vec<i64>) -> Result<Divisor> {
        if coeffs.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                found: coeffs.len(),
            });
        }
        Ok(Divisor {
            graph: graph.clone(),
            coeffs,
        })
    }

    pub fn zero(graph: &Graph) -> Divisor {
        Divisor {
            graph: graph.clone(),
            coeffs: vec![0; graph.vertex_count()],
        }
    }

    /// The divisor `v` (one chip on a single vertex).
    pub fn vertex(graph: &Graph, v: usize) -> Result<Divisor> {
        graph.check_vertex(v)?;
        let mut d = Divisor::zero(graph);
        d.coeffs[v] = 1;
        Ok(d)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// `d(Z)`.
    pub fn restrict(&self, z: &[usize]) -> Result<i64> {
        z.iter()
            .map(|&v| {
                self.graph.check_vertex(v)?;
                Ok(self.coeffs[v])
            })
            .sum()
    }

    fn same_graph(&self, other: &Divisor) -> Result<()> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn try_add(&self, other: &Divisor) -> Result<Divisor> {
        self.same_graph(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.same_graph(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor {
            graph: self.graph.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    fn zip_with(&self, other: &Divisor, f: impl Fn(i64, i64) -> i64) -> Divisor {
        Divisor {
            graph: self.graph.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.coeffs[v]
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        self.scaled(-1)
    }
}

/// Integer-valued function on the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    graph: Graph,
    values: Vec<i64>,
}

impl RationalFunction {
    pub fn new(graph: &Graph, values: Vec<i64>) -> Result<RationalFunction> {
        if values.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                found: values.len(),
            });
        }
        Ok(RationalFunction {
            graph: graph.clone(),
            values,
        })
    }

    /// Takes value 1 at `v`, 0 elsewhere.
    pub fn indicator(graph: &Graph, v: usize) -> Result<RationalFunction> {
        graph.check_vertex(v)?;
        let mut values = vec![0; graph.vertex_count()];
        values[v] = 1;
        Ok(RationalFunction {
            graph: graph.clone(),
            values,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `ord_v(f) = Σ_{w≠v} (f(v) - f(w)) (v·w)`.
    pub fn order_at(&self, v: usize) -> Result<i64> {
        self.graph.check_vertex(v)?;
        Ok(self.order_unchecked(v))
    }

    fn order_unchecked(&self, v: usize) -> i64 {
        (0..self.values.len())
            .filter(|&w| w != v)
            .map(|w| (self.values[v] - self.values[w]) * self.graph.edges_between(v, w))
            .sum()
    }

    pub fn principal_divisor(&self) -> Divisor {
        Divisor {
            graph: self.graph.clone(),
            coeffs: (0..self.values.len())
                .map(|v| self.order_unchecked(v))
                .collect(),
        }
    }
}

/// `t_v = ((v_1·v), ..., (v_n·v))`, the divisor of minus the indicator of `v`.
pub fn t_v(graph: &Graph, v: usize) -> Result<Divisor> {
    graph.check_vertex(v)?;
    Ok(Divisor {
        graph: graph.clone(),
        coeffs: (0..graph.vertex_count())
            .map(|w| graph.intersection_number(w, v))
            .collect(),
    })
}

/// `k_G = Σ_v (2ω(v) - 2 + val(v)) v`.
pub fn canonical_divisor(graph: &Graph) -> Divisor {
    let coeffs = (0..graph.vertex_count())
        .map(|v| 2 * graph.weight(v) as i64 - 2 + graph.valency(v).expect("vertex in range"))
        .collect();
    Divisor {
        graph: graph.clone(),
        coeffs,
    }
}
