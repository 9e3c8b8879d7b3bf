//! JSON graph documents and inline divisor syntax.
//!
//! ```json
//! {
//!   "vertices": [{"id": "v1", "weight": 0}, {"id": "v2", "weight": 0}],
//!   "edges": [["v1", "v2"], ["v1", "v2"], ["v2", "v2"]],
//!   "divisors": {"d": [1, -1]}
//! }
//! ```
//! Loops repeat the same id. `divisors` is optional; arrays follow vertex order.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub divisors: IndexMap<String, Vec<i64>>,
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<GraphDocument> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_graph(graph: &Graph) -> GraphDocument {
        GraphDocument {
            vertices: graph
                .ids()
                .iter()
                .zip(graph.weights())
                .map(|(id, &w)| VertexEntry {
                    id: id.clone(),
                    weight: w as i64,
                })
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|&(a, b)| [graph.id(a).to_string(), graph.id(b).to_string()])
                .collect(),
            divisors: IndexMap::new(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let vertices: Vec<(&str, i64)> = self
            .vertices
            .iter()
            .map(|v| (v.id.as_str(), v.weight))
            .collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let graph = Graph::build(&vertices, &edges)?;
        for (name, coeffs) in &self.divisors {
            if coeffs.len() != graph.vertex_count() {
                return Err(Error::Malformed(format!(
                    "divisor `{name}` has {} entries, graph has {} vertices",
                    coeffs.len(),
                    graph.vertex_count()
                )));
            }
        }
        Ok(graph)
    }

    /// Resolves `arg` as an inline tuple such as `(-2,3,-1)` or, failing
    /// that, as the name of a divisor stored in the document.
    pub fn resolve_divisor(&self, graph: &Graph, arg: &str) -> Result<Divisor> {
        let trimmed = arg.trim();
        if trimmed.starts_with('(') || trimmed.starts_with('[') {
            return Divisor::new(graph, parse_tuple(trimmed)?);
        }
        match self.divisors.get(trimmed) {
            Some(coeffs) => Divisor::new(graph, coeffs.clone()),
            None => Err(Error::Malformed(format!("no divisor named `{trimmed}`"))),
        }
    }
}

/// Parses `(a,b,...)` or `[a,b,...]`; accepts U+2212 as a minus sign.
pub fn parse_tuple(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .ok_or_else(|| Error::Malformed(format!("expected a parenthesized tuple, got `{text}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|part| {
            let p = part.trim().replace('\u{2212}', "-");
            p.parse::<i64>()
                .map_err(|_| Error::Malformed(format!("`{}` is not an integer", part.trim())))
        })
        .collect()
}
