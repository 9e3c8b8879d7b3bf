use super::Graph;

/// Weightless loopless model of a graph: every unit of weight becomes a loop,
/// then every loop is subdivided by a new weight-zero vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BulletModel {
    pub source: Graph,
    pub bullet: Graph,
    /// `vertex_embedding[v]` is the index of `v` in `bullet`.
    pub vertex_embedding: Vec<usize>,
}

impl BulletModel {
    /// Extends a coefficient vector on the source by zeros on the new vertices.
    pub fn embed_coeffs(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.bullet.vertex_count()];
        for (v, &c) in coeffs.iter().enumerate() {
            out[self.vertex_embedding[v]] = c;
        }
        out
    }
}

/// Original vertices keep their positions; the new midpoint vertices follow,
/// grouped by base vertex, original loops (in edge order) before weight loops.
pub fn bullet_model(graph: &Graph) -> BulletModel {
    let n = graph.vertex_count();
    let identity: Vec<usize> = (0..n).collect();
    if graph.is_weightless() && graph.is_loopless() {
        return BulletModel {
            source: graph.clone(),
            bullet: graph.clone(),
            vertex_embedding: identity,
        };
    }

    let mut ids: Vec<String> = graph.ids().to_vec();
    let mut edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a != b)
        .collect();

    for v in 0..n {
        let base = graph.id(v);
        let original_loops = graph.loops_at(v);
        for i in 0..original_loops {
            let m = ids.len();
            ids.push(format!("{base}~loop{}", i + 1));
            edges.push((v, m));
            edges.push((v, m));
        }
        for j in 0..graph.weight(v) {
            let m = ids.len();
            ids.push(format!("{base}~wt{}", j + 1));
            edges.push((v, m));
            edges.push((v, m));
        }
    }
    let weights = vec![0; ids.len()];
    let bullet = Graph::from_parts(ids, weights, edges)
        .expect("subdividing loops keeps the graph connected");
    BulletModel {
        source: graph.clone(),
        bullet,
        vertex_embedding: identity,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn weight_and_loop_model() {
        let g = weight_and_loop();
        let m = bullet_model(&g);
        let b = &m.bullet;
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.edge_count(), 5);
        assert!(b.is_weightless() && b.is_loopless());
        assert_eq!(b.genus(), g.genus());
        // v has its weight loop, w its original loop
        assert_eq!(b.ids(), &["v", "w", "v~wt1", "w~loop1"]);
        assert_eq!(b.edges_between(0, 2), 2);
        assert_eq!(b.edges_between(1, 3), 2);
        assert_eq!(b.edges_between(0, 1), 1);
        assert!(b.is_bridge(0).unwrap());
        assert_eq!(b.complexity(), BigInt::from(4));
    }

    #[test]
    fn weightless_loopless_is_fixed() {
        let g = doubled_triangle();
        let m = bullet_model(&g);
        assert_eq!(m.bullet, g);
        assert_eq!(m.vertex_embedding, vec![0, 1, 2]);
    }

    #[test]
    fn single_vertex_weight_two_is_star() {
        let g = single_vertex(2, 0);
        let b = bullet_model(&g).bullet;
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.edges_between(0, 1), 2);
        assert_eq!(b.edges_between(0, 2), 2);
        assert_eq!(b.edges_between(1, 2), 0);
        assert_eq!(b.genus(), 2);
    }

    #[test]
    fn idempotent() {
        let g = weight_and_loop();
        let once = bullet_model(&g).bullet;
        let twice = bullet_model(&once).bullet;
        assert_eq!(once, twice);
    }

    #[test]
    fn embedding_pads_with_zeros() {
        let m = bullet_model(&weight_and_loop());
        assert_eq!(m.embed_coeffs(&[1, 0]), vec![1, 0, 0, 0]);
    }
}
