//! Vertex-cover reduction machinery.
//!
//! Encodes a vertex-cover instance as a proxy-discovery instance: one binary
//! indicator attribute per vertex, a special target attribute that is forced
//! to 1 exactly when the indicated vertex set covers every edge, one
//! projection function per vertex, and threshold 0.5 under the
//! point-conditioned uncertainty estimator. The decision answer on the
//! encoded instance then equals the k-vertex-cover answer for the graph.
//!
//! An independent vertex-cover oracle (exact bitmask search plus the classic
//! greedy 2-approximation) ships alongside so the reduction can be
//! cross-validated without going through the estimator at all.

use crate::combos::combinations;
use crate::error::{Error, Result};
use crate::estimation::{EstimatorConfig, EstimatorKind, EstimatorMode};
use crate::model::{FunctionDef, JointDistribution, ProxyInstance};

/// Vertex count cap for the exact vertex-cover solver.
pub const DEFAULT_EXACT_VC_CAP: usize = 24;

/// Threshold used by the reduction; any value strictly between the two
/// binary entropies 0 and 1 works, 0.5 is the conventional choice.
pub const VC_REDUCTION_ALPHA: f64 = 0.5;

/// An undirected graph on vertices `0..num_vertices`, no self-loops, no
/// duplicate edges. Edge declaration order is preserved (the greedy
/// 2-approximation scans it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        if num_vertices > 63 {
            return Err(Error::Graph(format!(
                "graph has {num_vertices} vertices, above the bitmask limit of 63"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if u as usize >= num_vertices || v as usize >= num_vertices {
                return Err(Error::Graph(format!(
                    "edge ({u}, {v}) out of range for {num_vertices} vertices"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Graph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Whether the vertex set encoded as a bitmask touches every edge.
    pub fn is_cover_mask(&self, mask: u64) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| mask & ((1 << u) | (1 << v)) != 0)
    }

    /// Whether a vertex list is a cover.
    pub fn is_cover(&self, vertices: &[u32]) -> bool {
        self.is_cover_mask(vertices.iter().fold(0u64, |m, &v| m | (1 << v)))
    }
}

/// Parses an edge list in the `gen-vc` input format: one `u v` pair per
/// line, 0-based, blank lines and `#` comments ignored. The vertex count is
/// the highest index seen plus one unless an explicit count is given.
pub fn parse_edge_list(text: &str, num_vertices: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_vertex: u32 = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |part: Option<&str>| -> Result<u32> {
            part.and_then(|p| p.parse().ok()).ok_or_else(|| {
                Error::Graph(format!("line {}: expected `u v`, got `{line}`", lineno + 1))
            })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Graph(format!(
                "line {}: expected `u v`, got `{line}`",
                lineno + 1
            )));
        }
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() && num_vertices.is_none() {
        return Err(Error::Graph(
            "edge list is empty and no vertex count given".into(),
        ));
    }
    let n = num_vertices.unwrap_or(max_vertex as usize + 1);
    Graph::new(n, edges)
}

/// The reduction output: the source graph together with the derived proxy
/// instance. The instance has `n + 1` binary attributes, one projection
/// function per vertex, the last attribute as target, threshold 0.5, and
/// the point-conditioned exact estimator.
#[derive(Debug, Clone)]
pub struct VcReductionInstance {
    graph: Graph,
    instance: ProxyInstance,
}

impl VcReductionInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn instance(&self) -> &ProxyInstance {
        &self.instance
    }

    pub fn into_instance(self) -> ProxyInstance {
        self.instance
    }

    /// The reduction's uncertainty: entropy of the target under the single
    /// assignment that sets the subset's vertex attributes to 1 and every
    /// other vertex attribute to 0. Equals 0 when that vertex set is a
    /// cover, 1 otherwise.
    pub fn point_conditioned_uncertainty(&self, subset: &[usize]) -> Result<f64> {
        Ok(self.instance.uncertainty(subset)?.value_bits)
    }
}

/// Encodes a k-vertex-cover question as a proxy decision instance.
pub fn encode_vertex_cover(graph: &Graph, k: usize) -> Result<VcReductionInstance> {
    if k > graph.num_vertices() {
        return Err(Error::Input(format!(
            "k = {k} exceeds the vertex count {}",
            graph.num_vertices()
        )));
    }
    let distribution = JointDistribution::vc_reduction(graph.clone())?;
    let schema = distribution.schema();
    let functions = (0..graph.num_vertices())
        .map(|i| FunctionDef::projection(schema, format!("f{i}"), &format!("v{i}")))
        .collect::<Result<Vec<_>>>()?;
    let instance = ProxyInstance::new(
        distribution,
        functions,
        "target",
        VC_REDUCTION_ALPHA,
        Some(k),
        EstimatorConfig {
            mode: EstimatorMode::Exact,
            kind: EstimatorKind::PointConditioned,
        },
    )?;
    Ok(VcReductionInstance {
        graph: graph.clone(),
        instance,
    })
}

/// Minimum vertex cover by exhaustive search, subsets enumerated in order of
/// increasing size with early exit, lexicographically smallest among minima.
pub fn solve_vertex_cover_exact(graph: &Graph) -> Result<Vec<u32>> {
    solve_vertex_cover_exact_with_cap(graph, DEFAULT_EXACT_VC_CAP)
}

pub fn solve_vertex_cover_exact_with_cap(graph: &Graph, cap: usize) -> Result<Vec<u32>> {
    let n = graph.num_vertices();
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "graph has {n} vertices, above the exact vertex-cover cap of {cap}"
        )));
    }
    for size in 0..=n {
        for combo in combinations(n, size) {
            let mask = combo.iter().fold(0u64, |m, &v| m | (1 << v));
            if graph.is_cover_mask(mask) {
                return Ok(combo.into_iter().map(|v| v as u32).collect());
            }
        }
    }
    unreachable!("the full vertex set always covers");
}

/// The classic greedy 2-approximation: scan edges in declaration order and
/// add both endpoints of any edge not yet covered.
pub fn solve_vertex_cover_greedy2(graph: &Graph) -> Vec<u32> {
    let mut mask = 0u64;
    let mut cover = Vec::new();
    for &(u, v) in graph.edges() {
        if mask & ((1 << u) | (1 << v)) == 0 {
            mask |= (1 << u) | (1 << v);
            cover.push(u);
            cover.push(v);
        }
    }
    cover.sort_unstable();
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::new(2, vec![(0, 1)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(Graph::new(2, vec![(0, 0)]), Err(Error::Graph(_))));
        assert!(matches!(Graph::new(2, vec![(0, 2)]), Err(Error::Graph(_))));
        assert!(matches!(
            Graph::new(2, vec![(0, 1), (1, 0)]),
            Err(Error::Graph(_))
        ));
        assert!(matches!(Graph::new(0, vec![]), Err(Error::Graph(_))));
    }

    #[test]
    fn exact_cover_k2_prefers_lexicographic() {
        assert_eq!(solve_vertex_cover_exact(&k2()).unwrap(), vec![0]);
    }

    #[test]
    fn exact_cover_k3_is_size_two() {
        assert_eq!(solve_vertex_cover_exact(&k3()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn exact_cover_edgeless_is_empty() {
        let g = Graph::new(3, vec![]).unwrap();
        assert!(solve_vertex_cover_exact(&g).unwrap().is_empty());
    }

    #[test]
    fn greedy2_takes_both_endpoints() {
        assert_eq!(solve_vertex_cover_greedy2(&k2()), vec![0, 1]);
        let g = Graph::new(3, vec![]).unwrap();
        assert!(solve_vertex_cover_greedy2(&g).is_empty());
    }

    #[test]
    fn greedy2_path_skips_covered_edge() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(solve_vertex_cover_greedy2(&path), vec![0, 1]);
    }

    #[test]
    fn greedy2_is_within_twice_optimal() {
        // A few fixed graphs; the acceptance suite covers random ones.
        for (n, edges) in [
            (4usize, vec![(0u32, 1u32), (1, 2), (2, 3), (3, 0)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]),
            (6, vec![(0, 1), (2, 3), (4, 5)]),
        ] {
            let g = Graph::new(n, edges).unwrap();
            let exact = solve_vertex_cover_exact(&g).unwrap();
            let greedy = solve_vertex_cover_greedy2(&g);
            assert!(g.is_cover(&greedy));
            assert!(greedy.len() <= 2 * exact.len());
        }
    }

    #[test]
    fn exact_cap_is_enforced() {
        let g = Graph::new(30, vec![(0, 1)]).unwrap();
        assert!(matches!(
            solve_vertex_cover_exact(&g),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn point_conditioned_values_on_k2() {
        let enc = encode_vertex_cover(&k2(), 1).unwrap();
        assert_eq!(enc.point_conditioned_uncertainty(&[0]).unwrap(), 0.0);
        assert_eq!(enc.point_conditioned_uncertainty(&[1]).unwrap(), 0.0);
        assert_eq!(enc.point_conditioned_uncertainty(&[]).unwrap(), 1.0);
    }

    #[test]
    fn point_conditioned_values_on_k3() {
        let enc = encode_vertex_cover(&k3(), 2).unwrap();
        assert_eq!(enc.point_conditioned_uncertainty(&[0]).unwrap(), 1.0);
        assert_eq!(enc.point_conditioned_uncertainty(&[0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn edgeless_encoding_is_feasible_with_empty_set() {
        let g = Graph::new(3, vec![]).unwrap();
        let enc = encode_vertex_cover(&g, 1).unwrap();
        // Every vertex set covers zero edges, so the target is constant.
        assert_eq!(enc.point_conditioned_uncertainty(&[]).unwrap(), 0.0);
        assert_eq!(enc.point_conditioned_uncertainty(&[1]).unwrap(), 0.0);
    }

    #[test]
    fn reduction_support_row_count_matches_cover_count() {
        // Covers of K2: {0}, {1}, {0,1} -> 3 of 4 vertex assignments; each
        // cover assignment contributes one row, the one non-cover two.
        let enc = encode_vertex_cover(&k2(), 1).unwrap();
        let support = enc.instance().distribution().enumerate_support().unwrap();
        assert_eq!(support.len(), 5);
        let total: f64 = support.rows().iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn encode_rejects_oversized_k() {
        assert!(matches!(
            encode_vertex_cover(&k2(), 3),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn parse_edge_list_infers_vertex_count() {
        let g = parse_edge_list("0 1\n1 2\n", None).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(parse_edge_list("0 1 2\n", None).is_err());
        assert!(parse_edge_list("", None).is_err());
        assert_eq!(
            parse_edge_list("# empty\n", Some(4))
                .unwrap()
                .num_vertices(),
            4
        );
    }
}
