//! Graphs and distance-regularity verification.
//!
//! Constructors for the shipped families live in [`families`]; the small
//! finite-field arithmetic they need (F_2 and F_3 only) lives in [`gf`].

pub mod families;
pub mod gf;

use std::collections::HashMap;
use std::collections::VecDeque;

pub use families::{
    bilinear_forms, doob, grassmann, halved_cube, hamming, johnson, shrikhande, size_budget,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("size budget exceeded: {family} with {requested} vertices (budget {budget})")]
    BudgetExceeded { family: String, requested: u64, budget: u64 },
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not distance-regular: {witness}")]
    NotDistanceRegular { witness: String },
    #[error("empty vertex set")]
    EmptyVertexSet,
}

/// Which constructor produced a graph; drives the classified-form generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyTag {
    Hamming { d: usize, l: usize },
    Johnson { nu: usize, d: usize },
    Doob { d1: usize, d2: usize },
    HalvedCube { n: usize },
    Grassmann { q: u8, nu: usize, d: usize },
    BilinearForms { q: u8, d: usize, e: usize },
    Custom,
}

impl FamilyTag {
    pub fn id(&self) -> String {
        match self {
            FamilyTag::Hamming { d, l } => format!("hamming({d},{l})"),
            FamilyTag::Johnson { nu, d } => format!("johnson({nu},{d})"),
            FamilyTag::Doob { d1, d2 } => format!("doob({d1},{d2})"),
            FamilyTag::HalvedCube { n } => format!("halved_cube({n})"),
            FamilyTag::Grassmann { q, nu, d } => format!("grassmann({q},{nu},{d})"),
            FamilyTag::BilinearForms { q, d, e } => format!("bilinear_forms({q},{d},{e})"),
            FamilyTag::Custom => "custom".to_string(),
        }
    }
}

/// Simple undirected graph with canonical per-vertex label strings.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub neighbors: Vec<Vec<u32>>,
    pub labels: Vec<String>,
}

impl Graph {
    pub fn from_edges(n: usize, labels: Vec<String>, edges: &[(u32, u32)]) -> Graph {
        assert_eq!(labels.len(), n);
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v, "loops are not allowed");
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
            nb.dedup();
        }
        Graph { n, neighbors, labels }
    }

    /// Builds the adjacency from a predicate over vertex index pairs.
    pub fn from_predicate(
        labels: Vec<String>,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Graph {
        let n = labels.len();
        let mut neighbors = vec![Vec::new(); n];
        for u in 0..n {
            for v in (u + 1)..n {
                if adjacent(u, v) {
                    neighbors[u].push(v as u32);
                    neighbors[v].push(u as u32);
                }
            }
        }
        Graph { n, neighbors, labels }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Map from label to vertex index.
    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    /// BFS distances from `src`; `u8::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<u8> {
        let mut dist = vec![u8::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &v in &self.neighbors[u] {
                if dist[v as usize] == u8::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }
}

/// Flat row-major distance matrix.
#[derive(Debug, Clone)]
pub struct DistMatrix {
    pub n: usize,
    data: Vec<u8>,
}

impl DistMatrix {
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.data[u * self.n + v] as usize
    }
}

/// A verified distance-regular graph: the adjacency together with the full
/// distance matrix and the intersection array `{b_0..b_{d-1}; c_1..c_d}`.
#[derive(Debug, Clone)]
pub struct DistanceRegularGraph {
    pub graph: Graph,
    pub family: FamilyTag,
    pub d: usize,
    pub dist: DistMatrix,
    /// `b_0, …, b_{d-1}`
    pub b: Vec<i64>,
    /// `c_1, …, c_d`
    pub c: Vec<i64>,
    /// class sizes `k_0, …, k_d`
    pub k: Vec<i64>,
}

impl DistanceRegularGraph {
    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn valency(&self) -> i64 {
        self.b[0]
    }

    pub fn b_i(&self, i: usize) -> i64 {
        if i < self.d {
            self.b[i]
        } else {
            0
        }
    }

    pub fn c_i(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    pub fn a_i(&self, i: usize) -> i64 {
        self.valency() - self.b_i(i) - self.c_i(i)
    }

    /// `{b_0,…,b_{d-1}; c_1,…,c_d}` as a display string.
    pub fn intersection_array_string(&self) -> String {
        let bs: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        let cs: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        format!("{{{}; {}}}", bs.join(","), cs.join(","))
    }

    pub fn id(&self) -> String {
        match &self.family {
            FamilyTag::Custom => format!("custom(n={})", self.n()),
            tag => tag.id(),
        }
    }
}

/// Verifies distance-regularity exhaustively: the numbers `b_i`, `c_i` must
/// be independent of the vertex pair across all ordered pairs.
pub fn verify_distance_regular(
    graph: Graph,
    family: FamilyTag,
) -> Result<DistanceRegularGraph, GraphError> {
    let n = graph.n;
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    let mut data = vec![0u8; n * n];
    for v in 0..n {
        let row = graph.bfs(v);
        if row.contains(&u8::MAX) {
            return Err(GraphError::NotConnected);
        }
        data[v * n..(v + 1) * n].copy_from_slice(&row);
    }
    let dist = DistMatrix { n, data };
    let d = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .map(|(u, v)| dist.get(u, v))
        .max()
        .unwrap();

    let k0 = graph.degree(0);
    let mut b = vec![-1i64; d + 1];
    let mut c = vec![-1i64; d + 1];
    for x in 0..n {
        if graph.degree(x) != k0 {
            return Err(GraphError::NotDistanceRegular {
                witness: format!("vertex {x} has degree {} != {k0}", graph.degree(x)),
            });
        }
        for y in 0..n {
            let i = dist.get(x, y);
            let mut closer = 0i64;
            let mut further = 0i64;
            for &z in &graph.neighbors[y] {
                let dz = dist.get(x, z as usize);
                if dz + 1 == i {
                    closer += 1;
                } else if dz == i + 1 {
                    further += 1;
                }
            }
            if b[i] < 0 {
                b[i] = further;
                c[i] = closer;
            } else if b[i] != further || c[i] != closer {
                return Err(GraphError::NotDistanceRegular {
                    witness: format!(
                        "pair ({x},{y}) at distance {i}: (b,c)=({further},{closer}) vs ({},{})",
                        b[i], c[i]
                    ),
                });
            }
        }
    }
    if b[d] != 0 || c[0] != 0 {
        return Err(GraphError::NotDistanceRegular {
            witness: "boundary intersection numbers nonzero".to_string(),
        });
    }
    // class sizes from the intersection array: k_{i+1} = k_i b_i / c_{i+1}
    let mut k = vec![1i64; d + 1];
    for i in 0..d {
        let num = k[i] * b[i];
        if num % c[i + 1] != 0 {
            return Err(GraphError::NotDistanceRegular {
                witness: format!("k_{} = {} * {} / {} is not integral", i + 1, k[i], b[i], c[i + 1]),
            });
        }
        k[i + 1] = num / c[i + 1];
    }
    debug_assert_eq!(k.iter().sum::<i64>(), n as i64);

    Ok(DistanceRegularGraph {
        graph,
        family,
        d,
        dist,
        b: b[..d].to_vec(),
        c: c[1..].to_vec(),
        k,
    })
}

/// The graph on the same vertices whose edges are the pairs at distance `k`.
pub fn distance_k_graph(g: &DistanceRegularGraph, k: usize) -> Graph {
    assert!(k >= 1 && k <= g.d, "distance class out of range");
    Graph::from_predicate(g.graph.labels.clone(), |u, v| g.dist.get(u, v) == k)
}

/// Subgraph induced on `vertices` (which keep their labels).
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<Graph, GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let labels = vertices.iter().map(|&v| g.labels[v].clone()).collect();
    Ok(Graph::from_predicate(labels, |i, j| {
        g.adjacent(vertices[i], vertices[j])
    }))
}

/// The graph `Γ_d^2(x)`: vertex set `Γ_d(x)`, adjacent when at distance 2
/// in the ambient graph.
pub fn last_subconstituent(g: &DistanceRegularGraph, x: usize) -> Graph {
    let far: Vec<usize> = (0..g.n()).filter(|&v| g.dist.get(x, v) == g.d).collect();
    let labels = far.iter().map(|&v| g.graph.labels[v].clone()).collect();
    Graph::from_predicate(labels, |i, j| g.dist.get(far[i], far[j]) == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_distance_regular() {
        let labels = (0..6).map(|i| i.to_string()).collect();
        let g = Graph::from_edges(6, labels, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let drg = verify_distance_regular(g, FamilyTag::Custom).unwrap();
        assert_eq!(drg.d, 3);
        assert_eq!(drg.b, vec![2, 1, 1]);
        assert_eq!(drg.c, vec![1, 1, 2]);
        assert_eq!(drg.k, vec![1, 2, 2, 1]);
    }

    #[test]
    fn path_is_not_distance_regular() {
        let labels = (0..4).map(|i| i.to_string()).collect();
        let g = Graph::from_edges(4, labels, &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(
            verify_distance_regular(g, FamilyTag::Custom),
            Err(GraphError::NotDistanceRegular { .. })
        ));
    }

    #[test]
    fn disconnected_rejected() {
        let labels = (0..4).map(|i| i.to_string()).collect();
        let g = Graph::from_edges(4, labels, &[(0, 1), (2, 3)]);
        assert!(matches!(
            verify_distance_regular(g, FamilyTag::Custom),
            Err(GraphError::NotConnected)
        ));
    }
}
