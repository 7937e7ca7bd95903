//! Constructors for the shipped graph families at desk-scale parameters.
//!
//! Every constructor enforces the global vertex budget, builds canonical
//! vertex labels, and runs the exhaustive distance-regularity verification
//! before returning.

use super::gf::{self, Gf, Row};
use super::{verify_distance_regular, DistanceRegularGraph, FamilyTag, Graph, GraphError};
use std::sync::OnceLock;

/// Vertex budget enforced by every constructor. Defaults to 4096; the
/// `DRGDESC_SIZE_BUDGET` environment variable overrides it.
pub fn size_budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("DRGDESC_SIZE_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(4096)
    })
}

fn check_budget(family: &str, requested: u64) -> Result<(), GraphError> {
    let budget = size_budget();
    if requested > budget {
        return Err(GraphError::BudgetExceeded {
            family: family.to_string(),
            requested,
            budget,
        });
    }
    Ok(())
}

/// Hamming graph H(d, ℓ): words of length `d` over `ℓ` symbols, adjacent at
/// Hamming distance 1.
pub fn hamming(d: usize, l: usize) -> Result<DistanceRegularGraph, GraphError> {
    if d < 1 || l < 2 {
        return Err(GraphError::InvalidParameters {
            family: "hamming".into(),
            reason: format!("need d >= 1, l >= 2 (got d={d}, l={l})"),
        });
    }
    let n = (l as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    check_budget("hamming", n)?;
    let n = n as usize;
    let words: Vec<Vec<u8>> = (0..n).map(|mut v| {
        let mut w = vec![0u8; d];
        for slot in w.iter_mut() {
            *slot = (v % l) as u8;
            v /= l;
        }
        w
    }).collect();
    let labels = words
        .iter()
        .map(|w| w.iter().map(|x| x.to_string()).collect::<String>())
        .collect();
    let graph = Graph::from_predicate(labels, |u, v| {
        words[u].iter().zip(&words[v]).filter(|(a, b)| a != b).count() == 1
    });
    verify_distance_regular(graph, FamilyTag::Hamming { d, l })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Canonical label for a subset: 1-based sorted elements joined by commas.
pub fn subset_label(subset: &[usize]) -> String {
    subset
        .iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Johnson graph J(ν, d): d-subsets of a ν-set, adjacent when the
/// intersection has size d−1.
pub fn johnson(nu: usize, d: usize) -> Result<DistanceRegularGraph, GraphError> {
    if d < 1 || nu < 2 * d {
        return Err(GraphError::InvalidParameters {
            family: "johnson".into(),
            reason: format!("need 1 <= d and nu >= 2d (got nu={nu}, d={d})"),
        });
    }
    check_budget("johnson", binomial_u64(nu as u64, d as u64))?;
    let subsets = combinations(nu, d);
    let labels = subsets.iter().map(|s| subset_label(s)).collect();
    let graph = Graph::from_predicate(labels, |u, v| {
        intersect_size(&subsets[u], &subsets[v]) == d - 1
    });
    verify_distance_regular(graph, FamilyTag::Johnson { nu, d })
}

fn intersect_size(a: &[usize], b: &[usize]) -> usize {
    let mut i = 0;
    let mut j = 0;
    let mut c = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// The Shrikhande graph: Cayley graph on Z_4 × Z_4 with connection set
/// {±(1,0), ±(0,1), ±(1,1)}. Strongly regular (16, 6, 2, 2) with the same
/// parameters as H(2,4) but not isomorphic to it.
pub fn shrikhande() -> Graph {
    let labels = (0..16)
        .map(|v| format!("{},{}", v / 4, v % 4))
        .collect();
    let conn: Vec<(u8, u8)> = vec![(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    Graph::from_predicate(labels, |u, v| {
        let (ua, ub) = ((u / 4) as u8, (u % 4) as u8);
        let (va, vb) = ((v / 4) as u8, (v % 4) as u8);
        let diff = ((va + 4 - ua) % 4, (vb + 4 - ub) % 4);
        conn.contains(&diff)
    })
}

/// Doob graph: direct product of `d1` Shrikhande graphs and `d2` copies of
/// K_4. Shares its intersection array with H(2·d1 + d2, 4).
pub fn doob(d1: usize, d2: usize) -> Result<DistanceRegularGraph, GraphError> {
    if d1 + d2 == 0 {
        return Err(GraphError::InvalidParameters {
            family: "doob".into(),
            reason: "need at least one factor".into(),
        });
    }
    let n = 16u64
        .checked_pow(d1 as u32)
        .and_then(|x| x.checked_mul(4u64.pow(d2 as u32)))
        .unwrap_or(u64::MAX);
    check_budget("doob", n)?;
    let shr = shrikhande();
    let k4 = Graph::from_predicate((0..4).map(|i| i.to_string()).collect(), |_, _| true);
    let factors: Vec<&Graph> = std::iter::repeat_n(&shr, d1)
        .chain(std::iter::repeat_n(&k4, d2))
        .collect();
    let sizes: Vec<usize> = factors.iter().map(|f| f.n).collect();
    let n = n as usize;
    // mixed-radix decode, first factor varies slowest
    let decode = |mut v: usize| -> Vec<usize> {
        let mut coords = vec![0usize; sizes.len()];
        for (i, &s) in sizes.iter().enumerate().rev() {
            coords[i] = v % s;
            v /= s;
        }
        coords
    };
    let labels = (0..n)
        .map(|v| {
            decode(v)
                .iter()
                .zip(&factors)
                .map(|(&c, f)| f.labels[c].clone())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let graph = Graph::from_predicate(labels, |u, v| {
        let cu = decode(u);
        let cv = decode(v);
        let mut diff = None;
        for i in 0..cu.len() {
            if cu[i] != cv[i] {
                if diff.is_some() {
                    return false;
                }
                diff = Some(i);
            }
        }
        match diff {
            Some(i) => factors[i].adjacent(cu[i], cv[i]),
            None => false,
        }
    });
    verify_distance_regular(graph, FamilyTag::Doob { d1, d2 })
}

/// Halved cube ½H(n,2): even-weight vectors of F_2^n, adjacent at Hamming
/// distance 2. Diameter ⌊n/2⌋.
pub fn halved_cube(n: usize) -> Result<DistanceRegularGraph, GraphError> {
    if n < 4 {
        return Err(GraphError::InvalidParameters {
            family: "halved_cube".into(),
            reason: format!("need n >= 4 (got {n})"),
        });
    }
    check_budget("halved_cube", 1u64 << (n - 1))?;
    let vecs: Vec<u32> = (0..(1u32 << n)).filter(|v| v.count_ones() % 2 == 0).collect();
    let labels = vecs
        .iter()
        .map(|&v| (0..n).map(|i| ((v >> i) & 1).to_string()).collect::<String>())
        .collect();
    let graph = Graph::from_predicate(labels, |u, v| (vecs[u] ^ vecs[v]).count_ones() == 2);
    verify_distance_regular(graph, FamilyTag::HalvedCube { n })
}

/// Grassmann graph J_q(ν, d): d-dimensional subspaces of F_q^ν, adjacent
/// when the intersection has dimension d−1. Only q ∈ {2, 3} is shipped.
pub fn grassmann(q: u8, nu: usize, d: usize) -> Result<DistanceRegularGraph, GraphError> {
    let Some(field) = Gf::new(q) else {
        return Err(GraphError::InvalidParameters {
            family: "grassmann".into(),
            reason: format!("only q in {{2,3}} is supported (got {q})"),
        });
    };
    if d < 1 || nu < 2 * d {
        return Err(GraphError::InvalidParameters {
            family: "grassmann".into(),
            reason: format!("need 1 <= d and nu >= 2d (got nu={nu}, d={d})"),
        });
    }
    let count = crate::exact::qbinomial(nu as u32, d as u32, q as i64)
        .expect("q != 0")
        .to_integer();
    let count: u64 = count.try_into().map_err(|_| GraphError::BudgetExceeded {
        family: "grassmann".into(),
        requested: u64::MAX,
        budget: size_budget(),
    })?;
    check_budget("grassmann", count)?;
    let subs = gf::subspaces(field, nu, d);
    let labels = subs.iter().map(|b| gf::basis_label(b)).collect();
    let graph = Graph::from_predicate(labels, |u, v| {
        gf::sum_dim(field, &subs[u], &subs[v]) == d + 1
    });
    verify_distance_regular(graph, FamilyTag::Grassmann { q, nu, d })
}

/// Bilinear forms graph Bil_q(d, e): d×e matrices over F_q, adjacent when
/// the difference has rank 1; the distance between two matrices is the rank
/// of their difference.
pub fn bilinear_forms(q: u8, d: usize, e: usize) -> Result<DistanceRegularGraph, GraphError> {
    let Some(field) = Gf::new(q) else {
        return Err(GraphError::InvalidParameters {
            family: "bilinear_forms".into(),
            reason: format!("only q in {{2,3}} is supported (got {q})"),
        });
    };
    if d < 1 || e < d {
        return Err(GraphError::InvalidParameters {
            family: "bilinear_forms".into(),
            reason: format!("need 1 <= d <= e (got d={d}, e={e})"),
        });
    }
    let n = (q as u64).checked_pow((d * e) as u32).unwrap_or(u64::MAX);
    check_budget("bilinear_forms", n)?;
    let n = n as usize;
    let qs = q as usize;
    // vertex v encodes the matrix entries in row-major base-q digits
    let decode = |mut v: usize| -> Vec<Row> {
        let mut m = vec![vec![0u8; e]; d];
        for r in 0..d {
            for c in 0..e {
                m[r][c] = (v % qs) as u8;
                v /= qs;
            }
        }
        m
    };
    let labels = (0..n)
        .map(|v| {
            decode(v)
                .iter()
                .flat_map(|r| r.iter().map(|x| x.to_string()))
                .collect::<String>()
        })
        .collect();
    let graph = Graph::from_predicate(labels, |u, v| {
        let mu = decode(u);
        let mv = decode(v);
        let diff: Vec<Row> = (0..d)
            .map(|r| (0..e).map(|c| field.sub(mu[r][c], mv[r][c])).collect())
            .collect();
        gf::rank(field, &diff) == 1
    });
    verify_distance_regular(graph, FamilyTag::BilinearForms { q, d, e })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_small() {
        let g = hamming(3, 2).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.d, 3);
        assert_eq!(g.b, vec![3, 2, 1]);
        assert_eq!(g.c, vec![1, 2, 3]);

        let g = hamming(2, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.d, 2);

        let g = hamming(4, 2).unwrap();
        assert_eq!(g.b, vec![4, 3, 2, 1]);
        assert_eq!(g.c, vec![1, 2, 3, 4]);
    }

    #[test]
    fn johnson_small() {
        let g = johnson(6, 3).unwrap();
        assert_eq!(g.n(), 20);
        assert_eq!(g.d, 3);
        assert_eq!(g.b, vec![9, 4, 1]);
        assert_eq!(g.c, vec![1, 4, 9]);

        // octahedron
        let g = johnson(4, 2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.d, 2);

        let g = johnson(7, 3).unwrap();
        assert_eq!(g.n(), 35);
        assert_eq!(g.b[0], 12);
    }

    #[test]
    fn johnson_budget() {
        assert!(matches!(
            johnson(99, 3),
            Err(GraphError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn shrikhande_is_srg_16_6_2_2() {
        // brute-force strongly-regular parameter check of the Cayley construction
        let g = shrikhande();
        assert_eq!(g.n, 16);
        for v in 0..16 {
            assert_eq!(g.degree(v), 6);
        }
        for u in 0..16 {
            for v in (u + 1)..16 {
                let common = g.neighbors[u]
                    .iter()
                    .filter(|w| g.neighbors[v].contains(w))
                    .count();
                if g.adjacent(u, v) {
                    assert_eq!(common, 2, "lambda at ({u},{v})");
                } else {
                    assert_eq!(common, 2, "mu at ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn doob_matches_hamming_array_but_not_structure() {
        let doob11 = doob(1, 1).unwrap();
        assert_eq!(doob11.n(), 64);
        assert_eq!(doob11.b, vec![9, 6, 3]);
        assert_eq!(doob11.c, vec![1, 2, 3]);
        let h34 = hamming(3, 4).unwrap();
        assert_eq!(doob11.b, h34.b);
        assert_eq!(doob11.c, h34.c);

        // equal arrays, non-isomorphic graphs: count triangles through an edge
        // whose third vertex lies in a 4-clique with both endpoints.
        // In H(3,4) every edge lies in a K_4; in Doob(1,1) the Shrikhande
        // edges do not. Distinguish by the number of edges contained in a
        // 4-clique.
        let count_k4_edges = |g: &DistanceRegularGraph| {
            let mut edges_in_k4 = 0usize;
            for u in 0..g.n() {
                for &v in &g.graph.neighbors[u] {
                    let v = v as usize;
                    if v <= u {
                        continue;
                    }
                    let common: Vec<usize> = g.graph.neighbors[u]
                        .iter()
                        .map(|&w| w as usize)
                        .filter(|&w| g.graph.adjacent(v, w))
                        .collect();
                    let mut in_k4 = false;
                    for (i, &w1) in common.iter().enumerate() {
                        for &w2 in &common[i + 1..] {
                            if g.graph.adjacent(w1, w2) {
                                in_k4 = true;
                            }
                        }
                    }
                    if in_k4 {
                        edges_in_k4 += 1;
                    }
                }
            }
            edges_in_k4
        };
        let doob_k4 = count_k4_edges(&doob11);
        let ham_k4 = count_k4_edges(&h34);
        assert_eq!(ham_k4, h34.n() * h34.valency() as usize / 2);
        assert!(doob_k4 < ham_k4, "Doob must have edges outside any K4");
    }

    #[test]
    fn doob_zero_shrikhande_factors_is_hamming() {
        let g = doob(0, 3).unwrap();
        let h = hamming(3, 4).unwrap();
        assert_eq!(g.b, h.b);
        assert_eq!(g.c, h.c);
        assert_eq!(g.n(), 64);
    }

    #[test]
    fn halved_cube_small() {
        // brute-force distance matrix checks
        let g = halved_cube(4).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.d, 2);

        let g = halved_cube(5).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.d, 2);
        assert_eq!(g.b[0], 10);

        let g = halved_cube(6).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.d, 3);
        assert_eq!(g.b, vec![15, 6, 1]);
        assert_eq!(g.c, vec![1, 6, 15]);
    }

    #[test]
    fn grassmann_small() {
        let g = grassmann(2, 4, 2).unwrap();
        assert_eq!(g.n(), 35);
        assert_eq!(g.d, 2);

        let g = grassmann(3, 4, 2).unwrap();
        assert_eq!(g.n(), 130);
        assert_eq!(g.d, 2);
    }

    #[test]
    fn bilinear_small() {
        let g = bilinear_forms(2, 2, 2).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.d, 2);

        let g = bilinear_forms(2, 2, 3).unwrap();
        assert_eq!(g.n(), 64);
        assert_eq!(g.d, 2);
        assert_eq!(g.b[0], 21);
    }

    #[test]
    fn bilinear_distance_is_rank_of_difference() {
        let g = bilinear_forms(2, 3, 3).unwrap();
        assert_eq!(g.n(), 512);
        assert_eq!(g.d, 3);
        let field = Gf(2);
        // decode labels back to matrices and compare BFS distance to rank
        let decode = |label: &str| -> Vec<Row> {
            let digits: Vec<u8> = label.bytes().map(|b| b - b'0').collect();
            digits.chunks(3).map(|c| c.to_vec()).collect()
        };
        for u in (0..512).step_by(37) {
            for v in (0..512).step_by(41) {
                let mu = decode(&g.graph.labels[u]);
                let mv = decode(&g.graph.labels[v]);
                let diff: Vec<Row> = (0..3)
                    .map(|r| (0..3).map(|c| field.sub(mu[r][c], mv[r][c])).collect())
                    .collect();
                assert_eq!(g.dist.get(u, v), gf::rank(field, &diff));
            }
        }
    }

    #[test]
    fn distance_k_and_last_subconstituent() {
        let g = hamming(3, 2).unwrap();
        let d3 = super::super::distance_k_graph(&g, 3);
        // antipodal pairing: perfect matching on 8 vertices
        assert_eq!(d3.edge_count(), 4);
        for v in 0..8 {
            assert_eq!(d3.degree(v), 1);
        }

        let h4 = hamming(4, 2).unwrap();
        let idx = h4.graph.label_index();
        let x = idx["0000"];
        let last = super::super::last_subconstituent(&h4, x);
        assert_eq!(last.n, 1);
        assert_eq!(last.labels, vec!["1111".to_string()]);
    }

    #[test]
    fn induced_johnson_promotion() {
        // vertices of J(6,3) containing element 1 induce a copy of J(5,2)
        use super::super::{induced_subgraph, verify_distance_regular, FamilyTag};
        let g = johnson(6, 3).unwrap();
        let ys: Vec<usize> = (0..g.n())
            .filter(|&v| g.graph.labels[v].split(',').any(|t| t == "1"))
            .collect();
        assert_eq!(ys.len(), 10);
        let sub = induced_subgraph(&g.graph, &ys).unwrap();
        let sub_drg = verify_distance_regular(sub, FamilyTag::Custom).unwrap();
        let j52 = johnson(5, 2).unwrap();
        assert_eq!(sub_drg.b, j52.b);
        assert_eq!(sub_drg.c, j52.c);

        // label-level isomorphism: dropping the fixed element gives J(5,2)
        // on the ground set {2,…,6}
        let mut reduced: Vec<Vec<&str>> = sub_drg
            .graph
            .labels
            .iter()
            .map(|l| l.split(',').filter(|t| *t != "1").collect())
            .collect();
        reduced.sort();
        reduced.dedup();
        assert_eq!(reduced.len(), 10);
    }
}
