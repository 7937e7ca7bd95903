//! Serialization: the graph exchange format, analysis output, descendent
//! records, parameter arrays, quantum-matroid reports, and verification
//! reports. All rational values are serialized as exact `num/den` strings;
//! field order is fixed so output is byte-stable.

use crate::analysis::Analyzed;
use crate::exact::{rat_from_str, rat_to_string, Rat};
use crate::graphs::{verify_distance_regular, DistanceRegularGraph, FamilyTag, Graph, GraphError};
use crate::leonard::{CaseKind, CaseScalars, ExpandedArray, ParameterArray};
use crate::qmatroid::QuantumMatroidReport;
use crate::subsets::DescendentRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "drgdesc/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("bad graph json: {0}")]
    BadGraph(String),
    #[error("bad parameter array json: {0}")]
    BadArray(String),
}

// ---------------------------------------------------------------------------
// Graph exchange format
// ---------------------------------------------------------------------------

/// Exchange format: `{"n": int, "labels": [string], "edges": [[int,int]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<(u32, u32)>,
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    let mut edges = Vec::new();
    for u in 0..g.n {
        for &v in &g.neighbors[u] {
            if (u as u32) < v {
                edges.push((u as u32, v));
            }
        }
    }
    GraphJson { n: g.n, labels: g.labels.clone(), edges }
}

/// Parses and fully re-verifies a user-supplied graph.
pub fn drg_from_json(gj: &GraphJson) -> Result<DistanceRegularGraph, GraphError> {
    if gj.labels.len() != gj.n {
        return Err(GraphError::InvalidParameters {
            family: "graph-json".into(),
            reason: format!("{} labels for {} vertices", gj.labels.len(), gj.n),
        });
    }
    for &(u, v) in &gj.edges {
        if u as usize >= gj.n || v as usize >= gj.n || u == v {
            return Err(GraphError::InvalidParameters {
                family: "graph-json".into(),
                reason: format!("bad edge ({u},{v})"),
            });
        }
    }
    let g = Graph::from_edges(gj.n, gj.labels.clone(), &gj.edges);
    verify_distance_regular(g, FamilyTag::Custom)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphMeta {
    pub id: String,
    pub n: usize,
    pub diameter: usize,
    pub intersection_array: IntersectionArrayJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionArrayJson {
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

pub fn graph_meta(g: &DistanceRegularGraph) -> GraphMeta {
    GraphMeta {
        id: g.id(),
        n: g.n(),
        diameter: g.d,
        intersection_array: IntersectionArrayJson { b: g.b.clone(), c: g.c.clone() },
    }
}

// ---------------------------------------------------------------------------
// Analysis output
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct OrderingJson {
    pub perm: Vec<usize>,
    pub dual_eigenvalues: Vec<String>,
    pub a_star: Vec<String>,
    pub b_star: Vec<String>,
    pub c_star: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalJson {
    pub d: usize,
    pub q: i64,
    pub alpha: String,
    pub beta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeJson {
    pub schema: String,
    pub graph: GraphMeta,
    pub eigenvalues: Vec<String>,
    pub multiplicities: Vec<i64>,
    /// `krein[i][j][k] = q^k_{ij}`
    pub krein: Vec<Vec<Vec<String>>>,
    pub qpoly_orderings: Vec<OrderingJson>,
    pub chosen_ordering: Vec<usize>,
    pub classical: Option<ClassicalJson>,
    pub parameter_array: ParameterArrayJson,
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn analyze_to_json(a: &Analyzed) -> AnalyzeJson {
    AnalyzeJson {
        schema: SCHEMA.to_string(),
        graph: graph_meta(&a.g),
        eigenvalues: a.scheme.eigenvalues.iter().map(|e| format!("{e}/1")).collect(),
        multiplicities: a.scheme.multiplicities.clone(),
        krein: a
            .scheme
            .krein
            .iter()
            .map(|pl| pl.iter().map(|row| rats(row)).collect())
            .collect(),
        qpoly_orderings: a
            .orderings
            .iter()
            .map(|o| OrderingJson {
                perm: o.perm.clone(),
                dual_eigenvalues: rats(&o.dual_eigenvalues),
                a_star: rats(&o.a_star),
                b_star: rats(&o.b_star),
                c_star: rats(&o.c_star),
            })
            .collect(),
        chosen_ordering: a.ordering.perm.clone(),
        classical: a.classical.as_ref().map(|cp| ClassicalJson {
            d: cp.d,
            q: cp.q,
            alpha: rat_to_string(&cp.alpha),
            beta: rat_to_string(&cp.beta),
        }),
        parameter_array: parameter_array_to_json(&a.parray),
    }
}

// ---------------------------------------------------------------------------
// Parameter arrays
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParameterArrayJson {
    pub case: String,
    pub d: usize,
    pub scalars: BTreeMap<String, String>,
}

pub fn parameter_array_to_json(pa: &ParameterArray) -> ParameterArrayJson {
    ParameterArrayJson {
        case: pa.case().to_string(),
        d: pa.d,
        scalars: pa
            .scalars
            .fields()
            .into_iter()
            .map(|(k, v)| (k.to_string(), rat_to_string(v)))
            .collect(),
    }
}

pub fn parameter_array_from_json(j: &ParameterArrayJson) -> Result<ParameterArray, JsonError> {
    let case = CaseKind::parse(&j.case)
        .ok_or_else(|| JsonError::BadArray(format!("unknown case {}", j.case)))?;
    let get = |k: &str| -> Result<Rat, JsonError> {
        let v = j
            .scalars
            .get(k)
            .ok_or_else(|| JsonError::BadArray(format!("missing scalar {k}")))?;
        rat_from_str(v).map_err(|e| JsonError::BadArray(e.to_string()))
    };
    let scalars = match case {
        CaseKind::I => CaseScalars::I {
            q: get("q")?,
            h: get("h")?,
            h_star: get("h_star")?,
            r1: get("r1")?,
            r2: get("r2")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::IA => CaseScalars::IA {
            q: get("q")?,
            h_star: get("h_star")?,
            r: get("r")?,
            s: get("s")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::II => CaseScalars::II {
            h: get("h")?,
            h_star: get("h_star")?,
            r1: get("r1")?,
            r2: get("r2")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::IIA => CaseScalars::IIA {
            h: get("h")?,
            r: get("r")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::IIB => CaseScalars::IIB {
            h_star: get("h_star")?,
            r: get("r")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::IIC => CaseScalars::IIC {
            r: get("r")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
        CaseKind::III => CaseScalars::III {
            h: get("h")?,
            h_star: get("h_star")?,
            r1: get("r1")?,
            r2: get("r2")?,
            s: get("s")?,
            s_star: get("s_star")?,
            theta0: get("theta0")?,
            theta0_star: get("theta0_star")?,
        },
    };
    Ok(ParameterArray { d: j.d, scalars })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpandedArrayJson {
    pub d: usize,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub varphi: Vec<String>,
    pub phi: Vec<String>,
}

pub fn expanded_to_json(ea: &ExpandedArray) -> ExpandedArrayJson {
    ExpandedArrayJson {
        d: ea.d,
        theta: rats(&ea.theta),
        theta_star: rats(&ea.theta_star),
        varphi: rats(&ea.varphi),
        phi: rats(&ea.phi),
    }
}

// ---------------------------------------------------------------------------
// Descendent records
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RecordJson {
    pub vertices: Vec<String>,
    pub w: usize,
    pub w_star: usize,
    pub rho: usize,
    pub convex: bool,
    pub completely_regular: bool,
    pub strongly_closed: bool,
    pub induced_connected: bool,
    pub induced_array: Option<IntersectionArrayJson>,
    pub predicted_connected: Option<bool>,
    pub generator: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescendentsJson {
    pub schema: String,
    pub graph: GraphMeta,
    pub mode: String,
    /// whether the mode guarantees completeness of the list
    pub complete: bool,
    pub budget_exhausted: bool,
    pub count: usize,
    pub records: Vec<RecordJson>,
}

pub fn record_to_json(a: &Analyzed, r: &DescendentRecord) -> RecordJson {
    RecordJson {
        vertices: r
            .profile
            .vertices
            .iter()
            .map(|&v| a.g.graph.labels[v as usize].clone())
            .collect(),
        w: r.profile.w,
        w_star: r.profile.w_star,
        rho: r.profile.rho,
        convex: r.profile.is_convex,
        completely_regular: r.profile.is_completely_regular,
        strongly_closed: r.profile.is_strongly_closed,
        induced_connected: r.induced_connected,
        induced_array: r.induced_b.as_ref().map(|b| IntersectionArrayJson {
            b: b.clone(),
            c: r.induced_c.clone().unwrap_or_default(),
        }),
        predicted_connected: r.predicted_connected,
        generator: r.generator.label(),
    }
}

pub fn descendents_to_json(
    a: &Analyzed,
    mode: &str,
    complete: bool,
    budget_exhausted: bool,
    records: &[DescendentRecord],
) -> DescendentsJson {
    DescendentsJson {
        schema: SCHEMA.to_string(),
        graph: graph_meta(&a.g),
        mode: mode.to_string(),
        complete,
        budget_exhausted,
        count: records.len(),
        records: records.iter().map(|r| record_to_json(a, r)).collect(),
    }
}

// ---------------------------------------------------------------------------
// Quantum matroid report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct QmatroidJson {
    pub schema: String,
    pub graph: GraphMeta,
    pub mode: String,
    pub complete: bool,
    pub family_size: usize,
    pub qm1: bool,
    pub qm2: bool,
    pub qm3: bool,
    pub qm4: bool,
    pub line_regular_q: Option<i64>,
    pub dual_line_regular_beta: Option<i64>,
    pub zigzag_regular_alpha: Option<i64>,
    pub ud_property: Vec<bool>,
    pub intersection_closed: bool,
    pub pair_counts_ok: Option<bool>,
    pub witnesses: Vec<String>,
}

pub fn qmatroid_to_json(
    a: &Analyzed,
    mode: &str,
    complete: bool,
    family_size: usize,
    r: &QuantumMatroidReport,
) -> QmatroidJson {
    QmatroidJson {
        schema: SCHEMA.to_string(),
        graph: graph_meta(&a.g),
        mode: mode.to_string(),
        complete,
        family_size,
        qm1: r.qm1,
        qm2: r.qm2,
        qm3: r.qm3,
        qm4: r.qm4,
        line_regular_q: r.line_regular_q,
        dual_line_regular_beta: r.dual_line_regular_beta,
        zigzag_regular_alpha: r.zigzag_regular_alpha,
        ud_property: r.ud_property.clone(),
        intersection_closed: r.intersection_closed,
        pair_counts_ok: r.pair_counts_ok,
        witnesses: r.witnesses.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::graphs::hamming;
    use crate::leonard::expand;

    #[test]
    fn graph_json_round_trip() {
        let g = hamming(3, 2).unwrap();
        let gj = graph_to_json(&g.graph);
        let back = drg_from_json(&gj).unwrap();
        assert_eq!(back.b, g.b);
        assert_eq!(back.c, g.c);
        assert_eq!(back.graph.labels, g.graph.labels);
    }

    #[test]
    fn graph_json_rejects_bad_input() {
        let gj = GraphJson { n: 2, labels: vec!["a".into()], edges: vec![] };
        assert!(drg_from_json(&gj).is_err());
        let gj = GraphJson {
            n: 2,
            labels: vec!["a".into(), "b".into()],
            edges: vec![(0, 2)],
        };
        assert!(drg_from_json(&gj).is_err());
    }

    #[test]
    fn parameter_array_json_round_trip() {
        let a = analyze(hamming(3, 2).unwrap()).unwrap();
        let j = parameter_array_to_json(&a.parray);
        assert_eq!(j.case, "IIC");
        let back = parameter_array_from_json(&j).unwrap();
        assert_eq!(back, a.parray);
        assert_eq!(expand(&back).unwrap(), a.expanded);
    }

    #[test]
    fn analyze_json_is_deterministic() {
        let a1 = analyze(hamming(3, 2).unwrap()).unwrap();
        let a2 = analyze(hamming(3, 2).unwrap()).unwrap();
        let s1 = serde_json::to_string_pretty(&analyze_to_json(&a1)).unwrap();
        let s2 = serde_json::to_string_pretty(&analyze_to_json(&a2)).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.contains("\"schema\": \"drgdesc/1\""));
    }
}
