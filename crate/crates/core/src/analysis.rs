//! One-stop analysis bundle for a distance-regular graph: scheme, chosen
//! Q-polynomial ordering, classical parameters, and fitted parameter array.

use crate::graphs::DistanceRegularGraph;
use crate::leonard::{
    classical_from_case, detect_classical, fit_from_graph, ClassicalParameters, ExpandedArray,
    LeonardError, ParameterArray,
};
use crate::scheme::{
    build_scheme, find_qpoly_orderings, standard_ordering_for_classical, QPolyOrdering,
    SchemeData, SchemeError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("graph admits no Q-polynomial ordering")]
    NotQPolynomial,
    #[error(transparent)]
    Leonard(#[from] LeonardError),
    #[error("classical-parameter routes disagree: search gave {search}, case table gave {table}")]
    ClassicalMismatch { search: String, table: String },
}

/// A graph together with everything the subset machinery needs.
///
/// The dual width of a subset depends on the choice of Q-polynomial
/// ordering; this bundle fixes it once: the standard ordering when the graph
/// has classical parameters, otherwise the lexicographically first
/// admissible one.
#[derive(Debug, Clone)]
pub struct Analyzed {
    pub g: DistanceRegularGraph,
    pub scheme: SchemeData,
    pub orderings: Vec<QPolyOrdering>,
    pub ordering: QPolyOrdering,
    pub classical: Option<ClassicalParameters>,
    pub parray: ParameterArray,
    pub expanded: ExpandedArray,
}

impl Analyzed {
    pub fn d(&self) -> usize {
        self.g.d
    }
    pub fn n(&self) -> usize {
        self.g.n()
    }
}

/// Builds the scheme, picks the ordering, fits the parameter array, and
/// cross-checks the two classical-parameter detection routes against each
/// other.
pub fn analyze(g: DistanceRegularGraph) -> Result<Analyzed, AnalyzeError> {
    let scheme = build_scheme(&g)?;
    let orderings = find_qpoly_orderings(&scheme);
    if orderings.is_empty() {
        return Err(AnalyzeError::NotQPolynomial);
    }
    let classical = detect_classical(&g.b, &g.c);
    let ordering = match &classical {
        Some(cp) => standard_ordering_for_classical(&scheme, cp)?,
        None => orderings[0].clone(),
    };
    let (parray, expanded) = fit_from_graph(&g, &scheme, &ordering)?;

    // the intersection-array search and the case-table mapping must agree
    let table_route = classical_from_case(&parray);
    if g.d >= 2 && classical != table_route {
        let show = |o: &Option<ClassicalParameters>| match o {
            None => "none".to_string(),
            Some(cp) => format!(
                "({},{},{},{})",
                cp.d,
                cp.q,
                crate::exact::rat_to_string(&cp.alpha),
                crate::exact::rat_to_string(&cp.beta)
            ),
        };
        return Err(AnalyzeError::ClassicalMismatch {
            search: show(&classical),
            table: show(&table_route),
        });
    }

    Ok(Analyzed {
        g,
        scheme,
        orderings,
        ordering,
        classical,
        parray,
        expanded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{hamming, johnson};

    #[test]
    fn analyze_builds_standard_ordering() {
        let a = analyze(hamming(3, 2).unwrap()).unwrap();
        assert!(a.classical.is_some());
        assert_eq!(a.ordering.perm, vec![0, 1, 2, 3]);
        assert_eq!(a.orderings.len(), 1);

        let a = analyze(johnson(6, 3).unwrap()).unwrap();
        assert_eq!(a.ordering.perm, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hexagon_is_outside_the_rational_case_catalog() {
        // C_6 is Q-polynomial with an integral spectrum, but its Leonard
        // system has base q^2 - q + 1 = 0 (a primitive sixth root of
        // unity), so no case fits over the rationals and analysis reports
        // that rather than mislabeling the array.
        use crate::graphs::{verify_distance_regular, FamilyTag, Graph};
        let labels = (0..6).map(|i| i.to_string()).collect();
        let g = Graph::from_edges(6, labels, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let drg = verify_distance_regular(g, FamilyTag::Custom).unwrap();
        match analyze(drg) {
            Err(AnalyzeError::Leonard(LeonardError::NoCaseFits)) => {}
            other => panic!("expected NoCaseFits, got {other:?}"),
        }
    }
}
