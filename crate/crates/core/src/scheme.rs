//! The association scheme of a distance-regular graph: eigenvalues from the
//! tridiagonal intersection matrix, eigenmatrices P and Q, primitive
//! idempotents, Krein parameters, and admissible Q-polynomial orderings.
//!
//! Eigenvalues are extracted from the (d+1)×(d+1) intersection matrix, never
//! from the |X|×|X| adjacency matrix. Graphs with a non-integral spectrum
//! are rejected; every family this crate constructs has an integral one.

use crate::exact::{
    char_poly_tridiagonal, integer_roots, q_int, rat, ExactMatrix, Rat,
};
use crate::graphs::DistanceRegularGraph;
use crate::leonard::ClassicalParameters;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("non-integral spectrum: intersection matrix has only {found} integer eigenvalues of {needed}")]
    NonIntegralSpectrum { found: usize, needed: usize },
    #[error("eigenvalue multiplicity for theta = {theta} is not a positive integer: {value}")]
    BadMultiplicity { theta: String, value: String },
    #[error("negative Krein parameter q^{k}_{{{i},{j}}}")]
    NegativeKrein { i: usize, j: usize, k: usize },
    #[error("no Q-polynomial ordering fits the classical shape")]
    NoStandardOrdering,
}

/// Bose–Mesner data of the scheme of a distance-regular graph.
///
/// `p[i][j] = v_j(θ_i)` (distance polynomials at the i-th eigenvalue, so row
/// 0 holds the valencies `k_j` and column 1 the eigenvalues), `q` is the
/// second eigenmatrix with `P·Q = |X|·I`, and `krein[i][j][k]` holds
/// `q^k_{ij}`. Idempotents are constant on distance classes; dense copies
/// are materialized on demand by [`SchemeData::idempotent_dense`].
#[derive(Debug, Clone)]
pub struct SchemeData {
    pub d: usize,
    pub n: usize,
    /// θ_0 > θ_1 > … > θ_d with θ_0 = k
    pub eigenvalues: Vec<BigInt>,
    pub multiplicities: Vec<i64>,
    pub p: ExactMatrix,
    pub q: ExactMatrix,
    pub krein: Vec<Vec<Vec<Rat>>>,
    pub k: Vec<i64>,
}

impl SchemeData {
    /// `E_j[x][y]` depends only on `∂(x,y)`; this is that value table:
    /// `idempotent_entry(j, i) = Q[i][j] / n`.
    pub fn idempotent_entry(&self, j: usize, dist: usize) -> Rat {
        &self.q[(dist, j)] / rat(self.n as i64)
    }

    /// Dense |X|×|X| copy of `E_j`.
    pub fn idempotent_dense(&self, g: &DistanceRegularGraph, j: usize) -> ExactMatrix {
        let table: Vec<Rat> = (0..=self.d).map(|i| self.idempotent_entry(j, i)).collect();
        ExactMatrix::from_fn(self.n, self.n, |x, y| table[g.dist.get(x, y)].clone())
    }

    /// Dense |X|×|X| copy of the distance-`i` adjacency matrix `A_i`.
    pub fn distance_matrix_dense(&self, g: &DistanceRegularGraph, i: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, self.n, |x, y| {
            if g.dist.get(x, y) == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }
}

/// An admissible Q-polynomial ordering of the primitive idempotents.
///
/// `perm[i]` is the index (into the natural descending-eigenvalue order) of
/// the idempotent in position `i`; `perm[0] = 0` always. The dual
/// eigenvalues satisfy `|X| E_{perm[1]} = Σ_i θ*_i A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolyOrdering {
    pub perm: Vec<usize>,
    /// θ*_0, …, θ*_d indexed by distance class
    pub dual_eigenvalues: Vec<Rat>,
    pub a_star: Vec<Rat>,
    pub b_star: Vec<Rat>,
    pub c_star: Vec<Rat>,
}

/// Builds the scheme data. The eigenvalues come from the characteristic
/// polynomial of
///
/// ```text
///       [ a_0 c_1            ]
///   T = [ b_0 a_1 c_2        ]
///       [     b_1 a_2 …      ]
///       [         …   c_d    ]
///       [         b_{d-1} a_d]
/// ```
///
/// and the eigenmatrix rows are the distance polynomials evaluated by the
/// three-term recurrence `θ v_i = b_{i-1} v_{i-1} + a_i v_i + c_{i+1} v_{i+1}`.
pub fn build_scheme(g: &DistanceRegularGraph) -> Result<SchemeData, SchemeError> {
    let d = g.d;
    let n = g.n();

    let diag: Vec<i64> = (0..=d).map(|i| g.a_i(i)).collect();
    let sub: Vec<i64> = (0..d).map(|i| g.b_i(i)).collect();
    let sup: Vec<i64> = (1..=d).map(|i| g.c_i(i)).collect();
    let charpoly = char_poly_tridiagonal(&diag, &sub, &sup);
    let roots = integer_roots(&charpoly);
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found != d + 1 || roots.iter().any(|(_, m)| *m != 1) {
        return Err(SchemeError::NonIntegralSpectrum { found, needed: d + 1 });
    }
    // descending order; integer_roots already sorts descending
    let eigenvalues: Vec<BigInt> = roots.into_iter().map(|(r, _)| r).collect();
    debug_assert_eq!(eigenvalues[0], BigInt::from(g.valency()));

    // p[i][j] = v_j(θ_i)
    let mut p = ExactMatrix::zeros(d + 1, d + 1);
    for (i, theta) in eigenvalues.iter().enumerate() {
        let theta = Rat::from_integer(theta.clone());
        let mut prev = Rat::one(); // v_0
        p[(i, 0)] = prev.clone();
        if d == 0 {
            continue;
        }
        let mut cur = theta.clone(); // v_1
        p[(i, 1)] = cur.clone();
        for j in 1..d {
            let next = ((&theta - rat(g.a_i(j))) * &cur - rat(g.b_i(j - 1)) * &prev)
                / rat(g.c_i(j + 1));
            p[(i, j + 1)] = next.clone();
            prev = cur;
            cur = next;
        }
    }

    // multiplicities m_i = n / Σ_j v_j(θ_i)^2 / k_j
    let mut multiplicities = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let denom: Rat = (0..=d)
            .map(|j| &p[(i, j)] * &p[(i, j)] / rat(g.k[j]))
            .sum();
        let m = rat(n as i64) / denom;
        match m.is_integer() && m.numer().is_positive() {
            true => multiplicities.push(i64::try_from(m.to_integer()).expect("multiplicity fits i64")),
            false => {
                return Err(SchemeError::BadMultiplicity {
                    theta: eigenvalues[i].to_string(),
                    value: crate::exact::rat_to_string(&m),
                })
            }
        }
    }
    debug_assert_eq!(multiplicities.iter().sum::<i64>(), n as i64);

    // q[i][j] = m_j v_i(θ_j) / k_i, so that P Q = n I
    let q = ExactMatrix::from_fn(d + 1, d + 1, |i, j| {
        rat(multiplicities[j]) * &p[(j, i)] / rat(g.k[i])
    });
    debug_assert!({
        let pq = p.mul(&q).unwrap();
        pq == ExactMatrix::identity(d + 1).scale(&rat(n as i64))
    });

    // Krein parameters q^k_{ij} = (1/n) Σ_u Q[u][i] Q[u][j] P[k][u]
    let mut krein = vec![vec![vec![Rat::zero(); d + 1]; d + 1]; d + 1];
    for i in 0..=d {
        for j in i..=d {
            for k in 0..=d {
                let s: Rat = (0..=d)
                    .map(|u| &q[(u, i)] * &q[(u, j)] * &p[(k, u)])
                    .sum::<Rat>()
                    / rat(n as i64);
                if s.is_negative() {
                    return Err(SchemeError::NegativeKrein { i, j, k });
                }
                krein[i][j][k] = s.clone();
                krein[j][i][k] = s;
            }
        }
    }

    Ok(SchemeData {
        d,
        n,
        eigenvalues,
        multiplicities,
        p,
        q,
        krein,
        k: g.k.clone(),
    })
}

fn ordering_from_perm(s: &SchemeData, perm: &[usize]) -> Option<QPolyOrdering> {
    let d = s.d;
    let e1 = perm[1];
    // coefficient of E_{perm[j]} in n (E_{perm[1]} ∘ E_{perm[i]}) is
    // q^{perm[j]}_{e1, perm[i]}: must vanish for |i-j| > 1 and be nonzero
    // for |i-j| = 1.
    for i in 0..=d {
        for j in 0..=d {
            let coef = &s.krein[e1][perm[i]][perm[j]];
            let gap = i.abs_diff(j);
            if gap > 1 && !coef.is_zero() {
                return None;
            }
            if gap == 1 && coef.is_zero() {
                return None;
            }
        }
    }
    let dual_eigenvalues: Vec<Rat> = (0..=d).map(|i| s.q[(i, e1)].clone()).collect();
    let mut a_star = Vec::with_capacity(d + 1);
    let mut b_star = Vec::with_capacity(d + 1);
    let mut c_star = Vec::with_capacity(d + 1);
    for i in 0..=d {
        a_star.push(s.krein[e1][perm[i]][perm[i]].clone());
        b_star.push(if i < d {
            s.krein[e1][perm[i + 1]][perm[i]].clone()
        } else {
            Rat::zero()
        });
        c_star.push(if i > 0 {
            s.krein[e1][perm[i - 1]][perm[i]].clone()
        } else {
            Rat::zero()
        });
    }
    Some(QPolyOrdering {
        perm: perm.to_vec(),
        dual_eigenvalues,
        a_star,
        b_star,
        c_star,
    })
}

/// All Q-polynomial orderings, found by brute force over the d! candidate
/// permutations fixing index 0. Sorted lexicographically by permutation.
pub fn find_qpoly_orderings(s: &SchemeData) -> Vec<QPolyOrdering> {
    let d = s.d;
    let mut orderings = Vec::new();
    let mut perm: Vec<usize> = (0..=d).collect();
    permute_tail(&mut perm, 1, &mut |p| {
        if let Some(o) = ordering_from_perm(s, p) {
            orderings.push(o);
        }
    });
    orderings.sort_by(|x, y| x.perm.cmp(&y.perm));
    orderings
}

fn permute_tail(perm: &mut Vec<usize>, from: usize, visit: &mut impl FnMut(&[usize])) {
    if from >= perm.len() {
        visit(perm);
        return;
    }
    for i in from..perm.len() {
        perm.swap(from, i);
        permute_tail(perm, from + 1, visit);
        perm.swap(from, i);
    }
}

/// The standard ordering of a graph with classical parameters: the unique
/// admissible ordering whose dual eigenvalues are affine in `[d-i]_q`,
/// i.e. `θ*_i = ξ* [d-i]_q + ζ*` with `ξ* != 0`.
pub fn standard_ordering_for_classical(
    s: &SchemeData,
    cp: &ClassicalParameters,
) -> Result<QPolyOrdering, SchemeError> {
    let orderings = find_qpoly_orderings(s);
    let qr = rat(cp.q);
    for ord in orderings {
        if fits_affine_in_gauss(&ord.dual_eigenvalues, s.d, &qr) {
            return Ok(ord);
        }
    }
    Err(SchemeError::NoStandardOrdering)
}

fn fits_affine_in_gauss(theta_star: &[Rat], d: usize, q: &Rat) -> bool {
    // θ*_d = ζ* ([0]_q = 0); θ*_{d-1} - ζ* = ξ* [1]_q = ξ*
    let zeta = theta_star[d].clone();
    let xi = &theta_star[d - 1] - &zeta;
    if xi.is_zero() {
        return false;
    }
    (0..=d).all(|i| theta_star[i] == &xi * q_int((d - i) as u32, q) + &zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{halved_cube, hamming, johnson};

    /// Independent spectral oracle: characteristic polynomial of the full
    /// |X|×|X| adjacency matrix, factored over the integers.
    fn brute_force_spectrum(g: &DistanceRegularGraph) -> Vec<(BigInt, usize)> {
        let n = g.n();
        let adj = ExactMatrix::from_fn(n, n, |x, y| {
            if g.dist.get(x, y) == 1 {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let coeffs = adj.char_poly();
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        integer_roots(&crate::exact::IntPolynomial::new(ints))
    }

    #[test]
    fn cube_spectrum_matches_brute_force() {
        let g = hamming(3, 2).unwrap();
        let s = build_scheme(&g).unwrap();
        assert_eq!(
            s.eigenvalues,
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(-1), BigInt::from(-3)]
        );
        assert_eq!(s.multiplicities, vec![1, 3, 3, 1]);
        // oracle: spectrum of the 8×8 adjacency matrix with multiplicities
        let spectrum = brute_force_spectrum(&g);
        let expected: Vec<(BigInt, usize)> = s
            .eigenvalues
            .iter()
            .cloned()
            .zip(s.multiplicities.iter().map(|&m| m as usize))
            .collect();
        assert_eq!(spectrum, expected);
    }

    #[test]
    fn johnson_scheme_basics() {
        let g = johnson(6, 3).unwrap();
        let s = build_scheme(&g).unwrap();
        assert_eq!(s.d, 3);
        assert_eq!(s.eigenvalues[0], BigInt::from(9));
        assert_eq!(s.multiplicities.iter().sum::<i64>(), 20);
        let spectrum = brute_force_spectrum(&g);
        let expected: Vec<(BigInt, usize)> = s
            .eigenvalues
            .iter()
            .cloned()
            .zip(s.multiplicities.iter().map(|&m| m as usize))
            .collect();
        assert_eq!(spectrum, expected);
    }

    #[test]
    fn pq_is_n_times_identity() {
        for g in [hamming(3, 2).unwrap(), johnson(6, 3).unwrap(), halved_cube(6).unwrap()] {
            let s = build_scheme(&g).unwrap();
            let pq = s.p.mul(&s.q).unwrap();
            assert_eq!(pq, ExactMatrix::identity(s.d + 1).scale(&rat(s.n as i64)));
            let qp = s.q.mul(&s.p).unwrap();
            assert_eq!(qp, ExactMatrix::identity(s.d + 1).scale(&rat(s.n as i64)));
        }
    }

    #[test]
    fn idempotents_are_idempotent_and_complete() {
        let g = hamming(3, 2).unwrap();
        let s = build_scheme(&g).unwrap();
        let n = s.n;
        let es: Vec<ExactMatrix> = (0..=s.d).map(|j| s.idempotent_dense(&g, j)).collect();
        // E_0 = J / n
        assert_eq!(es[0], ExactMatrix::ones(n, n).scale(&(Rat::one() / rat(n as i64))));
        // Σ E_i = I
        let mut sum = ExactMatrix::zeros(n, n);
        for e in &es {
            sum = sum.add(e).unwrap();
        }
        assert_eq!(sum, ExactMatrix::identity(n));
        // E_i E_j = δ_ij E_i and trace E_i = m_i
        for i in 0..=s.d {
            for j in 0..=s.d {
                let prod = es[i].mul(&es[j]).unwrap();
                if i == j {
                    assert_eq!(prod, es[i]);
                } else {
                    assert!(prod.is_zero());
                }
            }
            assert_eq!(es[i].trace(), rat(s.multiplicities[i]));
        }
    }

    #[test]
    fn three_term_recurrences_hold_matrix_exactly() {
        for g in [hamming(3, 2).unwrap(), johnson(6, 3).unwrap()] {
            let s = build_scheme(&g).unwrap();
            let n = s.n;
            let a: Vec<ExactMatrix> = (0..=s.d).map(|i| s.distance_matrix_dense(&g, i)).collect();
            let zero = ExactMatrix::zeros(n, n);
            // A_1 A_i = b_{i-1} A_{i-1} + a_i A_i + c_{i+1} A_{i+1}
            for i in 0..=s.d {
                let lhs = a[1].mul(&a[i]).unwrap();
                let mut rhs = a[i].scale(&rat(g.a_i(i)));
                if i > 0 {
                    rhs = rhs.add(&a[i - 1].scale(&rat(g.b_i(i - 1)))).unwrap();
                }
                if i < s.d {
                    rhs = rhs.add(&a[i + 1].scale(&rat(g.c_i(i + 1)))).unwrap();
                }
                assert_eq!(lhs, rhs);
            }
            // A_1 ∘ A_2 = 0: distinct distance classes have disjoint support
            assert_eq!(a[1].entrywise_product(&a[2]).unwrap(), zero);

            // E_1 ∘ E_i = n^{-1}(b*_{i-1} E_{i-1} + a*_i E_i + c*_{i+1} E_{i+1})
            for ord in find_qpoly_orderings(&s) {
                let e: Vec<ExactMatrix> =
                    (0..=s.d).map(|i| s.idempotent_dense(&g, ord.perm[i])).collect();
                for i in 0..=s.d {
                    let lhs = e[1].entrywise_product(&e[i]).unwrap().scale(&rat(n as i64));
                    let mut rhs = e[i].scale(&ord.a_star[i]);
                    if i > 0 {
                        rhs = rhs.add(&e[i - 1].scale(&ord.b_star[i - 1])).unwrap();
                    }
                    if i < s.d {
                        rhs = rhs.add(&e[i + 1].scale(&ord.c_star[i + 1])).unwrap();
                    }
                    assert_eq!(lhs, rhs, "ordering {:?} class {i}", ord.perm);
                }
            }
        }
    }

    #[test]
    fn cube_has_exactly_one_qpoly_ordering() {
        let g = hamming(3, 2).unwrap();
        let s = build_scheme(&g).unwrap();
        let orderings = find_qpoly_orderings(&s);
        assert_eq!(orderings.len(), 1);
        assert_eq!(orderings[0].perm, vec![0, 1, 2, 3]);
        // |X| E_1 = Σ θ*_i A_i and the θ*_i are mutually distinct
        let ts = &orderings[0].dual_eigenvalues;
        for i in 0..ts.len() {
            for j in (i + 1)..ts.len() {
                assert_ne!(ts[i], ts[j]);
            }
        }
        // b*_{i-1} c*_i != 0
        for i in 1..=s.d {
            assert!(!orderings[0].b_star[i - 1].is_zero());
            assert!(!orderings[0].c_star[i].is_zero());
        }
    }

    #[test]
    fn natural_ordering_admissible_for_shipped_graphs() {
        for g in [johnson(6, 3).unwrap(), halved_cube(6).unwrap()] {
            let s = build_scheme(&g).unwrap();
            let orderings = find_qpoly_orderings(&s);
            let natural: Vec<usize> = (0..=s.d).collect();
            assert!(
                orderings.iter().any(|o| o.perm == natural),
                "{}: natural ordering not admissible",
                g.id()
            );
        }
    }
}
