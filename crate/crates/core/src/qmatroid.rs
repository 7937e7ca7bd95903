//! The poset of a descendent family under reverse inclusion, the quantum
//! matroid axioms QM1–QM4, the line / dual-line / zig-zag regularity
//! parameters, the unique-descendent property per distance, and
//! intersection closure.
//!
//! The poset order is `Y <= Z` iff `Z ⊆ Y`: the whole vertex set is the
//! minimum and singletons are the maximal elements; the rank of a member is
//! its dual width.

use crate::analysis::Analyzed;
use crate::exact::{qbinomial, rat};
use crate::subsets::DescendentRecord;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QmatroidError {
    #[error("duplicate poset element")]
    Duplicate,
    #[error("empty family")]
    Empty,
}

/// Descendent family ordered by reverse inclusion and ranked by dual width.
#[derive(Debug, Clone)]
pub struct DescendentPoset {
    /// member vertex sets, canonically sorted
    pub elements: Vec<Vec<u32>>,
    /// rank of each member: its dual width
    pub rank: Vec<usize>,
    /// le[e][f] = (e <= f), i.e. elements[f] ⊆ elements[e]
    le: Vec<Vec<bool>>,
    /// cover[e][f] = (f covers e)
    cover: Vec<Vec<bool>>,
    /// widths of each member (for the UD and counting checks)
    pub width: Vec<usize>,
    /// poset rank = diameter of the graph
    pub d: usize,
}

fn subset_of(sub: &[u32], sup: &[u32]) -> bool {
    let mut j = 0;
    for &x in sub {
        while j < sup.len() && sup[j] < x {
            j += 1;
        }
        if j == sup.len() || sup[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Builds the poset from pairwise-distinct descendent records.
pub fn build_poset(d: usize, records: &[DescendentRecord]) -> Result<DescendentPoset, QmatroidError> {
    if records.is_empty() {
        return Err(QmatroidError::Empty);
    }
    let mut elements: Vec<Vec<u32>> = records.iter().map(|r| r.profile.vertices.clone()).collect();
    let ranks: Vec<usize> = records.iter().map(|r| r.profile.w_star).collect();
    let widths: Vec<usize> = records.iter().map(|r| r.profile.w).collect();
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&i, &j| elements[i].cmp(&elements[j]));
    let elements_sorted: Vec<Vec<u32>> = order.iter().map(|&i| elements[i].clone()).collect();
    let rank: Vec<usize> = order.iter().map(|&i| ranks[i]).collect();
    let width: Vec<usize> = order.iter().map(|&i| widths[i]).collect();
    elements = elements_sorted;
    {
        let set: HashSet<&Vec<u32>> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(QmatroidError::Duplicate);
        }
    }
    let m = elements.len();
    let mut le = vec![vec![false; m]; m];
    for e in 0..m {
        for f in 0..m {
            le[e][f] = subset_of(&elements[f], &elements[e]);
        }
    }
    let mut cover = vec![vec![false; m]; m];
    for e in 0..m {
        for f in 0..m {
            if e != f && le[e][f] {
                let strict_between = (0..m)
                    .any(|g| g != e && g != f && le[e][g] && le[g][f]);
                cover[e][f] = !strict_between;
            }
        }
    }
    Ok(DescendentPoset { elements, rank, le, cover, width, d })
}

impl DescendentPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, e: usize, f: usize) -> bool {
        e == f || self.le[e][f]
    }

    fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&e| (0..self.len()).all(|f| self.le(e, f)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, e: usize, f: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&g| self.le(g, e) && self.le(g, f))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&h| self.le(h, g)))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, e: usize, f: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&g| self.le(e, g) && self.le(f, g))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&g| upper.iter().all(|&h| self.le(g, h)))
    }

    /// Least upper bound of a set of elements within the interval `[0, top]`.
    fn join_within(&self, members: &[usize], top: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&g| self.le(g, top) && members.iter().all(|&u| self.le(u, g)))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&g| upper.iter().all(|&h| self.le(g, h)))
    }

    fn covers_of(&self, e: usize) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.cover[e][f]).collect()
    }
}

/// Everything the quantum-matroid suite computes. Falsity is recorded, not
/// thrown: witnesses carry the first counterexample found for each failed
/// property.
#[derive(Debug, Clone)]
pub struct QuantumMatroidReport {
    pub qm1: bool,
    pub qm2: bool,
    pub qm3: bool,
    pub qm4: bool,
    pub line_regular_q: Option<i64>,
    pub dual_line_regular_beta: Option<i64>,
    pub zigzag_regular_alpha: Option<i64>,
    /// (UD)_i for each distance i = 0..d
    pub ud_property: Vec<bool>,
    pub intersection_closed: bool,
    /// pair counts versus Gaussian binomials; `None` when the graph has no
    /// classical parameters
    pub pair_counts_ok: Option<bool>,
    pub witnesses: Vec<String>,
}

impl QuantumMatroidReport {
    pub fn all_axioms(&self) -> bool {
        self.qm1 && self.qm2 && self.qm3 && self.qm4
    }
}

/// Checks QM1–QM4 and the regularity parameters.
pub fn check_axioms(p: &DescendentPoset) -> QuantumMatroidReport {
    let m = p.len();
    let mut witnesses = Vec::new();

    // QM1: ranked with rank = dual width: the minimum has rank 0 and every
    // cover raises rank by exactly one
    let mut qm1 = true;
    match p.minimum() {
        Some(bottom) => {
            if p.rank[bottom] != 0 {
                qm1 = false;
                witnesses.push("minimum has nonzero rank".to_string());
            }
        }
        None => {
            qm1 = false;
            witnesses.push("poset has no minimum".to_string());
        }
    }
    for e in 0..m {
        for f in 0..m {
            if p.cover[e][f] && p.rank[f] != p.rank[e] + 1 {
                qm1 = false;
                witnesses.push(format!(
                    "cover {} -> {} jumps rank {} -> {}",
                    e, f, p.rank[e], p.rank[f]
                ));
            }
        }
    }

    // QM2: meet semilattice
    let mut qm2 = true;
    'qm2: for e in 0..m {
        for f in (e + 1)..m {
            if p.meet(e, f).is_none() {
                qm2 = false;
                witnesses.push(format!("elements {e}, {f} have no meet"));
                break 'qm2;
            }
        }
    }

    // QM3: every interval [0, x] is a modular atomic lattice; modularity via
    // the rank identity rank(u) + rank(v) = rank(u∧v) + rank(u∨v)
    let mut qm3 = true;
    'qm3: for x in 0..m {
        let interval: Vec<usize> = (0..m).filter(|&g| p.le(g, x)).collect();
        let atoms: Vec<usize> = interval.iter().copied().filter(|&g| p.rank[g] == 1).collect();
        for (ia, &u) in interval.iter().enumerate() {
            for &v in &interval[ia..] {
                let Some(mt) = p.meet(u, v) else {
                    qm3 = false;
                    witnesses.push(format!("interval [0,{x}]: no meet for ({u},{v})"));
                    break 'qm3;
                };
                let Some(jn) = p.join_within(&[u, v], x) else {
                    qm3 = false;
                    witnesses.push(format!("interval [0,{x}]: no join for ({u},{v})"));
                    break 'qm3;
                };
                if p.rank[u] + p.rank[v] != p.rank[mt] + p.rank[jn] {
                    qm3 = false;
                    witnesses.push(format!(
                        "interval [0,{x}]: rank identity fails for ({u},{v}): {} + {} != {} + {}",
                        p.rank[u], p.rank[v], p.rank[mt], p.rank[jn]
                    ));
                    break 'qm3;
                }
            }
            // atomicity: u is the join of the atoms below it
            if p.rank[u] > 0 {
                let below: Vec<usize> =
                    atoms.iter().copied().filter(|&aa| p.le(aa, u)).collect();
                match p.join_within(&below, x) {
                    Some(j) if j == u => {}
                    _ => {
                        qm3 = false;
                        witnesses
                            .push(format!("interval [0,{x}]: element {u} is not a join of atoms"));
                        break 'qm3;
                    }
                }
            }
        }
    }

    // QM4: for rank(x) < rank(y) there is an atom a <= y with a !<= x such
    // that x ∨ a exists
    let mut qm4 = true;
    let atoms: Vec<usize> = (0..m).filter(|&g| p.rank[g] == 1).collect();
    'qm4: for x in 0..m {
        for y in 0..m {
            if p.rank[x] < p.rank[y] {
                let ok = atoms.iter().any(|&aa| {
                    p.le(aa, y) && !p.le(aa, x) && p.join(x, aa).is_some()
                });
                if !ok {
                    qm4 = false;
                    witnesses.push(format!("no exchange atom for x = {x}, y = {y}"));
                    break 'qm4;
                }
            }
        }
    }

    // regularity parameters (nontrivial posets only)
    let rank_of = |r: usize| (0..m).filter(move |&e| p.rank[e] == r);
    let line_counts: HashSet<usize> = rank_of(2).map(|e| {
        (0..m).filter(|&f| p.cover[f][e]).count()
    }).collect();
    let line_regular_q = match line_counts.len() {
        1 => line_counts.iter().next().map(|&c| c as i64 - 1),
        _ => None,
    };
    let dual_counts: HashSet<usize> = rank_of(p.d.saturating_sub(1))
        .map(|e| p.covers_of(e).len())
        .collect();
    let dual_line_regular_beta = match dual_counts.len() {
        1 => dual_counts.iter().next().map(|&c| c as i64 - 1),
        _ => None,
    };

    // zig-zag: for every (x, y) with rank(x) = d-1, rank(y) = d and x
    // covering x ∧ y, the number of pairs (x1, y1) with y1 covering both x
    // and x1, and y covering x1, is a constant α + 1
    let mut zig_counts: HashSet<usize> = HashSet::new();
    for x in rank_of(p.d - 1) {
        for y in rank_of(p.d) {
            let Some(mt) = p.meet(x, y) else { continue };
            if !p.cover[mt][x] {
                continue;
            }
            let count = (0..m)
                .filter(|&x1| p.rank[x1] == p.d - 1 && p.cover[x1][y])
                .map(|x1| {
                    (0..m)
                        .filter(|&y1| p.rank[y1] == p.d && p.cover[x][y1] && p.cover[x1][y1])
                        .count()
                })
                .sum();
            zig_counts.insert(count);
        }
    }
    let zigzag_regular_alpha = match zig_counts.len() {
        1 => zig_counts.iter().next().map(|&c| c as i64 - 1),
        _ => None,
    };
    if line_regular_q.is_none() {
        witnesses.push(format!("line counts not constant: {line_counts:?}"));
    }
    if dual_line_regular_beta.is_none() {
        witnesses.push(format!("dual line counts not constant: {dual_counts:?}"));
    }
    if zigzag_regular_alpha.is_none() {
        witnesses.push(format!("zig-zag counts not constant: {zig_counts:?}"));
    }

    QuantumMatroidReport {
        qm1,
        qm2,
        qm3,
        qm4,
        line_regular_q,
        dual_line_regular_beta,
        zigzag_regular_alpha,
        ud_property: Vec::new(),
        intersection_closed: false,
        pair_counts_ok: None,
        witnesses,
    }
}

/// (UD)_i for every distance i, and the two-way pair counts: every pair at
/// distance i must lie in exactly `[d-i choose j-i]_q` members of width j
/// (the latter only when the graph carries classical parameters).
/// Returns `(ud_vector, pair_counts_ok, witnesses)`.
pub fn check_ud_and_counts(
    a: &Analyzed,
    p: &DescendentPoset,
) -> (Vec<bool>, Option<bool>, Vec<String>) {
    let d = a.d();
    let n = a.n();
    let mut witnesses = Vec::new();
    let mut ud = vec![true; d + 1];
    let q_classical = a.classical.as_ref().map(|cp| cp.q);
    let mut counts_ok = q_classical.map(|_| true);

    // members_by_width[j] = indices of width-j members
    let mut members_by_width: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    for e in 0..p.len() {
        members_by_width[p.width[e]].push(e);
    }
    let masks: Vec<Vec<bool>> = p
        .elements
        .iter()
        .map(|verts| {
            let mut m = vec![false; n];
            for &v in verts {
                m[v as usize] = true;
            }
            m
        })
        .collect();

    for x in 0..n {
        for y in x..n {
            let i = a.g.dist.get(x, y);
            for j in i..=d {
                let through = members_by_width[j]
                    .iter()
                    .filter(|&&e| masks[e][x] && masks[e][y])
                    .count();
                if j == i && through != 1 {
                    if ud[i] {
                        witnesses.push(format!(
                            "pair ({}, {}) at distance {i} lies in {through} width-{i} members",
                            a.g.graph.labels[x], a.g.graph.labels[y]
                        ));
                    }
                    ud[i] = false;
                }
                if let Some(q) = q_classical {
                    let expect = qbinomial((d - i) as u32, (j - i) as u32, q).unwrap();
                    if expect != rat(through as i64) {
                        if counts_ok == Some(true) {
                            witnesses.push(format!(
                                "pair ({}, {}) at distance {i}: {through} width-{j} members, expected {}",
                                a.g.graph.labels[x],
                                a.g.graph.labels[y],
                                crate::exact::rat_to_string(&expect)
                            ));
                        }
                        counts_ok = Some(false);
                    }
                }
            }
        }
    }
    (ud, counts_ok, witnesses)
}

/// True when every nonempty pairwise intersection of members is a member.
pub fn check_intersection_closure(p: &DescendentPoset) -> bool {
    let sets: HashSet<&Vec<u32>> = p.elements.iter().collect();
    for (i, a) in p.elements.iter().enumerate() {
        for b in &p.elements[i + 1..] {
            let meet: Vec<u32> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
            if !meet.is_empty() && !sets.contains(&meet) {
                return false;
            }
        }
    }
    true
}

/// Runs the whole suite over a descendent family.
pub fn full_report(a: &Analyzed, records: &[DescendentRecord]) -> Result<QuantumMatroidReport, QmatroidError> {
    let p = build_poset(a.d(), records)?;
    let mut report = check_axioms(&p);
    let (ud, counts_ok, mut witnesses) = check_ud_and_counts(a, &p);
    report.ud_property = ud;
    report.pair_counts_ok = counts_ok;
    report.intersection_closed = check_intersection_closure(&p);
    report.witnesses.append(&mut witnesses);
    Ok(report)
}
