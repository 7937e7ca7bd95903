//! Width and dual width of vertex subsets, descendent tests, and the three
//! descendent enumerators (exhaustive, classified known forms, heuristic
//! search).
//!
//! For a nonempty subset Y with characteristic vector ŷ, the width is
//! `w = max{i : ŷᵀ A_i ŷ != 0}` (the largest pairwise distance) and the dual
//! width is `w* = max{i : ŷᵀ E_i ŷ != 0}` under the fixed Q-polynomial
//! ordering. Always `w + w* >= d`; the subsets attaining equality are the
//! descendents, and they are the objects everything downstream studies.

use crate::analysis::Analyzed;
use crate::exact::Rat;
use crate::graphs::{induced_subgraph, verify_distance_regular, FamilyTag, Graph};
use crate::leonard::predict_connectivity;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

/// Hard cap for the exhaustive enumerator (2^n subsets). Overridable via
/// `DRGDESC_EXHAUSTIVE_CAP`.
pub fn exhaustive_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("DRGDESC_EXHAUSTIVE_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(20)
    })
}

/// Default number of closure operations the search enumerator may spend.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubsetError {
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("subset is not a descendent (w = {w}, w* = {w_star}, d = {d})")]
    NotDescendent { w: usize, w_star: usize, d: usize },
    #[error("exhaustive enumeration capped at {cap} vertices, graph has {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Exact width/dual-width profile of a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProfile {
    /// sorted ascending
    pub vertices: Vec<u32>,
    pub w: usize,
    pub w_star: usize,
    /// covering radius
    pub rho: usize,
    pub is_descendent: bool,
    pub is_convex: bool,
    pub is_completely_regular: bool,
    pub is_strongly_closed: bool,
}

/// Provenance of an enumerated descendent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Exhaustive,
    KnownForm(String),
    Search,
}

impl Generator {
    pub fn label(&self) -> String {
        match self {
            Generator::Exhaustive => "exhaustive".to_string(),
            Generator::KnownForm(id) => format!("known-form:{id}"),
            Generator::Search => "search".to_string(),
        }
    }
}

/// A verified descendent together with the analysis of its induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendentRecord {
    pub profile: SubsetProfile,
    pub induced_connected: bool,
    /// intersection array of Γ_Y when it is distance-regular
    pub induced_b: Option<Vec<i64>>,
    pub induced_c: Option<Vec<i64>>,
    /// case-based connectivity prediction from the parent array, for
    /// nontrivial descendents
    pub predicted_connected: Option<bool>,
    pub generator: Generator,
}

// ---------------------------------------------------------------------------
// Profile computation
// ---------------------------------------------------------------------------

/// Ordered-pair counts per distance class: `counts[i] = ŷᵀ A_i ŷ`.
pub fn distance_counts(a: &Analyzed, vertices: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; a.d() + 1];
    counts[0] = vertices.len() as u64;
    for (i, &x) in vertices.iter().enumerate() {
        for &y in &vertices[i + 1..] {
            counts[a.g.dist.get(x as usize, y as usize)] += 2;
        }
    }
    counts
}

pub fn width_from_counts(counts: &[u64]) -> usize {
    counts.iter().rposition(|&c| c > 0).unwrap_or(0)
}

/// `w* = max{j : ŷᵀ E_{perm[j]} ŷ != 0}`, computed exactly from the pair
/// counts and the second eigenmatrix:
/// `ŷᵀ E_j ŷ = n^{-1} Σ_i Q[i][j] counts[i]`.
pub fn dual_width_from_counts(a: &Analyzed, counts: &[u64]) -> usize {
    let d = a.d();
    for j in (1..=d).rev() {
        let col = a.ordering.perm[j];
        let form: Rat = (0..=d)
            .map(|i| &a.scheme.q[(i, col)] * Rat::from_integer(BigInt::from(counts[i])))
            .sum();
        if !form.is_zero() {
            return j;
        }
    }
    0
}

/// Covering radius: the largest distance from any vertex to the subset.
pub fn covering_radius(a: &Analyzed, vertices: &[u32]) -> usize {
    let g = &a.g.graph;
    let mut dist = vec![u8::MAX; g.n];
    let mut queue = VecDeque::new();
    for &v in vertices {
        dist[v as usize] = 0;
        queue.push_back(v as usize);
    }
    let mut rho = 0usize;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in &g.neighbors[u] {
            if dist[v as usize] == u8::MAX {
                dist[v as usize] = du + 1;
                rho = rho.max(du as usize + 1);
                queue.push_back(v as usize);
            }
        }
    }
    rho
}

fn in_set(mask: &[bool], v: usize) -> bool {
    mask[v]
}

fn member_mask(n: usize, vertices: &[u32]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v as usize] = true;
    }
    mask
}

/// Geodetic convexity: every vertex on every geodesic between members lies
/// in the set.
pub fn is_convex(a: &Analyzed, vertices: &[u32]) -> bool {
    let n = a.n();
    let mask = member_mask(n, vertices);
    for &x in vertices {
        for &y in vertices {
            if x >= y {
                continue;
            }
            let dxy = a.g.dist.get(x as usize, y as usize);
            for z in 0..n {
                if !in_set(&mask, z)
                    && a.g.dist.get(x as usize, z) + a.g.dist.get(z, y as usize) == dxy
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Strong closure: contains every z with ∂(x,z) + ∂(z,y) <= ∂(x,y) + 1 for
/// members x, y.
pub fn is_strongly_closed(a: &Analyzed, vertices: &[u32]) -> bool {
    let n = a.n();
    let mask = member_mask(n, vertices);
    for &x in vertices {
        for &y in vertices {
            if x > y {
                continue;
            }
            let dxy = a.g.dist.get(x as usize, y as usize);
            for z in 0..n {
                if !in_set(&mask, z)
                    && a.g.dist.get(x as usize, z) + a.g.dist.get(z, y as usize) <= dxy + 1
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Complete regularity: the span of the distance-partition characteristic
/// vectors Ŷ_0, …, Ŷ_ρ is closed under the adjacency matrix. Because the
/// Ŷ_i have pairwise disjoint supports, the exact linear system
/// `A Ŷ_i = Σ_j γ_j Ŷ_j` is solvable precisely when the neighbor count
/// towards Y_i is constant on every class Y_j; that constancy is what is
/// checked, class by class.
pub fn is_completely_regular(a: &Analyzed, vertices: &[u32]) -> (bool, usize) {
    let g = &a.g.graph;
    let n = g.n;
    let mut dist = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for &v in vertices {
        dist[v as usize] = 0;
        queue.push_back(v as usize);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &g.neighbors[u] {
            if dist[v as usize] == u8::MAX {
                dist[v as usize] = dist[u] + 1;
                queue.push_back(v as usize);
            }
        }
    }
    let rho = dist.iter().map(|&x| x as usize).max().unwrap();
    // counts[x][i] = |Γ(x) ∩ Y_i|; must be constant over x in each Y_j
    let mut reference: Vec<Option<Vec<u32>>> = vec![None; rho + 1];
    for x in 0..n {
        let mut counts = vec![0u32; rho + 1];
        for &z in &g.neighbors[x] {
            counts[dist[z as usize] as usize] += 1;
        }
        let j = dist[x] as usize;
        match &reference[j] {
            None => reference[j] = Some(counts),
            Some(r) => {
                if r != &counts {
                    return (false, rho);
                }
            }
        }
    }
    (true, rho)
}

/// Full exact profile of a nonempty subset.
pub fn profile(a: &Analyzed, vertices: &[u32]) -> Result<SubsetProfile, SubsetError> {
    if vertices.is_empty() {
        return Err(SubsetError::EmptySubset);
    }
    let mut vertices = vertices.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let counts = distance_counts(a, &vertices);
    let w = width_from_counts(&counts);
    let w_star = dual_width_from_counts(a, &counts);
    let (is_cr, rho) = is_completely_regular(a, &vertices);
    Ok(SubsetProfile {
        w,
        w_star,
        rho,
        is_descendent: w + w_star == a.d(),
        is_convex: is_convex(a, &vertices),
        is_completely_regular: is_cr,
        is_strongly_closed: is_strongly_closed(a, &vertices),
        vertices,
    })
}

// ---------------------------------------------------------------------------
// Induced analysis
// ---------------------------------------------------------------------------

/// For a descendent Y: connectivity of Γ_Y, and when connected, an
/// exhaustive distance-regularity verification of Γ_Y with its intersection
/// array. Aborts with an internal error if a theorem-guaranteed property
/// fails (connected induced subgraph of a descendent that is not
/// distance-regular of diameter w, or induced distances drifting from the
/// ambient ones).
pub fn induced_analysis(a: &Analyzed, prof: SubsetProfile) -> Result<DescendentRecord, SubsetError> {
    if !prof.is_descendent {
        return Err(SubsetError::NotDescendent {
            w: prof.w,
            w_star: prof.w_star,
            d: a.d(),
        });
    }
    let verts: Vec<usize> = prof.vertices.iter().map(|&v| v as usize).collect();
    let sub = induced_subgraph(&a.g.graph, &verts).map_err(|_| SubsetError::EmptySubset)?;
    let reach = sub.bfs(0);
    let connected = reach.iter().all(|&x| x != u8::MAX);
    let predicted = if prof.w_star > 0 && prof.w_star < a.d() {
        Some(predict_connectivity(&a.parray, prof.w_star))
    } else {
        None
    };
    let (induced_b, induced_c) = if connected {
        let drg = verify_distance_regular(sub, FamilyTag::Custom).map_err(|e| {
            SubsetError::Internal(format!(
                "connected descendent with non-distance-regular induced subgraph: {e}"
            ))
        })?;
        if drg.d != prof.w {
            return Err(SubsetError::Internal(format!(
                "induced diameter {} != width {}",
                drg.d, prof.w
            )));
        }
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                if drg.dist.get(i, j) != a.g.dist.get(verts[i], verts[j]) {
                    return Err(SubsetError::Internal(
                        "induced distance differs from ambient distance".to_string(),
                    ));
                }
            }
        }
        (Some(drg.b), Some(drg.c))
    } else {
        (None, None)
    };
    Ok(DescendentRecord {
        profile: prof,
        induced_connected: connected,
        induced_b,
        induced_c,
        predicted_connected: predicted,
        generator: Generator::Exhaustive,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

// Integer tables proportional to the Q-matrix columns in ordering position:
// sign and vanishing of ŷᵀ E_{perm[j]} ŷ are preserved.
fn scaled_dual_tables(a: &Analyzed) -> Vec<Vec<i128>> {
    let d = a.d();
    (0..=d)
        .map(|j| {
            let col = a.ordering.perm[j];
            let mut lcm = BigInt::from(1);
            for i in 0..=d {
                lcm = num_integer::Integer::lcm(&lcm, a.scheme.q[(i, col)].denom());
            }
            (0..=d)
                .map(|i| {
                    let v = &a.scheme.q[(i, col)] * Rat::from_integer(lcm.clone());
                    debug_assert!(v.is_integer());
                    i128::try_from(v.to_integer()).expect("scaled dual table entry fits i128")
                })
                .collect()
        })
        .collect()
}

fn dual_width_tables(tables: &[Vec<i128>], counts: &[u64], d: usize) -> usize {
    for j in (1..=d).rev() {
        let form: i128 = (0..=d).map(|i| tables[j][i] * counts[i] as i128).sum();
        if form != 0 {
            return j;
        }
    }
    0
}

struct ExhaustiveTask<'a> {
    a: &'a Analyzed,
    tables: &'a [Vec<i128>],
    n: usize,
    d: usize,
}

impl ExhaustiveTask<'_> {
    fn run(&self, v0: usize, found: &mut Vec<Vec<u32>>) {
        let mut cur: Vec<u32> = vec![v0 as u32];
        let mut counts = vec![0u64; self.d + 1];
        counts[0] = 1;
        self.visit(&cur, &counts, 0, found);
        self.recurse(v0 + 1, &mut cur, &mut counts, 0, found);
    }

    fn recurse(
        &self,
        start: usize,
        cur: &mut Vec<u32>,
        counts: &mut Vec<u64>,
        w: usize,
        found: &mut Vec<Vec<u32>>,
    ) {
        for v in start..self.n {
            let mut new_w = w;
            for &u in cur.iter() {
                let c = self.a.g.dist.get(u as usize, v);
                counts[c] += 2;
                new_w = new_w.max(c);
            }
            counts[0] += 1;
            cur.push(v as u32);
            self.visit(cur, counts, new_w, found);
            self.recurse(v + 1, cur, counts, new_w, found);
            cur.pop();
            counts[0] -= 1;
            for &u in cur.iter() {
                counts[self.a.g.dist.get(u as usize, v)] -= 2;
            }
        }
    }

    fn visit(&self, cur: &[u32], counts: &[u64], w: usize, found: &mut Vec<Vec<u32>>) {
        let w_star = dual_width_tables(self.tables, counts, self.d);
        if w + w_star == self.d {
            found.push(cur.to_vec());
        }
    }
}

/// Enumerates every descendent by iterating all nonempty vertex subsets.
/// The subset tree is sharded by least element across `threads` workers;
/// output is canonically sorted, so it is identical for any thread count.
pub fn enumerate_exhaustive(a: &Analyzed, threads: usize) -> Result<Vec<DescendentRecord>, SubsetError> {
    let n = a.n();
    let cap = exhaustive_cap();
    if n > cap {
        return Err(SubsetError::CapExceeded { n, cap });
    }
    let tables = scaled_dual_tables(a);
    let task = ExhaustiveTask { a, tables: &tables, n, d: a.d() };

    let threads = threads.max(1);
    let mut per_v0: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
    if threads == 1 {
        for v0 in 0..n {
            task.run(v0, &mut per_v0[v0]);
        }
    } else {
        let results: Vec<(usize, Vec<Vec<u32>>)> = std::thread::scope(|scope| {
            let task_ref = &task;
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        let mut v0 = t;
                        while v0 < n {
                            let mut found = Vec::new();
                            task_ref.run(v0, &mut found);
                            out.push((v0, found));
                            v0 += threads;
                        }
                        out
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
        });
        for (v0, found) in results {
            per_v0[v0] = found;
        }
    }

    let mut records = Vec::new();
    for found in per_v0 {
        for verts in found {
            let prof = profile(a, &verts)?;
            debug_assert!(prof.is_descendent);
            records.push(induced_analysis(a, prof)?);
        }
    }
    records.sort_by(|x, y| x.profile.vertices.cmp(&y.profile.vertices));
    Ok(records)
}

// ---------------------------------------------------------------------------
// Known classified forms
// ---------------------------------------------------------------------------

fn known_form_sets(a: &Analyzed) -> Result<Vec<(Vec<u32>, String, usize)>, SubsetError> {
    use crate::graphs::gf::{self, Gf};
    let g = &a.g;
    let n = g.n();
    let d = g.d;
    let mut out: Vec<(Vec<u32>, String, usize)> = Vec::new();

    // trivial descendents: the whole vertex set and the singletons
    // (Doob products below regenerate them; duplicates are removed later)
    out.push(((0..n as u32).collect(), "trivial-full".to_string(), d));
    for v in 0..n as u32 {
        out.push((vec![v], "trivial-singleton".to_string(), 0));
    }

    match &g.family {
        FamilyTag::Hamming { d: dd, l } => {
            // fix the coordinates in S to a word a: width d - |S|
            let labels: Vec<&[u8]> = g.graph.labels.iter().map(|s| s.as_bytes()).collect();
            for k in 1..*dd {
                for coords in combinations_iter(*dd, k) {
                    for asg in 0..(*l as u64).pow(k as u32) {
                        let mut want = vec![0u8; k];
                        let mut v = asg;
                        for slot in want.iter_mut() {
                            *slot = b'0' + (v % *l as u64) as u8;
                            v /= *l as u64;
                        }
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| {
                                coords
                                    .iter()
                                    .zip(&want)
                                    .all(|(&c, &wch)| labels[x as usize][c] == wch)
                            })
                            .collect();
                        out.push((set, "hamming-fix-coordinates".to_string(), dd - k));
                    }
                }
            }
        }
        FamilyTag::Johnson { nu, d: dd } => {
            let sets: Vec<Vec<usize>> = g
                .graph
                .labels
                .iter()
                .map(|l| l.split(',').map(|t| t.parse::<usize>().unwrap() - 1).collect())
                .collect();
            // (i) all d-subsets containing u, |u| = w*
            for k in 1..*dd {
                for u in combinations_iter(*nu, k) {
                    let set: Vec<u32> = (0..n as u32)
                        .filter(|&x| u.iter().all(|e| sets[x as usize].contains(e)))
                        .collect();
                    out.push((set, "johnson-contains-u".to_string(), dd - k));
                }
            }
            // (ii) for ν = 2d: all d-subsets inside u, |u| = d + w
            if *nu == 2 * *dd {
                for size in (*dd + 1)..*nu {
                    for u in combinations_iter(*nu, size) {
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| sets[x as usize].iter().all(|e| u.contains(e)))
                            .collect();
                        out.push((set, "johnson-inside-u".to_string(), size - dd));
                    }
                }
            }
        }
        FamilyTag::Grassmann { q, nu, d: dd } => {
            let field = Gf::new(*q).unwrap();
            let verts = gf::subspaces(field, *nu, *dd);
            for k in 1..*dd {
                for u in gf::subspaces(field, *nu, k) {
                    let set: Vec<u32> = (0..n as u32)
                        .filter(|&x| gf::subspace_contains(field, &verts[x as usize], &u))
                        .collect();
                    out.push((set, "grassmann-contains-u".to_string(), dd - k));
                }
            }
            if *nu == 2 * *dd {
                for size in (*dd + 1)..*nu {
                    for u in gf::subspaces(field, *nu, size) {
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| gf::subspace_contains(field, &u, &verts[x as usize]))
                            .collect();
                        out.push((set, "grassmann-inside-u".to_string(), size - dd));
                    }
                }
            }
        }
        FamilyTag::BilinearForms { q, d: dd, e } => {
            let field = Gf::new(*q).unwrap();
            let qs = *q as usize;
            let decode = |mut v: usize| -> Vec<Vec<u8>> {
                let mut m = vec![vec![0u8; *e]; *dd];
                for r in 0..*dd {
                    for c in 0..*e {
                        m[r][c] = (v % qs) as u8;
                        v /= qs;
                    }
                }
                m
            };
            let mats: Vec<Vec<Vec<u8>>> = (0..n).map(decode).collect();
            let row_times = |r: &[u8], m: &[Vec<u8>]| -> Vec<u8> {
                (0..*e)
                    .map(|c| {
                        let mut acc = 0u8;
                        for (i, &ri) in r.iter().enumerate() {
                            acc = field.add(acc, field.mul(ri, m[i][c]));
                        }
                        acc
                    })
                    .collect()
            };
            // (i) prescribe the map on a subspace U of the row space:
            // width d - dim U
            for k in 1..*dd {
                for u_basis in gf::subspaces(field, *dd, k) {
                    let img_count = qs.pow((*e * k) as u32);
                    for code in 0..img_count {
                        let mut images: Vec<Vec<u8>> = Vec::with_capacity(k);
                        let mut v = code;
                        for _ in 0..k {
                            let mut img = vec![0u8; *e];
                            for slot in img.iter_mut() {
                                *slot = (v % qs) as u8;
                                v /= qs;
                            }
                            images.push(img);
                        }
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| {
                                u_basis
                                    .iter()
                                    .zip(&images)
                                    .all(|(r, img)| row_times(r, &mats[x as usize]) == *img)
                            })
                            .collect();
                        out.push((set, "bilinear-restrict-map".to_string(), dd - k));
                    }
                }
            }
            // (ii) for d = e: subspaces u of F_q^{2d} with dim u = d + w and
            // dim(u ∩ E) = w, where E is the span of the last e coordinates;
            // members are the graphs contained in u.
            if *dd == *e {
                let amb = *dd + *e;
                let e_basis: Vec<Vec<u8>> = (0..*e)
                    .map(|i| {
                        let mut r = vec![0u8; amb];
                        r[*dd + i] = 1;
                        r
                    })
                    .collect();
                let graph_rows = |m: &[Vec<u8>]| -> Vec<Vec<u8>> {
                    (0..*dd)
                        .map(|i| {
                            let mut r = vec![0u8; amb];
                            r[i] = 1;
                            r[*dd..].copy_from_slice(&m[i]);
                            r
                        })
                        .collect()
                };
                for w in 1..*dd {
                    for u in gf::subspaces(field, amb, dd + w) {
                        let meet = gf::rank(field, &u) + *e - gf::sum_dim(field, &u, &e_basis);
                        if meet != w {
                            continue;
                        }
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| {
                                gf::subspace_contains(field, &u, &graph_rows(&mats[x as usize]))
                            })
                            .collect();
                        out.push((set, "bilinear-inside-u".to_string(), w));
                    }
                }
            }
        }
        FamilyTag::Doob { d1, d2 } => {
            // every product of per-factor choices (full factor or singleton)
            let factor_sizes: Vec<usize> = std::iter::repeat_n(16usize, *d1)
                .chain(std::iter::repeat_n(4usize, *d2))
                .collect();
            let factor_width = |fi: usize| if fi < *d1 { 2usize } else { 1 };
            let mut strides = vec![1usize; factor_sizes.len()];
            for i in (0..factor_sizes.len().saturating_sub(1)).rev() {
                strides[i] = strides[i + 1] * factor_sizes[i + 1];
            }
            // choice per factor: 0 = full, 1..=size = singleton; iterate all
            // combinations by a mixed-radix counter over (size + 1) digits
            let total: usize = factor_sizes.iter().map(|s| s + 1).product();
            for mut code in 0..total {
                let mut members: Vec<u32> = vec![0];
                let mut width = 0usize;
                for (fi, &size) in factor_sizes.iter().enumerate() {
                    let c = code % (size + 1);
                    code /= size + 1;
                    if c == 0 {
                        width += factor_width(fi);
                        let stride = strides[fi] as u32;
                        members = members
                            .iter()
                            .flat_map(|&base| (0..size as u32).map(move |j| base + j * stride))
                            .collect();
                    } else {
                        let j = (c - 1) as u32;
                        for m in members.iter_mut() {
                            *m += j * strides[fi] as u32;
                        }
                    }
                }
                out.push((members, "doob-product".to_string(), width));
            }
        }
        FamilyTag::HalvedCube { n: nn } => {
            if *nn % 2 == 0 {
                let bits: Vec<u32> = g
                    .graph
                    .labels
                    .iter()
                    .map(|l| {
                        l.bytes()
                            .enumerate()
                            .map(|(i, b)| ((b - b'0') as u32) << i)
                            .sum()
                    })
                    .collect();
                let index_of: std::collections::HashMap<u32, u32> = bits
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| (b, i as u32))
                    .collect();
                // (i) width 1: the n neighbors (at odd distance 1 in the
                // ambient cube) of an odd-weight vector z
                for z in 0..(1u32 << *nn) {
                    if z.count_ones() % 2 == 1 {
                        let set: Vec<u32> = (0..*nn)
                            .map(|i| index_of[&(z ^ (1 << i))])
                            .collect();
                        out.push((set, "halved-cube-odd-neighborhood".to_string(), 1));
                    }
                }
                // (ii) width d-1: fix one coordinate
                for i in 0..*nn {
                    for aa in 0..2u32 {
                        let set: Vec<u32> = (0..n as u32)
                            .filter(|&x| (bits[x as usize] >> i) & 1 == aa)
                            .collect();
                        out.push((set, "halved-cube-fix-coordinate".to_string(), d - 1));
                    }
                }
            }
            // odd n: no nontrivial descendents
        }
        FamilyTag::Custom => {
            return Err(SubsetError::Internal(
                "no classified forms for a custom graph".to_string(),
            ))
        }
    }
    Ok(out)
}

fn combinations_iter(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Generates the classified descendent forms for the graph's family,
/// profiles each, and verifies that it is a descendent of the stated width.
/// A generated form failing that check is an implementation bug and aborts
/// the enumeration. The classifications are complete for every shipped
/// family, so this output is the full descendent list.
pub fn enumerate_known_forms(a: &Analyzed) -> Result<Vec<DescendentRecord>, SubsetError> {
    let sets = known_form_sets(a)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut records = Vec::new();
    for (mut verts, form, expected_w) in sets {
        verts.sort_unstable();
        if verts.is_empty() {
            return Err(SubsetError::Internal(format!("classified form {form} produced an empty set")));
        }
        if !seen.insert(verts.clone()) {
            continue;
        }
        let prof = profile(a, &verts)?;
        if !prof.is_descendent || prof.w != expected_w {
            return Err(SubsetError::Internal(format!(
                "classified form {form} is not a descendent of width {expected_w}: got (w, w*) = ({}, {})",
                prof.w, prof.w_star
            )));
        }
        let mut rec = induced_analysis(a, prof)?;
        rec.generator = Generator::KnownForm(form);
        records.push(rec);
    }
    records.sort_by(|x, y| x.profile.vertices.cmp(&y.profile.vertices));
    Ok(records)
}

// ---------------------------------------------------------------------------
// Heuristic search
// ---------------------------------------------------------------------------

/// Result of the search enumerator: sound (every record is a verified
/// descendent) but complete only heuristically; `budget_exhausted` reports
/// whether any seed ran out of closure operations.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub records: Vec<DescendentRecord>,
    pub budget_exhausted: bool,
}

/// Geodetic closure of a vertex set: repeatedly add every vertex lying on a
/// geodesic between two current members, to a fixpoint.
pub fn convex_closure(a: &Analyzed, seed: &[u32]) -> Vec<u32> {
    let n = a.n();
    let mut mask = member_mask(n, seed);
    let mut members: Vec<u32> = seed.to_vec();
    loop {
        let mut added = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let dxy = a.g.dist.get(x as usize, y as usize);
                for z in 0..n {
                    if !mask[z]
                        && a.g.dist.get(x as usize, z) + a.g.dist.get(z, y as usize) == dxy
                    {
                        mask[z] = true;
                        added.push(z as u32);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        members.extend(added);
    }
    members.sort_unstable();
    members
}

fn max_dist_to_set(a: &Analyzed, set: &[u32], v: usize) -> usize {
    set.iter()
        .map(|&u| a.g.dist.get(u as usize, v))
        .max()
        .unwrap_or(0)
}

// Bron–Kerbosch with pivoting over sorted candidate vectors.
fn maximal_cliques(g: &Graph) -> Vec<Vec<u32>> {
    fn bk(
        g: &Graph,
        r: &mut Vec<u32>,
        p: Vec<u32>,
        x: Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        // pivot: the candidate with the most neighbors in p
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| {
                p.iter()
                    .filter(|&&v| g.adjacent(u as usize, v as usize))
                    .count()
            })
            .unwrap();
        let mut p = p;
        let todo: Vec<u32> = p
            .iter()
            .copied()
            .filter(|&v| !g.adjacent(pivot as usize, v as usize))
            .collect();
        let mut x = x;
        for v in todo {
            let next_p: Vec<u32> = p
                .iter()
                .copied()
                .filter(|&u| g.adjacent(v as usize, u as usize))
                .collect();
            let next_x: Vec<u32> = x
                .iter()
                .copied()
                .filter(|&u| g.adjacent(v as usize, u as usize))
                .collect();
            r.push(v);
            bk(g, r, next_p, next_x, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
            x.sort_unstable();
        }
    }
    let mut out = Vec::new();
    bk(
        g,
        &mut Vec::new(),
        (0..g.n as u32).collect(),
        Vec::new(),
        &mut out,
    );
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

// Expansion of one closed state: every single-vertex growth that keeps the
// width, re-closed. Returns the closures computed (width-preserving only)
// and the number of closure operations spent.
fn expand_state(a: &Analyzed, state: &[u32], w: usize) -> (Vec<Vec<u32>>, u64) {
    let mask = member_mask(a.n(), state);
    let mut next = Vec::new();
    let mut ops = 0u64;
    for v in 0..a.n() {
        if mask[v] || max_dist_to_set(a, state, v) > w {
            continue;
        }
        let mut grown = state.to_vec();
        grown.push(v as u32);
        grown.sort_unstable();
        let closed = convex_closure(a, &grown);
        ops += 1;
        let counts = distance_counts(a, &closed);
        if width_from_counts(&counts) == w {
            next.push(closed);
        }
    }
    (next, ops)
}

/// Heuristic enumerator for graphs too large to exhaust: width-1 candidates
/// from maximal cliques, everything else by grow-and-close over the convex
/// hulls of vertex pairs: a breadth-first walk over closed sets, each
/// grown one vertex at a time with its width held fixed and re-closed.
/// Every returned record is a verified descendent; completeness is
/// heuristic and never claimed. The walk is deterministic for any thread
/// count: frontiers are expanded level by level in canonical order, and the
/// closure-operation budget is committed per state before expansion.
pub fn enumerate_search(
    a: &Analyzed,
    budget: u64,
    threads: usize,
) -> Result<SearchOutcome, SubsetError> {
    let n = a.n();
    let threads = threads.max(1);
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    candidates.push((0..n as u32).collect());
    for v in 0..n as u32 {
        candidates.push(vec![v]);
    }
    for clique in maximal_cliques(&a.g.graph) {
        candidates.push(clique);
    }

    // seed states: convex hulls of all vertex pairs
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|x| ((x + 1)..n as u32).map(move |y| (x, y)))
        .collect();
    let mut budget_left = budget;
    let mut exhausted = false;
    let hulls: Vec<Vec<u32>> = run_sharded(threads, &pairs, |&(x, y)| convex_closure(a, &[x, y]));
    budget_left = budget_left.saturating_sub(pairs.len() as u64);

    let mut visited: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    for h in hulls {
        if visited.insert(h.clone()) {
            frontier.push(h);
        }
    }
    frontier.sort();

    while !frontier.is_empty() {
        candidates.extend(frontier.iter().cloned());
        // commit budget per state, in canonical order: a state may spend at
        // most n closure operations
        let mut admitted = 0usize;
        for _ in &frontier {
            if budget_left < n as u64 {
                exhausted = true;
                break;
            }
            budget_left -= n as u64;
            admitted += 1;
        }
        let work = &frontier[..admitted];
        let widths: Vec<usize> = work
            .iter()
            .map(|s| width_from_counts(&distance_counts(a, s)))
            .collect();
        let items: Vec<(usize, &Vec<u32>)> = work.iter().enumerate().collect();
        let expanded: Vec<Vec<Vec<u32>>> =
            run_sharded(threads, &items, |&(i, state)| expand_state(a, state, widths[i]).0);
        let mut next = Vec::new();
        for batch in expanded {
            for closed in batch {
                if visited.insert(closed.clone()) {
                    next.push(closed);
                }
            }
        }
        next.sort();
        next.dedup();
        frontier = next;
    }

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut records = Vec::new();
    for verts in candidates {
        if verts.is_empty() || !seen.insert(verts.clone()) {
            continue;
        }
        let prof = profile(a, &verts)?;
        if prof.is_descendent {
            let mut rec = induced_analysis(a, prof)?;
            rec.generator = Generator::Search;
            records.push(rec);
        }
    }
    records.sort_by(|x, y| x.profile.vertices.cmp(&y.profile.vertices));
    Ok(SearchOutcome { records, budget_exhausted: exhausted })
}

// Applies `f` to every item, sharding across threads by index; results come
// back in input order regardless of thread count.
fn run_sharded<T: Sync, R: Send>(
    threads: usize,
    items: &[T],
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = t;
                    while i < items.len() {
                        out.push((i, f(&items[i])));
                        i += threads;
                    }
                    out
                })
            })
            .collect();
        let mut indexed: Vec<(usize, R)> =
            handles.into_iter().flat_map(|h| h.join().unwrap()).collect();
        indexed.sort_by_key(|(i, _)| *i);
        indexed.into_iter().map(|(_, r)| r).collect()
    })
}

// ---------------------------------------------------------------------------
// Transitivity
// ---------------------------------------------------------------------------

/// Result of checking descendents of an induced descendent subgraph against
/// descendents of the ambient graph.
#[derive(Debug, Clone)]
pub struct TransitivityCheck {
    /// (vertices in ambient indexing, dual width in Γ_Y, dual width in Γ)
    pub entries: Vec<(Vec<u32>, usize, usize)>,
    /// every descendent of Γ_Y is a descendent of Γ with shifted dual width
    pub forward_ok: bool,
    /// every descendent of Γ inside Y is a descendent of Γ_Y
    pub backward_ok: bool,
}

/// For a descendent Y with Γ_Y connected: enumerates the descendents of
/// Γ_Y exhaustively and checks that they are exactly the descendents of Γ
/// contained in Y, with dual widths related by
/// `w*(Z in Γ) = w*(Z in Γ_Y) + w*(Y)`.
pub fn descendents_within(a: &Analyzed, y: &[u32]) -> Result<TransitivityCheck, SubsetError> {
    let prof = profile(a, y)?;
    if !prof.is_descendent {
        return Err(SubsetError::NotDescendent { w: prof.w, w_star: prof.w_star, d: a.d() });
    }
    let verts: Vec<usize> = prof.vertices.iter().map(|&v| v as usize).collect();
    let sub = induced_subgraph(&a.g.graph, &verts).map_err(|_| SubsetError::EmptySubset)?;
    let drg = verify_distance_regular(sub, FamilyTag::Custom)
        .map_err(|e| SubsetError::Internal(format!("induced graph not distance-regular: {e}")))?;
    let inner = crate::analysis::analyze(drg)
        .map_err(|e| SubsetError::Internal(format!("induced graph analysis failed: {e}")))?;

    let inner_desc = enumerate_exhaustive(&inner, 1)?;
    let mut entries = Vec::new();
    let mut forward_ok = true;
    for rec in &inner_desc {
        let ambient: Vec<u32> = rec
            .profile
            .vertices
            .iter()
            .map(|&i| prof.vertices[i as usize])
            .collect();
        let outer_prof = profile(a, &ambient)?;
        if !outer_prof.is_descendent
            || outer_prof.w_star != rec.profile.w_star + prof.w_star
        {
            forward_ok = false;
        }
        entries.push((ambient, rec.profile.w_star, outer_prof.w_star));
    }

    // backward: ambient descendents inside Y (exhaustive when feasible)
    let mut backward_ok = true;
    if a.n() <= exhaustive_cap() {
        let yset: HashSet<u32> = prof.vertices.iter().copied().collect();
        let inner_sets: HashSet<Vec<u32>> =
            entries.iter().map(|(v, _, _)| v.clone()).collect();
        for rec in enumerate_exhaustive(a, 1)? {
            if rec.profile.vertices.iter().all(|v| yset.contains(v))
                && !inner_sets.contains(&rec.profile.vertices)
            {
                backward_ok = false;
            }
        }
    }
    Ok(TransitivityCheck { entries, forward_ok, backward_ok })
}
