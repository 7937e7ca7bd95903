//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All arithmetic is exact, so every assertion is an equality; there
//! are no tolerances anywhere.

use drgdesc::analysis::{analyze, Analyzed};
use drgdesc::exact::rat;
use drgdesc::graphs::{
    bilinear_forms, doob, grassmann, halved_cube, hamming, johnson, DistanceRegularGraph,
};
use drgdesc::leonard::{
    expand, matches_classical, normalized_intersection_ratios, predict_connectivity,
    rho_descendent,
};
use drgdesc::qmatroid::full_report;
use drgdesc::report::{default_mode, enumerate, render_text, verify_all, EnumMode, VerifyOptions};
use drgdesc::subsets::{
    distance_counts, dual_width_from_counts, enumerate_exhaustive, enumerate_known_forms,
    enumerate_search, width_from_counts, DescendentRecord, DEFAULT_SEARCH_BUDGET,
};
use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn ctx(g: Result<DistanceRegularGraph, drgdesc::graphs::GraphError>) -> Analyzed {
    analyze(g.expect("constructor")).expect("analysis")
}

/// Every graph the acceptance suite ships, with its default enumeration
/// mode (exhaustive under the subset cap, classified forms otherwise).
fn roster() -> Vec<Analyzed> {
    vec![
        ctx(hamming(3, 2)),
        ctx(hamming(4, 2)),
        ctx(hamming(3, 3)),
        ctx(hamming(2, 3)),
        ctx(johnson(6, 3)),
        ctx(johnson(7, 3)),
        ctx(johnson(4, 2)),
        ctx(doob(1, 1)),
        ctx(halved_cube(4)),
        ctx(halved_cube(5)),
        ctx(halved_cube(6)),
        ctx(grassmann(2, 4, 2)),
        ctx(grassmann(3, 4, 2)),
        ctx(bilinear_forms(2, 2, 2)),
        ctx(bilinear_forms(2, 2, 3)),
    ]
}

fn family(a: &Analyzed) -> Vec<DescendentRecord> {
    let mode = default_mode(a);
    let (records, complete, exhausted) = enumerate(a, mode, DEFAULT_SEARCH_BUDGET, 1).unwrap();
    assert!(complete, "{}: roster enumeration must be complete", a.g.id());
    assert!(!exhausted);
    records
}

fn conclude(criterion: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {status} - {detail}");
    assert!(ok, "{criterion}: {detail}");
}

fn vertex_sets(records: &[DescendentRecord]) -> Vec<Vec<u32>> {
    records.iter().map(|r| r.profile.vertices.clone()).collect()
}

#[test]
fn criterion_01_hamming_completeness() {
    let t0 = Instant::now();
    let a = ctx(hamming(3, 2));
    let exact = enumerate_exhaustive(&a, 1).unwrap();
    let known = enumerate_known_forms(&a).unwrap();
    let ok32 = exact.len() == 27 && vertex_sets(&exact) == vertex_sets(&known);
    let t32 = t0.elapsed();

    let t0 = Instant::now();
    let a = ctx(hamming(4, 2));
    let exact = enumerate_exhaustive(&a, 1).unwrap();
    let known = enumerate_known_forms(&a).unwrap();
    let ok42 = exact.len() == 81 && vertex_sets(&exact) == vertex_sets(&known);
    let t42 = t0.elapsed();

    let in_time = t32.as_secs() < 60 && t42.as_secs() < 60;
    conclude(
        "criterion 1 (Hamming completeness)",
        ok32 && ok42 && in_time,
        &format!(
            "H(3,2): 27 descendents, all coordinate-restriction forms, {:?}; H(4,2): 81, {:?}",
            t32, t42
        ),
    );
}

#[test]
fn criterion_02_johnson_completeness() {
    let t0 = Instant::now();
    let a = ctx(johnson(6, 3));
    let exact = enumerate_exhaustive(&a, 1).unwrap();
    let known = enumerate_known_forms(&a).unwrap();
    let same = vertex_sets(&exact) == vertex_sets(&known);
    let elapsed = t0.elapsed();
    // both classified shapes must be present: subsets containing a fixed
    // element set, and (since the ground set splits evenly) subsets inside
    // a fixed element set
    let contains_form = known
        .iter()
        .filter(|r| r.generator.label() == "known-form:johnson-contains-u")
        .count();
    let inside_form = known
        .iter()
        .filter(|r| r.generator.label() == "known-form:johnson-inside-u")
        .count();
    conclude(
        "criterion 2 (Johnson completeness)",
        same && exact.len() == 63 && contains_form > 0 && inside_form > 0 && elapsed.as_secs() < 600,
        &format!(
            "J(6,3): exhaustive = classified forms, {} descendents ({} + {} nontrivial by shape), {:?}",
            exact.len(),
            contains_form,
            inside_form,
            elapsed
        ),
    );
}

#[test]
fn criterion_03_fundamental_inequality() {
    let mut total = 0usize;
    for a in roster() {
        let n = a.n();
        let mut rng = ChaCha8Rng::seed_from_u64(0xd1ce ^ n as u64);
        let mut tested = 0;
        while tested < 1000 {
            let verts: Vec<u32> = (0..n as u32).filter(|_| rng.gen_bool(0.5)).collect();
            if verts.is_empty() {
                continue;
            }
            let counts = distance_counts(&a, &verts);
            let w = width_from_counts(&counts);
            let ws = dual_width_from_counts(&a, &counts);
            assert!(
                w + ws >= a.d(),
                "{}: subset {:?} has w + w* = {} < d = {}",
                a.g.id(),
                verts,
                w + ws,
                a.d()
            );
            tested += 1;
        }
        total += tested;
    }
    conclude(
        "criterion 3 (fundamental inequality)",
        true,
        &format!("{total} uniform nonempty subsets across the roster, zero violations of w + w* >= d"),
    );
}

#[test]
fn criterion_04_descendent_structure() {
    let mut checked = 0usize;
    for a in roster() {
        let cp = a.classical.as_ref().expect("roster graphs are classical");
        for r in family(&a) {
            let p = &r.profile;
            assert!(
                p.is_completely_regular && p.rho == p.w_star,
                "{}: {:?} not completely regular with rho = w*",
                a.g.id(),
                p.vertices
            );
            if p.w > 1 && p.w < a.d() {
                assert!(p.is_convex, "{}: {:?} not convex", a.g.id(), p.vertices);
                if cp.alpha.is_zero() {
                    assert!(
                        p.is_strongly_closed,
                        "{}: {:?} not strongly closed (alpha = 0)",
                        a.g.id(),
                        p.vertices
                    );
                }
            }
            checked += 1;
        }
    }
    conclude(
        "criterion 4 (descendent structure)",
        true,
        &format!("{checked} descendents: completely regular with rho = w*; convex for 1 < w < d; strongly closed when alpha = 0"),
    );
}

#[test]
fn criterion_05_classical_inheritance() {
    let mut checked = 0usize;
    for a in roster() {
        let cp = a.classical.as_ref().unwrap();
        for r in family(&a) {
            if !r.induced_connected {
                continue;
            }
            let (b, c) = (r.induced_b.as_ref().unwrap(), r.induced_c.as_ref().unwrap());
            assert!(
                matches_classical(b, c, r.profile.w, cp.q, &cp.alpha, &cp.beta),
                "{}: descendent {:?} does not inherit (w, q, alpha, beta)",
                a.g.id(),
                r.profile.vertices
            );
            checked += 1;
        }
    }
    conclude(
        "criterion 5 (classical inheritance)",
        true,
        &format!("{checked} connected descendents have classical parameters (w, q, alpha, beta); zero failures"),
    );
}

#[test]
fn criterion_06_leonard_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xaff);
    for a in roster() {
        let (b, c) = normalized_intersection_ratios(&a.expanded);
        for i in 0..=a.d() {
            assert_eq!(b[i], rat(a.g.b_i(i)), "{} b_{}", a.g.id(), i);
            assert_eq!(c[i], rat(a.g.c_i(i)), "{} c_{}", a.g.id(), i);
        }
        let reference = (b, c);
        for _ in 0..100 {
            let nz = |rng: &mut ChaCha8Rng| loop {
                let v = drgdesc::exact::ratio(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
                if !v.is_zero() {
                    return v;
                }
            };
            let xi = nz(&mut rng);
            let xi_star = nz(&mut rng);
            let zeta = drgdesc::exact::ratio(rng.gen_range(-9i64..=9), 1);
            let zeta_star = drgdesc::exact::ratio(rng.gen_range(-9i64..=9), 1);
            let t = a.expanded.affine_transform(&xi, &zeta, &xi_star, &zeta_star);
            assert_eq!(
                normalized_intersection_ratios(&t),
                reference,
                "{}: affine transform changed the normalized array",
                a.g.id()
            );
        }
    }
    conclude(
        "criterion 6 (Leonard round trip)",
        true,
        "normalized reconstructed arrays equal the graph arrays exactly; invariant under 100 random affine transformations each",
    );
}

#[test]
fn criterion_07_rho_descendent_consistency() {
    let mut checked = 0usize;
    for a in roster() {
        for r in family(&a) {
            if !r.induced_connected || r.profile.w == 0 {
                continue;
            }
            let sub = rho_descendent(&a.parray, r.profile.w, 0).unwrap();
            let ea = expand(&sub).unwrap();
            let (b, c) = normalized_intersection_ratios(&ea);
            let (gb, gc) = (r.induced_b.as_ref().unwrap(), r.induced_c.as_ref().unwrap());
            for i in 0..=r.profile.w {
                let want_b = if i < r.profile.w { rat(gb[i]) } else { rat(0) };
                let want_c = if i > 0 { rat(gc[i - 1]) } else { rat(0) };
                assert_eq!(b[i], want_b, "{}: {:?} b_{}", a.g.id(), r.profile.vertices, i);
                assert_eq!(c[i], want_c, "{}: {:?} c_{}", a.g.id(), r.profile.vertices, i);
            }
            checked += 1;
        }
    }
    conclude(
        "criterion 7 (rho-descendent consistency)",
        true,
        &format!("{checked} connected descendents: induced arrays equal the 0-descendent transform at d' = w, exactly"),
    );
}

#[test]
fn criterion_08_quantum_matroid() {
    // known-form families for the Hamming graphs, exhaustive for J(6,3)
    let cases: Vec<(Analyzed, Vec<DescendentRecord>, (usize, i64, i64, i64))> = vec![
        {
            let a = ctx(hamming(3, 2));
            let recs = enumerate_known_forms(&a).unwrap();
            (a, recs, (3, 1, 0, 1))
        },
        {
            let a = ctx(hamming(4, 2));
            let recs = enumerate_known_forms(&a).unwrap();
            (a, recs, (4, 1, 0, 1))
        },
        {
            let a = ctx(hamming(3, 3));
            let recs = enumerate_known_forms(&a).unwrap();
            (a, recs, (3, 1, 0, 2))
        },
        {
            let a = ctx(johnson(6, 3));
            let recs = enumerate_exhaustive(&a, 1).unwrap();
            (a, recs, (3, 1, 1, 3))
        },
    ];
    let mut failures = Vec::new();
    for (a, recs, (d, q, alpha, beta)) in &cases {
        let report = full_report(a, recs).unwrap();
        let axioms = report.all_axioms();
        let params_ok = report.line_regular_q == Some(*q)
            && report.zigzag_regular_alpha == Some(*alpha)
            && report.dual_line_regular_beta == Some(*beta)
            && a.d() == *d;
        let counts_ok = report.pair_counts_ok == Some(true);
        if !(axioms && params_ok && counts_ok) {
            failures.push(format!(
                "{}: qm = [{}, {}, {}, {}], (q, alpha, beta) = ({:?}, {:?}, {:?}) want ({q}, {alpha}, {beta}), pair_counts = {:?}, first witness: {}",
                a.g.id(),
                report.qm1,
                report.qm2,
                report.qm3,
                report.qm4,
                report.line_regular_q,
                report.zigzag_regular_alpha,
                report.dual_line_regular_beta,
                report.pair_counts_ok,
                report.witnesses.first().cloned().unwrap_or_default()
            ));
        }
    }
    conclude(
        "criterion 8 (quantum matroid)",
        failures.is_empty(),
        &if failures.is_empty() {
            "H(3,2), H(4,2), H(3,3), J(6,3) families pass QM1-QM4 with the stated parameters".to_string()
        } else {
            // J(6,3) has an evenly split ground set, so complementation is an
            // automorphism and every adjacent pair lies in TWO width-1
            // descendents ({z : u ⊆ z} and {z ⊆ v}); uniqueness, modularity
            // and the pair counts all fail on the full family. The stated
            // expectation holds for the single-shape subfamily instead (see
            // the companion test).
            format!("full-family failures: {}", failures.join(" | "))
        },
    );
}

#[test]
fn johnson_single_shape_subfamily_is_a_regular_quantum_matroid() {
    // the subfamily of J(6,3) consisting of the subsets-containing-u shape
    // (plus the trivial members) is exactly the rank-3 truncated-Boolean
    // poset, and it does satisfy the full suite with (q, alpha, beta) =
    // (1, 1, 3)
    let a = ctx(johnson(6, 3));
    let known = enumerate_known_forms(&a).unwrap();
    let sub: Vec<DescendentRecord> = known
        .into_iter()
        .filter(|r| {
            let g = r.generator.label();
            g == "known-form:johnson-contains-u" || g.starts_with("known-form:trivial")
        })
        .collect();
    assert_eq!(sub.len(), 1 + 6 + 15 + 20);
    let report = full_report(&a, &sub).unwrap();
    assert!(report.all_axioms(), "witnesses: {:?}", report.witnesses);
    assert_eq!(report.line_regular_q, Some(1));
    assert_eq!(report.zigzag_regular_alpha, Some(1));
    assert_eq!(report.dual_line_regular_beta, Some(3));
    assert!(report.intersection_closed);
    assert_eq!(report.ud_property, vec![true; 4]);
    assert_eq!(report.pair_counts_ok, Some(true));
    println!("supplementary: J(6,3) single-shape subfamily is a regular quantum matroid (3,1,1,3)");
}

#[test]
fn criterion_09_negative_structure() {
    let mut details = Vec::new();
    for (a, widths_sizes) in [
        (ctx(doob(1, 1)), vec![(1usize, 4usize, 16usize), (2, 16, 4)]),
        (ctx(halved_cube(6)), vec![(1, 6, 32), (2, 16, 12)]),
    ] {
        // classified forms all verify as descendents with the stated widths
        // (the generator aborts if any form fails its descendent check)
        let known = enumerate_known_forms(&a).unwrap();
        for (w, size, count) in &widths_sizes {
            let found = known
                .iter()
                .filter(|r| r.profile.w == *w && r.profile.vertices.len() == *size)
                .count();
            assert_eq!(
                found, *count,
                "{}: expected {count} width-{w} descendents of size {size}",
                a.g.id()
            );
        }
        // search with the default budget finds nothing outside the
        // classified forms
        let search = enumerate_search(&a, DEFAULT_SEARCH_BUDGET, 1).unwrap();
        assert!(!search.budget_exhausted, "{}", a.g.id());
        assert_eq!(
            vertex_sets(&search.records),
            vertex_sets(&known),
            "{}: search found descendents outside the classified forms",
            a.g.id()
        );
        // the unique-descendent property fails, with a recorded witness pair
        let report = full_report(&a, &known).unwrap();
        assert!(
            report.ud_property.iter().any(|&x| !x),
            "{}: UD unexpectedly holds",
            a.g.id()
        );
        let witness = report
            .witnesses
            .iter()
            .find(|w| w.contains("at distance"))
            .expect("recorded witness pair");
        details.push(format!("{}: ud = {:?}, witness: {}", a.g.id(), report.ud_property, witness));
    }
    conclude(
        "criterion 9 (negative structure)",
        true,
        &details.join(" | "),
    );
}

#[test]
fn criterion_10_connectivity_prediction() {
    let mut checked = 0usize;
    for a in roster() {
        for r in family(&a) {
            if r.profile.w_star == 0 || r.profile.w_star == a.d() {
                continue;
            }
            let predicted = predict_connectivity(&a.parray, r.profile.w_star);
            assert_eq!(
                Some(predicted),
                r.predicted_connected,
                "{}: record prediction mismatch",
                a.g.id()
            );
            assert_eq!(
                predicted, r.induced_connected,
                "{}: {:?} predicted connected = {predicted}, actual = {}",
                a.g.id(),
                r.profile.vertices,
                r.induced_connected
            );
            checked += 1;
        }
    }
    conclude(
        "criterion 10 (connectivity prediction)",
        true,
        &format!("{checked} nontrivial descendents: case-based prediction equals actual connectivity"),
    );
}

#[test]
fn criterion_11_determinism() {
    // byte-identical verify-all output across repeated runs and across
    // 1 vs 4 worker threads, on a threaded exhaustive run and a threaded
    // search run
    let mut ok = true;
    let mut details = Vec::new();
    for (a, mode) in [
        (ctx(hamming(4, 2)), EnumMode::Exhaustive),
        (ctx(halved_cube(6)), EnumMode::Search),
    ] {
        let opts1 = VerifyOptions {
            mode: Some(mode),
            budget: DEFAULT_SEARCH_BUDGET,
            threads: 1,
            samples: 200,
        };
        let opts4 = VerifyOptions { threads: 4, ..opts1.clone() };
        let (r1a, _) = verify_all(&a, &opts1);
        let (r1b, _) = verify_all(&a, &opts1);
        let (r4, _) = verify_all(&a, &opts4);
        let s1a = serde_json::to_string_pretty(&r1a).unwrap();
        let s1b = serde_json::to_string_pretty(&r1b).unwrap();
        let s4 = serde_json::to_string_pretty(&r4).unwrap();
        let same = s1a == s1b && s1a == s4 && render_text(&r1a) == render_text(&r4);
        ok &= same;
        details.push(format!(
            "{} ({} mode): {} bytes, identical across runs and thread counts = {}",
            a.g.id(),
            match mode {
                EnumMode::Exhaustive => "exhaustive",
                EnumMode::Known => "known",
                EnumMode::Search => "search",
            },
            s1a.len(),
            same
        ));
    }
    conclude("criterion 11 (determinism)", ok, &details.join(" | "));
}
