//! Cross-module agreement: the construction, the exhaustive verifier, the
//! exact search, and the smoothed objectives must tell one consistent story
//! wherever their domains overlap.

use std::sync::{Mutex, MutexGuard, OnceLock};

use proptest::prelude::*;
use turan_core::smoothing::{
    grad_n, grad_r, objective_n, objective_r, random_relaxed_system, EdgeSystem, FormulaVariant,
    SmoothingParams,
};
use turan_core::{
    build_turan, complement_count_closed, density_table, exec, is_turan_property,
    max_edges_in_any_ksubset, max_kfree, min_cover, rank_triple, unrank_triple, BuildMode,
    TripleFamily, UniformTriple, VertexSetSize, DEFAULT_NODE_BUDGET,
};

/// Serializes tests that flip the global sequential-lane switch, and resets
/// the switch when the guard drops.
fn lane_guard() -> LaneGuard {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    LaneGuard(
        LOCK.get_or_init(Mutex::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner()),
    )
}

struct LaneGuard(#[allow(dead_code)] MutexGuard<'static, ()>);

impl Drop for LaneGuard {
    fn drop(&mut self) {
        exec::force_sequential(false);
    }
}

fn params(sigma: f64, epsilon: f64) -> SmoothingParams {
    SmoothingParams::new(sigma, epsilon).unwrap()
}

#[test]
fn search_confirms_construction_optimal_at_n6_k4() {
    let inst = build_turan(6, 4, BuildMode::Strict).unwrap();
    let found = max_kfree(6, 4, DEFAULT_NODE_BUDGET).unwrap();
    assert!(found.complete);
    assert_eq!(found.max_edges, inst.t().edge_count());
    assert_eq!(found.max_edges, 14);
    assert!(is_turan_property(&found.witness, 4).unwrap().holds);
    assert!(is_turan_property(inst.t(), 4).unwrap().holds);
}

#[test]
fn search_witnesses_pass_the_verifier_and_cover_complements() {
    for (n, want) in [(4usize, 3usize), (5, 7), (6, 14)] {
        let found = max_kfree(n, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert!(found.complete, "n = {n}");
        assert_eq!(found.max_edges, want, "n = {n}");
        assert_eq!(found.witness.edge_count(), want, "n = {n}");
        let report = is_turan_property(&found.witness, 4).unwrap();
        assert!(report.holds, "n = {n}");

        let (cover, complete) = min_cover(n, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert!(complete);
        assert_eq!(cover + want, found.witness.triple_capacity(), "n = {n}");
    }
}

#[test]
fn construction_verifies_and_closed_form_matches() {
    for n in [9usize, 12] {
        let inst = build_turan(n, 4, BuildMode::Strict).unwrap();
        let report = is_turan_property(inst.t(), 4).unwrap();
        assert!(report.holds, "n = {n}");
        assert_eq!(
            inst.tbar().edge_count() as u64,
            complement_count_closed(n, 4).unwrap(),
            "n = {n}"
        );
        assert_eq!(
            inst.t().edge_count() + inst.tbar().edge_count(),
            inst.t().triple_capacity(),
            "n = {n}"
        );
    }
}

#[test]
fn density_gap_shrinks_towards_the_limit() {
    let rows = density_table(4, &[9, 12, 15, 18, 21]).unwrap();
    for pair in rows.windows(2) {
        assert!(
            pair[1].gap.abs() < pair[0].gap.abs(),
            "gap magnitude must shrink as n grows"
        );
    }
    for row in &rows {
        assert!(row.gap < 0.0, "finite density overshoots the limit");
        assert!((row.limit - 5.0 / 9.0).abs() < 1e-15);
    }
}

#[test]
fn smoothed_count_of_a_search_witness_approaches_half_its_size() {
    // Search output feeds the smoothing stack: at tiny sigma the smoothed
    // count concentrates at (number of edges) / 2.
    let found = max_kfree(5, 4, DEFAULT_NODE_BUDGET).unwrap();
    let sys = EdgeSystem::canonical_from_family(&found.witness, 4).unwrap();
    let n = objective_n(&sys, &params(1e-3, 0.25));
    assert!(
        (n - found.max_edges as f64 / 2.0).abs() < 1e-6,
        "N = {n}, edges = {}",
        found.max_edges
    );
}

#[test]
fn objectives_are_invariant_under_vertex_relabelling() {
    let sys = random_relaxed_system(6, 4, 5, 99).unwrap();
    let pi = [3usize, 0, 5, 1, 4, 2];
    let relabelled = sys.permuted(&pi).unwrap();
    let p = params(0.7, 0.25);
    assert!((objective_n(&sys, &p) - objective_n(&relabelled, &p)).abs() < 1e-12);
    for variant in [FormulaVariant::A, FormulaVariant::B] {
        let a = objective_r(&sys, &p, variant).unwrap();
        let b = objective_r(&relabelled, &p, variant).unwrap();
        assert!((a - b).abs() < 1e-12, "variant {variant}");
    }
}

#[test]
fn lanes_agree_bitwise_across_the_public_surface() {
    let _guard = lane_guard();

    let inst = build_turan(9, 4, BuildMode::Strict).unwrap();
    let sys = random_relaxed_system(7, 4, 6, 42).unwrap();
    let p = params(0.5, 0.25);

    exec::force_sequential(false);
    let scan_par = max_edges_in_any_ksubset(inst.t(), 4).unwrap();
    let n_par = objective_n(&sys, &p);
    let r_par = objective_r(&sys, &p, FormulaVariant::A).unwrap();
    let gn_par = grad_n(&sys, &p);
    let gr_par = grad_r(&sys, &p, FormulaVariant::A).unwrap();

    exec::force_sequential(true);
    let scan_seq = max_edges_in_any_ksubset(inst.t(), 4).unwrap();
    let n_seq = objective_n(&sys, &p);
    let r_seq = objective_r(&sys, &p, FormulaVariant::A).unwrap();
    let gn_seq = grad_n(&sys, &p);
    let gr_seq = grad_r(&sys, &p, FormulaVariant::A).unwrap();

    assert_eq!(scan_par, scan_seq);
    assert_eq!(n_par.to_bits(), n_seq.to_bits());
    assert_eq!(r_par.to_bits(), r_seq.to_bits());
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&gn_par), bits(&gn_seq));
    assert_eq!(bits(&gr_par), bits(&gr_seq));
}

fn family_from_ranks(n: usize, ranks: &[usize]) -> TripleFamily {
    let vs = VertexSetSize::new(n).unwrap();
    let mut f = TripleFamily::empty(vs);
    for &r in ranks {
        f.insert(unrank_triple(r, vs).unwrap()).unwrap();
    }
    f
}

fn arb_family() -> impl Strategy<Value = TripleFamily> {
    (4usize..=9).prop_flat_map(|n| {
        let cap = n * (n - 1) * (n - 2) / 6;
        prop::collection::vec(0..cap, 0..=cap.min(48))
            .prop_map(move |ranks| family_from_ranks(n, &ranks))
    })
}

proptest! {
    #[test]
    fn rank_unrank_round_trip(n in 3usize..40, seed in any::<u64>()) {
        let vs = VertexSetSize::new(n).unwrap();
        let cap = n * (n - 1) * (n - 2) / 6;
        let r = (seed % cap as u64) as usize;
        let t = unrank_triple(r, vs).unwrap();
        prop_assert_eq!(rank_triple(t, vs).unwrap(), r);
    }

    #[test]
    fn triple_rank_orders_by_colex(n in 4usize..20, seed in any::<u64>()) {
        let vs = VertexSetSize::new(n).unwrap();
        let cap = n * (n - 1) * (n - 2) / 6;
        let r = (seed % (cap as u64 - 1)) as usize;
        let a = unrank_triple(r, vs).unwrap();
        let b = unrank_triple(r + 1, vs).unwrap();
        // Colex order: compare (c, b, a) lexicographically.
        let key = |t: UniformTriple| (t.c(), t.b(), t.a());
        prop_assert!(key(a) < key(b));
    }

    #[test]
    fn complement_is_an_involution(f in arb_family()) {
        let c = f.complement();
        prop_assert_eq!(f.edge_count() + c.edge_count(), f.triple_capacity());
        prop_assert_eq!(c.complement(), f);
    }

    #[test]
    fn text_round_trip_preserves_families(f in arb_family()) {
        let text = f.to_text();
        let back = TripleFamily::from_text(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}
