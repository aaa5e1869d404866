//! Recognition, skeleton and fast path on constructed instances.

use std::collections::BTreeMap;

use proptest::prelude::*;
use strongprod::coloring::Stage;
use strongprod::graph::Edge;
use strongprod::iso::canonical_form;
use strongprod::oracle::{gen_product_instance, oracle_pfd, relabel_random, s1_gap_fixture, twin_pair_fixture, twisted_fixture, ProductInstance};
use strongprod::recognize::{pfd_fast, recognize};
use strongprod::sclass::{backbone, relative_s_partition};
use strongprod::skeleton::build_skeleton;
use strongprod::factor::factor_neighborhood;
use strongprod::{Error, Graph};

fn ground_truth_coloring(inst: &ProductInstance) -> BTreeMap<Edge, usize> {
    inst.graph
        .edges()
        .filter_map(|(u, v)| inst.ground_truth_coords.differing_coordinate(u, v).map(|i| ((u, v), i)))
        .collect()
}

/// Equal up to renaming colors.
fn same_partition(a: &BTreeMap<Edge, usize>, b: &BTreeMap<Edge, usize>) -> bool {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    a.keys().eq(b.keys())
        && a.iter().all(|(e, &x)| {
            let y = b[e];
            *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x
        })
}

fn sorted_forms(gs: &[Graph]) -> Vec<strongprod::iso::CanonicalForm> {
    let mut v: Vec<_> = gs.iter().map(|g| canonical_form(g).unwrap()).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_products_are_recovered(a in 3usize..=6, b in 3usize..=6, seed in any::<u64>()) {
        let inst = gen_product_instance(&[a, b], seed).unwrap();
        let r = recognize(&inst.graph).unwrap();
        prop_assert!(r.in_upsilon, "{:?}", r.diagnostics);
        prop_assert_eq!(sorted_forms(&r.extracted_factors), sorted_forms(&inst.ground_truth_factors));
        let skeleton = r.coloring.unwrap();
        prop_assert!(same_partition(&skeleton.color_of, &ground_truth_coloring(&inst)));
        prop_assert_eq!(sorted_forms(&pfd_fast(&inst.graph).unwrap().factors), sorted_forms(&inst.ground_truth_factors));
    }

    #[test]
    fn recognition_ignores_vertex_names(a in 3usize..=5, b in 3usize..=5, seed in any::<u64>()) {
        let inst = gen_product_instance(&[a, b], seed).unwrap();
        let (h, perm) = relabel_random(&inst.graph, seed.rotate_left(17));
        let (r, s) = (recognize(&inst.graph).unwrap(), recognize(&h).unwrap());
        prop_assert_eq!(r.in_upsilon, s.in_upsilon);
        prop_assert_eq!(sorted_forms(&r.extracted_factors), sorted_forms(&s.extracted_factors));
        let moved: BTreeMap<Edge, usize> = r.coloring.unwrap().color_of.iter()
            .map(|(&(u, v), &c)| ((perm[u].min(perm[v]), perm[u].max(perm[v])), c))
            .collect();
        prop_assert!(same_partition(&moved, &s.coloring.unwrap().color_of));
    }
}

#[test]
fn three_factor_product() {
    let inst = gen_product_instance(&[3, 3, 4], 7).unwrap();
    let r = recognize(&inst.graph).unwrap();
    assert!(r.in_upsilon, "{:?}", r.diagnostics);
    assert_eq!(r.max_local_factors, 3);
    assert_eq!(sorted_forms(&r.extracted_factors), sorted_forms(&inst.ground_truth_factors));
    assert!(same_partition(&r.coloring.unwrap().color_of, &ground_truth_coloring(&inst)));
}

#[test]
fn twisted_band_is_prime_but_locally_refined() {
    let g = twisted_fixture();
    assert_eq!(oracle_pfd(&g).unwrap().prime_count, 1);
    for &v in &backbone(&g).unwrap().vertices {
        assert_eq!(factor_neighborhood(&g, v).unwrap().prime_count(), 2);
    }
    let r = recognize(&g).unwrap();
    assert!(!r.in_upsilon);
    assert!(!r.diagnostics.is_empty());
    // The fast path trusts membership: vertex and edge counts of P3 ⊠ C4 match the band.
    let fast = pfd_fast(&g).unwrap();
    assert_eq!(fast.factors.len(), 2);
    assert!(!r.reconstruction_ok);
}

#[test]
fn bull_fibers_need_the_second_neighborhood() {
    for k in 3..=6 {
        let inst = s1_gap_fixture(k);
        let skeleton = build_skeleton(&inst.graph).unwrap();
        let truth = ground_truth_coloring(&inst);
        assert!(same_partition(&skeleton.color_of, &truth), "k = {k}");
        let late: Vec<Edge> = skeleton
            .stage_of
            .iter()
            .filter(|(_, &s)| s == Stage::N2Sweep)
            .map(|(&e, _)| e)
            .collect();
        assert!(!late.is_empty(), "k = {k}");
        // Every late edge lies in a bull fiber over the apex vertex 1.
        let c = &inst.ground_truth_coords;
        for (u, v) in late {
            assert_eq!(c.differing_coordinate(u, v), Some(0));
            assert_eq!(c.coords(u)[1], 1);
        }
        assert!(recognize(&inst.graph).unwrap().in_upsilon);
    }
}

#[test]
fn twin_pair_is_local_only() {
    let g = twin_pair_fixture();
    let local = relative_s_partition(&g, &g.closed_neighborhood(0).unwrap()).unwrap();
    assert_eq!(local.classes, vec![vec![0], vec![1, 2], vec![3]]);
    assert!(strongprod::sclass::is_thin(&g));
}

#[test]
fn repeated_runs_agree() {
    let inst = gen_product_instance(&[4, 5], 3).unwrap();
    let a = build_skeleton(&inst.graph).unwrap();
    let b = build_skeleton(&inst.graph).unwrap();
    assert_eq!(a, b);
    assert_eq!(recognize(&inst.graph).unwrap(), recognize(&inst.graph).unwrap());
}

#[test]
fn invalid_inputs_are_rejected() {
    let (k2p3, _) = strongprod::strong_product(&[Graph::complete(2), Graph::path(3)]).unwrap();
    assert!(matches!(recognize(&k2p3), Err(Error::NotThin(..))));
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(recognize(&split), Err(Error::Disconnected));
    assert_eq!(recognize(&Graph::empty(0)), Err(Error::EmptyVertexSet));
}
