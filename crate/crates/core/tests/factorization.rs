use strongprod::factor::{factor_exact, DEFAULT_SIZE_CAP};
use strongprod::oracle::{gen_connected_graph, gen_product_instance, oracle_pfd, relabel_random, ProductInstance};
use strongprod::Graph;

fn sorted_forms(f: &strongprod::factor::LocalFactorization) -> Vec<strongprod::iso::CanonicalForm> {
    let mut v = f.canonical_factors();
    v.sort();
    v
}

fn agree(g: &Graph) {
    let fast = factor_exact(g, DEFAULT_SIZE_CAP).unwrap();
    let slow = oracle_pfd(g).unwrap();
    assert!(fast.coords.reproduces(g, &fast.factors));
    assert_eq!(sorted_forms(&fast), sorted_forms(&slow), "graph {g:?}");
}

#[test]
fn random_connected_graphs_match_the_oracle() {
    for seed in 0..300u64 {
        let n = 2 + (seed % 9) as usize;
        let p = [0.3, 0.5, 0.7, 0.9][(seed / 9 % 4) as usize];
        agree(&gen_connected_graph(n, p, seed).unwrap());
    }
}

#[test]
fn random_products_match_the_oracle() {
    let small = [Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::cycle(4)];
    for seed in 0..200u64 {
        let a = &small[(seed % 4) as usize];
        let b = gen_connected_graph(2 + (seed % 3) as usize, 0.6, seed).unwrap();
        let inst = ProductInstance::from_factors(vec![a.clone(), b], seed).unwrap();
        if inst.graph.vertex_count() <= 16 {
            agree(&relabel_random(&inst.graph, seed).0);
        }
    }
    for seed in 0..30u64 {
        let inst = gen_product_instance(&[3 + (seed % 2) as usize, 4], seed).unwrap();
        agree(&inst.graph);
    }
}
