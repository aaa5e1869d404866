//! Brute-force factorization, seeded instance generators and fixtures.
//!
//! The exhaustive factorizer only relies on the graph primitives and the
//! isomorphism layer, so it can be used to cross-check the main pipeline.
//! Random generators use `ChaCha8Rng::seed_from_u64`.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::{factor_neighborhood, LocalFactorization};
use crate::graph::Graph;
use crate::iso::canonical_form;
use crate::product::{strong_product, Coordinatization};
use crate::sclass::{backbone, is_thin};

/// Hard vertex limit of [`oracle_pfd`].
pub const ORACLE_CAP: usize = 16;

/// Rejection budget of [`gen_thin_graph`].
pub const GENERATION_ATTEMPTS: usize = 10_000;

/// Prime factor decomposition by exhaustive search for fiber pairs.
pub fn oracle_pfd(g: &Graph) -> Result<LocalFactorization> {
    let n = g.vertex_count();
    if n > ORACLE_CAP {
        return Err(Error::SizeCap {
            size: n,
            cap: ORACLE_CAP,
        });
    }
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    g.require_connected()?;
    let (factors, coords) = pfd(g);
    let forms: Vec<_> = factors
        .iter()
        .map(|f| canonical_form(f).expect("below cap"))
        .collect();
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| {
        (factors[a].vertex_count(), &forms[a]).cmp(&(factors[b].vertex_count(), &forms[b]))
    });
    let sizes = order.iter().map(|&i| factors[i].vertex_count()).collect();
    let coords = coords
        .iter()
        .map(|c| order.iter().map(|&i| c[i]).collect())
        .collect();
    let factors: Vec<Graph> = order.into_iter().map(|i| factors[i].clone()).collect();
    Ok(LocalFactorization {
        prime_count: factors.len(),
        coords: Coordinatization::new(sizes, coords)?,
        factors,
    })
}

fn pfd(g: &Graph) -> (Vec<Graph>, Vec<Vec<usize>>) {
    let n = g.vertex_count();
    if n == 1 {
        return (Vec::new(), vec![Vec::new()]);
    }
    let Some(split) = find_split(g) else {
        return (vec![g.clone()], (0..n).map(|v| vec![v]).collect());
    };
    let (fa, ca) = pfd(&split.a);
    let (fb, cb) = pfd(&split.b);
    let mut coords = vec![Vec::new(); n];
    for (alpha, row) in split.phi.iter().enumerate() {
        for (beta, &v) in row.iter().enumerate() {
            coords[v] = ca[alpha].iter().chain(&cb[beta]).copied().collect();
        }
    }
    (fa.into_iter().chain(fb).collect(), coords)
}

struct Split {
    a: Graph,
    b: Graph,
    /// `phi[alpha][beta]` is the vertex with coordinates `(alpha, beta)`.
    phi: Vec<Vec<usize>>,
}

fn subsets_through(w: usize, n: usize, size: usize, exclude: &[bool]) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (0..n).filter(|&v| v != w && !exclude[v]).collect();
    let mut out = Vec::new();
    let mut cur = vec![w];
    fn rec(pool: &[usize], start: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            cur.push(pool[i]);
            rec(pool, i + 1, need - 1, cur, out);
            cur.pop();
        }
    }
    rec(&pool, 0, size - 1, &mut cur, &mut out);
    out
}

fn find_split(g: &Graph) -> Option<Split> {
    let n = g.vertex_count();
    let w = 0;
    let m = g.edge_count();
    for a in 2..n {
        if !n.is_multiple_of(a) || a > n / a {
            continue;
        }
        let b = n / a;
        let none = vec![false; n];
        for fa in subsets_through(w, n, a, &none) {
            let ga = g.induced_subgraph(&fa).expect("nonempty");
            if !ga.graph.is_connected() {
                continue;
            }
            let mut used = vec![false; n];
            fa.iter().for_each(|&v| used[v] = true);
            let ea = ga.graph.edge_count();
            let da = ga.graph.neighbors(ga.local(w).unwrap()).len();
            for fb in subsets_through(w, n, b, &used) {
                let gb = g.induced_subgraph(&fb).expect("nonempty");
                let eb = gb.graph.edge_count();
                if a * eb + b * ea + 2 * ea * eb != m || !gb.graph.is_connected() {
                    continue;
                }
                let db = gb.graph.neighbors(gb.local(w).unwrap()).len();
                if g.neighbors(w).len() + 1 != (da + 1) * (db + 1) {
                    continue;
                }
                if let Some(phi) = extend_bijection(g, &ga.graph, &fa, &gb.graph, &fb) {
                    return Some(Split {
                        a: ga.graph,
                        b: gb.graph,
                        phi,
                    });
                }
            }
        }
    }
    None
}

/// Backtracking search for `phi` with `phi(alpha, w) = alpha` and
/// `phi(w, beta) = beta` that turns `A ⊠ B` into `g`.
fn extend_bijection(g: &Graph, ga: &Graph, fa: &[usize], gb: &Graph, fb: &[usize]) -> Option<Vec<Vec<usize>>> {
    let (a, b) = (fa.len(), fb.len());
    let w = *fa.iter().find(|v| fb.contains(v)).unwrap();
    let wa = fa.iter().position(|&v| v == w).unwrap();
    let wb = fb.iter().position(|&v| v == w).unwrap();
    let mut phi = vec![vec![usize::MAX; b]; a];
    let mut used = vec![false; g.vertex_count()];
    for (alpha, &v) in fa.iter().enumerate() {
        phi[alpha][wb] = v;
        used[v] = true;
    }
    for (beta, &v) in fb.iter().enumerate() {
        phi[wa][beta] = v;
        used[v] = true;
    }
    let cells: Vec<(usize, usize)> = (0..a)
        .flat_map(|x| (0..b).map(move |y| (x, y)))
        .filter(|&(x, y)| x != wa && y != wb)
        .collect();
    let adj_a = |x: usize, y: usize| x == y || ga.has_edge(x, y);
    let adj_b = |x: usize, y: usize| x == y || gb.has_edge(x, y);
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        phi: &mut Vec<Vec<usize>>,
        used: &mut Vec<bool>,
        g: &Graph,
        adj_a: &dyn Fn(usize, usize) -> bool,
        adj_b: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if k == cells.len() {
            return true;
        }
        let (x, y) = cells[k];
        for v in 0..g.vertex_count() {
            if used[v] {
                continue;
            }
            let consistent = phi.iter().enumerate().all(|(x2, row)| {
                row.iter().enumerate().all(|(y2, &u)| {
                    u == usize::MAX || g.has_edge(u, v) == (adj_a(x, x2) && adj_b(y, y2))
                })
            });
            if !consistent {
                continue;
            }
            phi[x][y] = v;
            used[v] = true;
            if rec(k + 1, cells, phi, used, g, adj_a, adj_b) {
                return true;
            }
            phi[x][y] = usize::MAX;
            used[v] = false;
        }
        false
    }
    // Fiber cells must already agree with the product adjacency.
    let fixed: Vec<(usize, usize)> = (0..a)
        .flat_map(|x| (0..b).map(move |y| (x, y)))
        .filter(|&(x, y)| x == wa || y == wb)
        .collect();
    for (i, &(x, y)) in fixed.iter().enumerate() {
        for &(x2, y2) in &fixed[i + 1..] {
            if g.has_edge(phi[x][y], phi[x2][y2]) != (adj_a(x, x2) && adj_b(y, y2)) {
                return None;
            }
        }
    }
    rec(0, &cells, &mut phi, &mut used, g, &adj_a, &adj_b).then_some(phi)
}

/// A connected thin graph from `G(n, edge_prob)` by rejection sampling.
pub fn gen_thin_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    for _ in 0..GENERATION_ATTEMPTS {
        let g = random_graph(n, edge_prob, &mut rng);
        if g.is_connected() && is_thin(&g) {
            return Ok(g);
        }
    }
    Err(Error::GenerationBudget {
        n,
        edge_prob,
        attempts: GENERATION_ATTEMPTS,
    })
}

/// A connected graph from `G(n, edge_prob)`, thin or not.
pub fn gen_connected_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let g = random_graph(n, edge_prob, &mut rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationBudget {
        n,
        edge_prob,
        attempts: GENERATION_ATTEMPTS,
    })
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("random graph is simple")
}

/// A constructed product with its ground truth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductInstance {
    pub graph: Graph,
    pub ground_truth_factors: Vec<Graph>,
    pub ground_truth_coords: Coordinatization,
    pub seed: u64,
    pub thin: bool,
}

impl ProductInstance {
    pub fn from_factors(factors: Vec<Graph>, seed: u64) -> Result<Self> {
        let (graph, coords) = strong_product(&factors)?;
        Ok(ProductInstance {
            thin: is_thin(&graph),
            graph,
            ground_truth_factors: factors,
            ground_truth_coords: coords,
            seed,
        })
    }
}

/// Edge probability used for random factors.
pub const FACTOR_EDGE_PROB: f64 = 0.5;

/// Strong product of random thin connected factors of the given sizes.
pub fn gen_product_instance(factor_sizes: &[usize], seed: u64) -> Result<ProductInstance> {
    if factor_sizes.is_empty() {
        return Err(Error::NoFactors);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = factor_sizes
        .iter()
        .map(|&n| gen_thin_graph(n, FACTOR_EDGE_PROB, rng.next_u64()))
        .collect::<Result<Vec<_>>>()?;
    ProductInstance::from_factors(factors, seed)
}

/// Applies a seeded random vertex permutation; returns the graph and `perm`
/// with old vertex `v` mapped to `perm[v]`.
pub fn relabel_random(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(&mut rng);
    (g.relabel(&perm), perm)
}

/// `P_m ⊠ P_3` closed into a band whose last column is glued to the first one
/// upside down: `(m-1, j) ~ (0, k)` iff `|(2 - j) - k| ≤ 1`. Vertex `(i, j)` is `3i + j`.
pub fn twisted_band(m: usize) -> Graph {
    let (strip, _) = strong_product(&[Graph::path(m), Graph::path(3)]).expect("nonempty");
    let mut edges: Vec<(usize, usize)> = strip.edges().collect();
    for j in 0..3usize {
        for k in 0..3usize {
            if (2 - j).abs_diff(k) <= 1 {
                edges.push((3 * (m - 1) + j, k));
            }
        }
    }
    Graph::from_edges(3 * m, edges).expect("band is simple")
}

fn is_twisted_counterexample(g: &Graph) -> Result<bool> {
    if !is_thin(g) || !g.is_connected() || oracle_pfd(g)?.prime_count != 1 {
        return Ok(false);
    }
    for &v in &backbone(g)?.vertices {
        if factor_neighborhood(g, v)?.prime_count() != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches small twisted bands for a thin prime graph whose backbone
/// neighborhoods all have two prime factors.
pub fn gen_twisted_instance() -> Result<Graph> {
    for m in 4..=5 {
        let g = twisted_band(m);
        if is_twisted_counterexample(&g)? {
            return Ok(g);
        }
    }
    Err(Error::FixtureSearch(
        "no twisted band with 4 or 5 columns is prime with locally refined neighborhoods".into(),
    ))
}

/// The frozen result of [`gen_twisted_instance`].
pub fn twisted_fixture() -> Graph {
    twisted_band(4)
}

/// The bull: a triangle `0-1-2` with pendant vertices `4` at `0` and `3` at `2`.
pub fn bull() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (0, 4), (1, 2), (2, 3)]).expect("bull is simple")
}

/// `P_k ⊠ bull`. The fibers over bull vertex `1` fail the S1-condition in
/// every closed neighborhood but are recovered inside 2-neighborhoods.
pub fn s1_gap_fixture(k: usize) -> ProductInstance {
    ProductInstance::from_factors(vec![Graph::path(k), bull()], k as u64).expect("nonempty")
}

/// A vertex `v = 0` with neighbors `x = 1`, `y = 2`, `z = 3` where `x` and `y`
/// are twins inside `⟨N[v]⟩` only, because `x` also sees `w = 4`.
pub fn twin_pair_fixture() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4)]).expect("simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn oracle_basics() {
        assert_eq!(oracle_pfd(&Graph::cycle(5)).unwrap().factors, vec![Graph::cycle(5)]);
        let k4 = oracle_pfd(&Graph::complete(4)).unwrap();
        assert_eq!(k4.factors, vec![Graph::complete(2), Graph::complete(2)]);
        assert_eq!(oracle_pfd(&Graph::empty(1)).unwrap().prime_count, 0);
        assert!(matches!(oracle_pfd(&Graph::path(17)), Err(Error::SizeCap { .. })));
        let inst = gen_product_instance(&[2, 3], 5).err();
        assert!(matches!(inst, Some(Error::GenerationBudget { n: 2, .. })));
        let inst = gen_product_instance(&[3, 4], 5).unwrap();
        let f = oracle_pfd(&inst.graph).unwrap();
        assert_eq!(f.prime_count, 2);
        assert!(f.coords.reproduces(&inst.graph, &f.factors));
        // 27 vertices exceed the oracle cap: the factors are checked instead.
        let inst = gen_product_instance(&[3, 3, 3], 5).unwrap();
        for f in &inst.ground_truth_factors {
            assert_eq!(oracle_pfd(f).unwrap().prime_count, 1);
        }
        let f = crate::factor::factor_exact(&inst.graph, 64).unwrap();
        assert_eq!(f.prime_count, 3);
    }

    #[test]
    fn thin_generator() {
        for seed in 0..20 {
            assert!(is_isomorphic(&gen_thin_graph(3, 0.5, seed).unwrap(), &Graph::path(3)).unwrap());
        }
        let g = gen_thin_graph(8, 0.4, 11).unwrap();
        assert_eq!(g, gen_thin_graph(8, 0.4, 11).unwrap());
        assert!(is_thin(&g) && g.is_connected());
        assert!(matches!(gen_thin_graph(2, 0.5, 0), Err(Error::GenerationBudget { .. })));
    }

    #[test]
    fn product_instances_reproduce() {
        let inst = gen_product_instance(&[4, 5], 3).unwrap();
        assert_eq!(inst, gen_product_instance(&[4, 5], 3).unwrap());
        assert!(inst.thin);
        assert!(inst
            .ground_truth_coords
            .reproduces(&inst.graph, &inst.ground_truth_factors));
    }

    #[test]
    fn twisted_fixture_is_frozen() {
        assert_eq!(gen_twisted_instance().unwrap(), twisted_fixture());
    }

    #[test]
    fn relabeling_preserves_isomorphism() {
        let g = bull();
        let (h, perm) = relabel_random(&g, 9);
        assert!(is_isomorphic(&g, &h).unwrap());
        assert!(g.edges().all(|(u, v)| h.has_edge(perm[u], perm[v])));
    }
}
