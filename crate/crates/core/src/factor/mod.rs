//! Exact prime factor decomposition of small graphs.
//!
//! A connected graph `G` is its thin quotient `Q = G/S` with every vertex `q`
//! blown up into a clique of `w(q)` twins. The thin quotient is factored
//! through its Cartesian skeleton; the weights then decide which quotient
//! factors stay glued together (the finest grouping under which `w` splits
//! into a product of per-group weights) and the common divisor of all
//! weights contributes complete factors `K_p`, one per prime `p`.

mod neighborhood;
mod thin;

pub use neighborhood::{factor_ball, factor_neighborhood, NeighborhoodFactorization};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::canonical_form;
use crate::product::{grid, Coordinatization};
use crate::sclass::quotient;

/// Default vertex limit for [`factor_exact`].
pub const DEFAULT_SIZE_CAP: usize = 64;

/// Prime factors of a graph together with a coordinatization of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorization {
    /// Nontrivial prime factors; `K1` has none.
    pub factors: Vec<Graph>,
    pub coords: Coordinatization,
    pub prime_count: usize,
}

impl LocalFactorization {
    /// Canonical forms of the factors, in factor order.
    pub fn canonical_factors(&self) -> Vec<crate::iso::CanonicalForm> {
        self.factors
            .iter()
            .map(|f| canonical_form(f).expect("factors are below the isomorphism cap"))
            .collect()
    }
}

/// The prime factor decomposition of a connected graph with at most `size_cap` vertices.
///
/// Factors are ordered by vertex count, ties broken by canonical form.
pub fn factor_exact(g: &Graph, size_cap: usize) -> Result<LocalFactorization> {
    Ok(decompose(g, size_cap)?.0)
}

/// Like [`factor_exact`], also returning the prime count of the thin quotient.
pub(crate) fn decompose(g: &Graph, size_cap: usize) -> Result<(LocalFactorization, usize)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if n > size_cap {
        return Err(Error::SizeCap { size: n, cap: size_cap });
    }
    g.require_connected()?;

    let q = quotient(g);
    let weights: Vec<u64> = q.class_members.iter().map(|c| c.len() as u64).collect();
    let (qfactors, qcoords) = thin::factor_thin(&q.quotient)?;
    let quotient_primes = qfactors.len();

    let split = separate_weights(&qfactors, &qcoords, &weights)
        .ok_or_else(|| Error::Internal("weights do not split over the trivial grouping".into()))?;

    let mut factors: Vec<Graph> = Vec::new();
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    for block in &split.blocks {
        let (h, off) = blow_up(&block.graph, &block.weights);
        factors.push(h);
        offsets.push(off);
    }
    let primes = prime_factors(split.constant);
    factors.extend(primes.iter().map(|&p| Graph::complete(p as usize)));

    let mut coords = vec![Vec::new(); n];
    for (qv, members) in q.class_members.iter().enumerate() {
        let qc = qcoords.coords(qv);
        let block_coords: Vec<usize> = split
            .blocks
            .iter()
            .map(|b| b.members.iter().fold(0, |acc, &k| acc * qfactors[k].vertex_count() + qc[k]))
            .collect();
        // Digit sizes for the rank of a member within its twin class.
        let mut digits: Vec<usize> = split
            .blocks
            .iter()
            .zip(&block_coords)
            .map(|(b, &t)| b.weights[t] as usize)
            .collect();
        digits.extend(primes.iter().map(|&p| p as usize));
        for (r, &v) in members.iter().enumerate() {
            let mut rest = r;
            let mut local = vec![0; digits.len()];
            for i in (0..digits.len()).rev() {
                local[i] = rest % digits[i];
                rest /= digits[i];
            }
            let mut c: Vec<usize> = block_coords
                .iter()
                .enumerate()
                .map(|(b, &t)| offsets[b][t] + local[b])
                .collect();
            c.extend_from_slice(&local[split.blocks.len()..]);
            coords[v] = c;
        }
    }
    let sizes = factors.iter().map(Graph::vertex_count).collect();
    let coords = Coordinatization::new(sizes, coords)
        .map_err(|e| Error::Internal(format!("blow-up coordinates: {e}")))?;

    let forms: Vec<_> = factors.iter().map(canonical_form).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| {
        (factors[a].vertex_count(), &forms[a]).cmp(&(factors[b].vertex_count(), &forms[b]))
    });
    let factors: Vec<Graph> = order.iter().map(|&i| factors[i].clone()).collect();
    let coords = coords.permute_factors(&order);
    if !coords.reproduces(g, &factors) {
        return Err(Error::Internal("factorization does not reproduce the input".into()));
    }
    let prime_count = factors.len();
    Ok((
        LocalFactorization {
            factors,
            coords,
            prime_count,
        },
        quotient_primes,
    ))
}

struct WeightedBlock {
    members: Vec<usize>,
    graph: Graph,
    /// Primitive weight per vertex of `graph`.
    weights: Vec<u64>,
}

struct WeightSplit {
    blocks: Vec<WeightedBlock>,
    constant: u64,
}

/// Finest grouping of the quotient factors under which `w = K · Π f_b` with
/// every `f_b` primitive.
fn separate_weights(
    qfactors: &[Graph],
    qcoords: &Coordinatization,
    weights: &[u64],
) -> Option<WeightSplit> {
    let k = qfactors.len();
    if k == 0 {
        return Some(WeightSplit {
            blocks: Vec::new(),
            constant: weights[0],
        });
    }
    let sizes: Vec<usize> = qfactors.iter().map(Graph::vertex_count).collect();
    let base = qcoords.coords(0).to_vec();
    'grouping: for grouping in thin::set_partitions(k) {
        let nblocks = grouping.iter().max().unwrap() + 1;
        let members: Vec<Vec<usize>> = (0..nblocks)
            .map(|b| (0..k).filter(|&c| grouping[c] == b).collect())
            .collect();
        let mut prims: Vec<Vec<u64>> = Vec::with_capacity(nblocks);
        for m in &members {
            let bsizes: Vec<usize> = m.iter().map(|&c| sizes[c]).collect();
            let mut f: Vec<u64> = grid(&bsizes)
                .iter()
                .map(|t| {
                    let mut c = base.clone();
                    for (&k, &x) in m.iter().zip(t) {
                        c[k] = x;
                    }
                    weights[qcoords.vertex_at(&c).unwrap()]
                })
                .collect();
            let g = f.iter().copied().fold(0, gcd);
            f.iter_mut().for_each(|x| *x /= g);
            prims.push(f);
        }
        let rank_in = |m: &[usize], c: &[usize]| m.iter().fold(0, |acc, &k| acc * sizes[k] + c[k]);
        let at = |c: &[usize]| -> u64 {
            members
                .iter()
                .zip(&prims)
                .map(|(m, f)| f[rank_in(m, c)])
                .product()
        };
        let base_prod = at(&base);
        let w0 = weights[qcoords.vertex_at(&base).unwrap()];
        if !w0.is_multiple_of(base_prod) {
            continue;
        }
        let constant = w0 / base_prod;
        for (qv, &w) in weights.iter().enumerate() {
            if w != constant * at(qcoords.coords(qv)) {
                continue 'grouping;
            }
        }
        let blocks = members
            .into_iter()
            .zip(prims)
            .map(|(m, weights)| {
                let parts: Vec<Graph> = m.iter().map(|&c| qfactors[c].clone()).collect();
                let graph = crate::product::strong_product(&parts)
                    .expect("nonempty factor list")
                    .0;
                WeightedBlock {
                    members: m,
                    graph,
                    weights,
                }
            })
            .collect();
        return Some(WeightSplit { blocks, constant });
    }
    None
}

/// `Q[w]`: vertex `t` replaced by a clique of `w[t]` twins. Returns the graph
/// and the first vertex of each clique.
fn blow_up(q: &Graph, w: &[u64]) -> (Graph, Vec<usize>) {
    let mut offsets = Vec::with_capacity(w.len());
    let mut total = 0;
    for &x in w {
        offsets.push(total);
        total += x as usize;
    }
    let mut edges = Vec::new();
    for t in 0..q.vertex_count() {
        let range = offsets[t]..offsets[t] + w[t] as usize;
        for a in range.clone() {
            for b in a + 1..range.end {
                edges.push((a, b));
            }
        }
        for &s in q.neighbors(t).iter().filter(|&&s| s > t) {
            for a in range.clone() {
                for b in offsets[s]..offsets[s] + w[s] as usize {
                    edges.push((a, b));
                }
            }
        }
    }
    (Graph::from_edges(total, edges).expect("blow-up is simple"), offsets)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factors with multiplicity, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::product::strong_product;

    fn check(g: &Graph, expected: &[Graph]) {
        let f = factor_exact(g, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.prime_count, expected.len());
        assert!(f.coords.reproduces(g, &f.factors));
        let mut want: Vec<_> = expected.iter().map(|e| canonical_form(e).unwrap()).collect();
        let mut got = f.canonical_factors();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn complete_graphs_split_by_prime_divisors() {
        check(&Graph::complete(4), &[Graph::complete(2), Graph::complete(2)]);
        check(&Graph::complete(6), &[Graph::complete(2), Graph::complete(3)]);
        check(&Graph::complete(7), &[Graph::complete(7)]);
        check(&Graph::empty(1), &[]);
    }

    #[test]
    fn primes_and_products() {
        check(&Graph::cycle(5), &[Graph::cycle(5)]);
        let p3 = Graph::path(3);
        let (g, _) = strong_product(&[p3.clone(), p3.clone()]).unwrap();
        check(&g, &[p3.clone(), p3.clone()]);
        let (g, _) = strong_product(&[Graph::complete(2), p3.clone(), Graph::cycle(4)]).unwrap();
        check(&g, &[Graph::complete(2), p3.clone(), Graph::cycle(4)]);
    }

    #[test]
    fn non_separable_blow_up_stays_prime() {
        // P3 with only one end doubled.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let f = factor_exact(&g, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.prime_count, 1);
        assert!(is_isomorphic(&f.factors[0], &g).unwrap());
    }

    #[test]
    fn order_is_normalized() {
        let (g, _) = strong_product(&[Graph::cycle(5), Graph::complete(2)]).unwrap();
        let f = factor_exact(&g, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.factors[0].vertex_count(), 2);
        assert_eq!(f.factors[1].vertex_count(), 5);
    }

    #[test]
    fn rejects_oversized_and_disconnected() {
        assert!(matches!(
            factor_exact(&Graph::path(10), 8),
            Err(Error::SizeCap { size: 10, cap: 8 })
        ));
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(factor_exact(&g, 8), Err(Error::Disconnected));
    }
}
