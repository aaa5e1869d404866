//! Factorization of thin graphs through the Cartesian skeleton.
//!
//! Removing the dispensable edges of a thin graph leaves a spanning subgraph
//! that is the Cartesian product of the skeletons of the strong prime factors.
//! The Cartesian factorization of that skeleton is computed from the relation
//! generated by Djoković–Winkler and square-free incidences; every strong
//! prime factor is a union of its classes, so the finest grouping of classes
//! that reproduces the input edge for edge is the prime factorization.

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::product::Coordinatization;
use crate::union_find::UnionFind;

/// Edge `xy` is dispensable when some `z` certifies both halves of the skeleton test.
fn dispensable(nb: &[Bitset], x: usize, y: usize) -> bool {
    let (nx, ny) = (&nb[x], &nb[y]);
    let nxy = nx.and(ny);
    (0..nb.len()).any(|z| {
        let nz = &nb[z];
        let first = nxy.is_proper_subset(&nx.and(nz))
            || (nx.is_proper_subset(nz) && nz.is_proper_subset(ny));
        first
            && (nxy.is_proper_subset(&ny.and(nz))
                || (ny.is_proper_subset(nz) && nz.is_proper_subset(nx)))
    })
}

/// The Cartesian skeleton of a thin graph.
pub(crate) fn skeleton(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let nb: Vec<Bitset> = (0..n)
        .map(|v| Bitset::from_iter(n, g.closed_neighborhood_unchecked(v)))
        .collect();
    let kept: Vec<Edge> = g.edges().filter(|&(x, y)| !dispensable(&nb, x, y)).collect();
    Graph::from_edges(n, kept).expect("subgraph of a simple graph")
}

/// Classes of the Cartesian product relation on the edges of a connected graph.
fn product_relation(s: &Graph) -> (Vec<Edge>, Vec<usize>) {
    let edges: Vec<Edge> = s.edges().collect();
    let index = |u: usize, v: usize| -> usize {
        let e = crate::graph::edge(u, v);
        edges.binary_search(&e).expect("edge of the skeleton")
    };
    let dist = s.distance_matrix();
    let mut uf = UnionFind::new(edges.len());
    for (i, &(x, y)) in edges.iter().enumerate() {
        for (j, &(u, v)) in edges.iter().enumerate().skip(i + 1) {
            if dist[x][u] + dist[y][v] != dist[x][v] + dist[y][u] {
                uf.union(i, j);
            }
        }
    }
    for x in 0..s.vertex_count() {
        let nx = s.neighbors(x);
        for (a, &y) in nx.iter().enumerate() {
            for &z in &nx[a + 1..] {
                let common = crate::sclass::intersect(s.neighbors(y), s.neighbors(z));
                if common == [x] && !s.has_edge(y, z) {
                    uf.union(index(x, y), index(x, z));
                }
            }
        }
    }
    let mut label = vec![usize::MAX; edges.len()];
    let mut next = 0;
    let mut class = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        let r = uf.find(i);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        class.push(label[r]);
    }
    (edges, class)
}

/// Restricted growth strings of all set partitions of `0..r`, most blocks first.
pub(crate) fn set_partitions(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; r];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if r == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut cur, &mut out);
    let blocks = |p: &Vec<usize>| p.iter().max().map_or(0, |m| m + 1);
    out.sort_by(|a, b| blocks(b).cmp(&blocks(a)).then_with(|| a.cmp(b)));
    out
}

/// Strong prime factors of a thin connected graph with a coordinatization.
pub(crate) fn factor_thin(g: &Graph) -> Result<(Vec<Graph>, Coordinatization)> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok((Vec::new(), Coordinatization::new(vec![], vec![vec![]])?));
    }
    let s = skeleton(g);
    if !s.is_connected() {
        return Err(Error::Internal("Cartesian skeleton is disconnected".into()));
    }
    let (edges, class) = product_relation(&s);
    let r = class.iter().max().map_or(0, |m| m + 1);
    if r == 1 {
        return Ok((vec![g.clone()], Coordinatization::single(n)));
    }
    // Coordinate `c` of a vertex: its component in the skeleton without class-`c` edges.
    let mut sizes = Vec::with_capacity(r);
    let mut cart = vec![Vec::with_capacity(r); n];
    for c in 0..r {
        let rest = Graph::from_edges(
            n,
            edges
                .iter()
                .zip(&class)
                .filter(|(_, &k)| k != c)
                .map(|(&e, _)| e),
        )?;
        let comps = rest.components();
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                cart[v].push(i);
            }
        }
        sizes.push(comps.len());
    }
    Coordinatization::new(sizes.clone(), cart.clone())
        .map_err(|e| Error::Internal(format!("skeleton coordinates: {e}")))?;

    for grouping in set_partitions(r) {
        if let Some(found) = try_grouping(g, &sizes, &cart, &grouping) {
            return Ok(found);
        }
    }
    Err(Error::Internal("no grouping of skeleton factors verifies".into()))
}

fn try_grouping(
    g: &Graph,
    sizes: &[usize],
    cart: &[Vec<usize>],
    grouping: &[usize],
) -> Option<(Vec<Graph>, Coordinatization)> {
    let blocks = grouping.iter().max().map_or(0, |m| m + 1);
    let members: Vec<Vec<usize>> = (0..blocks)
        .map(|b| (0..grouping.len()).filter(|&c| grouping[c] == b).collect())
        .collect();
    let block_sizes: Vec<usize> = members
        .iter()
        .map(|m| m.iter().map(|&c| sizes[c]).product())
        .collect();
    let coords: Vec<Vec<usize>> = cart
        .iter()
        .map(|c| {
            members
                .iter()
                .map(|m| m.iter().fold(0, |acc, &k| acc * sizes[k] + c[k]))
                .collect()
        })
        .collect();
    let coord = Coordinatization::new(block_sizes.clone(), coords).ok()?;
    // Each factor is read off the fiber through vertex 0.
    let mut factors = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let fiber = coord.fiber_through(0, b).ok()?;
        let mut edges = Vec::new();
        for (i, &u) in fiber.vertices.iter().enumerate() {
            for &v in &fiber.vertices[i + 1..] {
                if g.has_edge(u, v) {
                    edges.push((coord.coords(u)[b], coord.coords(v)[b]));
                }
            }
        }
        factors.push(Graph::from_edges(block_sizes[b], edges).ok()?);
    }
    coord.reproduces(g, &factors).then_some((factors, coord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::strong_product;

    #[test]
    fn skeleton_of_p3_p3_is_the_grid() {
        let (g, c) = strong_product(&[Graph::path(3), Graph::path(3)]).unwrap();
        let s = skeleton(&g);
        assert_eq!(s.edge_count(), 12);
        assert!(s.edges().all(|(u, v)| c.differing_coordinate(u, v).is_some()));
    }

    #[test]
    fn partitions_most_blocks_first() {
        let p = set_partitions(3);
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[4], vec![0, 0, 0]);
        assert_eq!(set_partitions(5).len(), 52);
    }

    #[test]
    fn factors_thin_products() {
        let (g, _) = strong_product(&[Graph::path(3), Graph::cycle(5)]).unwrap();
        let (fs, c) = factor_thin(&g).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(c.reproduces(&g, &fs));
        let (fs, _) = factor_thin(&Graph::cycle(7)).unwrap();
        assert_eq!(fs, vec![Graph::cycle(7)]);
    }
}
