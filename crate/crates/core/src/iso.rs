//! Canonical forms and isomorphism tests for small graphs.

use canonical_form::Canonize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by the isomorphism routines.
pub const ISO_SIZE_CAP: usize = 64;

/// Byte encoding of a canonically relabeled graph; equal iff isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u8>);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Labeled(Vec<Vec<usize>>);

impl Canonize for Labeled {
    fn size(&self) -> usize {
        self.0.len()
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        let mut adj = vec![Vec::new(); self.0.len()];
        for (u, list) in self.0.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&w| p[w]).collect();
            mapped.sort_unstable();
            adj[p[u]] = mapped;
        }
        Labeled(adj)
    }

    fn invariant_color(&self, u: usize) -> u64 {
        self.0[u].len() as u64
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        self.0[u].iter().map(|&v| (v, 0))
    }
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.vertex_count() > ISO_SIZE_CAP {
        Err(Error::SizeCap {
            size: g.vertex_count(),
            cap: ISO_SIZE_CAP,
        })
    } else {
        Ok(())
    }
}

fn encode(adj: &[Vec<usize>]) -> CanonicalForm {
    let n = adj.len();
    let mut bytes = Vec::with_capacity(1 + (n * n).div_ceil(8));
    bytes.push(n as u8);
    let mut acc = 0u8;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if adj[u].binary_search(&v).is_ok() {
                acc |= 1 << bit;
            }
            bit += 1;
            if bit == 8 {
                bytes.push(acc);
                acc = 0;
                bit = 0;
            }
        }
    }
    if bit > 0 {
        bytes.push(acc);
    }
    CanonicalForm(bytes)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    check_cap(g)?;
    let labeled = Labeled((0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect());
    Ok(encode(&labeled.canonical().0))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    check_cap(g)?;
    check_cap(h)?;
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.vertex_count()).map(|v| g.neighbors(v).len()).collect();
    let mut dh: Vec<usize> = (0..h.vertex_count()).map(|v| h.neighbors(v).len()).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// A bijection `phi` with `uv ∈ E(g) ⇔ phi[u]phi[v] ∈ E(h)`, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    if !is_isomorphic(g, h)? {
        return Ok(None);
    }
    let lg = Labeled((0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect());
    let lh = Labeled((0..h.vertex_count()).map(|v| h.neighbors(v).to_vec()).collect());
    let pg = lg.morphism_to_canonical();
    let ph = lh.morphism_to_canonical();
    let mut inv_h = vec![0; ph.len()];
    for (v, &c) in ph.iter().enumerate() {
        inv_h[c] = v;
    }
    Ok(Some(pg.iter().map(|&c| inv_h[c]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::strong_product;

    #[test]
    fn relabeled_graphs_match() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        let h = g.relabel(&perm);
        assert!(is_isomorphic(&g, &h).unwrap());
        let phi = isomorphism(&g, &h).unwrap().unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(phi[u], phi[v]));
        }
    }

    #[test]
    fn distinguishes() {
        assert!(!is_isomorphic(&Graph::cycle(6), &Graph::path(6)).unwrap());
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&Graph::cycle(6), &two_triangles).unwrap());
        assert_eq!(isomorphism(&Graph::cycle(6), &Graph::path(6)).unwrap(), None);
    }

    #[test]
    fn commutativity() {
        let (a, _) = strong_product(&[Graph::complete(2), Graph::path(3)]).unwrap();
        let (b, _) = strong_product(&[Graph::path(3), Graph::complete(2)]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn size_cap() {
        let big = Graph::path(ISO_SIZE_CAP + 1);
        assert!(matches!(canonical_form(&big), Err(Error::SizeCap { .. })));
    }
}
