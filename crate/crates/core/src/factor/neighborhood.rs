//! Local factorization of neighborhoods and lifting of Cartesian edges.

use std::collections::BTreeMap;

use super::{decompose, LocalFactorization, DEFAULT_SIZE_CAP};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexSet};
use crate::sclass::{relative_s_partition, require_thin};

/// Factorization of a ball `⟨N_r[center]⟩` and the edges of the host graph it
/// certifies as Cartesian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodFactorization {
    pub center: usize,
    pub radius: usize,
    /// Host vertices of the ball; local vertex `i` is `vertices[i]`.
    pub vertices: VertexSet,
    pub local: LocalFactorization,
    /// Prime count of the thin quotient of the ball.
    pub quotient_prime_count: usize,
    /// Certified Cartesian edges in host ids with their local factor index, sorted.
    pub lifted: Vec<(usize, usize, usize)>,
}

impl NeighborhoodFactorization {
    pub fn prime_count(&self) -> usize {
        self.local.prime_count
    }

    /// Local factor index of a lifted edge.
    pub fn label_of(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = edge(u, v);
        self.lifted
            .binary_search_by(|&(x, y, _)| (x, y).cmp(&(a, b)))
            .ok()
            .map(|i| self.lifted[i].2)
    }

    pub fn lifted_edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.lifted.iter().map(|&(u, v, l)| ((u, v), l))
    }
}

/// Factors `⟨N[v]⟩` of a thin graph and lifts its certified Cartesian edges.
pub fn factor_neighborhood(g: &Graph, v: usize) -> Result<NeighborhoodFactorization> {
    g.check_vertex(v)?;
    require_thin(g)?;
    factor_ball(g, v, 1, DEFAULT_SIZE_CAP)
}

/// Factors `⟨N_radius[center]⟩` and lifts its certified Cartesian edges.
///
/// Every edge from a vertex `x` whose relative class in the ball is `{x}` to a
/// neighbor `y` differing from `x` in exactly one local factor is lifted,
/// together with the twins of `y` in the ball and the edges among them. The
/// label is the index of the factor in which the endpoints differ.
pub fn factor_ball(
    g: &Graph,
    center: usize,
    radius: usize,
    size_cap: usize,
) -> Result<NeighborhoodFactorization> {
    let vertices = g.n_neighborhood(center, radius)?;
    if vertices.len() > size_cap {
        return Err(Error::SizeCap {
            size: vertices.len(),
            cap: size_cap,
        });
    }
    let sub = g.induced_subgraph(&vertices)?;
    let h = &sub.graph;
    let (local, quotient_prime_count) = decompose(h, size_cap)?;
    let all: VertexSet = (0..h.vertex_count()).collect();
    let part = relative_s_partition(h, &all)?;
    let mut lifted: BTreeMap<Edge, usize> = BTreeMap::new();
    for class in part.classes.iter().filter(|c| c.len() == 1) {
        let x = class[0];
        for &y in h.neighbors(x) {
            let Some(label) = local.coords.differing_coordinate(x, y) else {
                continue;
            };
            let twins = part.class_containing(y).expect("partition covers the ball");
            for (i, &a) in twins.iter().enumerate() {
                lifted.insert(edge(sub.host(x), sub.host(a)), label);
                for &b in &twins[i + 1..] {
                    lifted.insert(edge(sub.host(a), sub.host(b)), label);
                }
            }
        }
    }
    Ok(NeighborhoodFactorization {
        center,
        radius,
        vertices: sub.vertices,
        local,
        quotient_prime_count,
        lifted: lifted.into_iter().map(|((u, v), l)| (u, v, l)).collect(),
    })
}
