//! Strong and Cartesian products with explicit coordinatizations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Per-vertex coordinate tuples for a product view of a graph.
///
/// `coords[v][i]` is the vertex of factor `i` that `v` projects to. The map is
/// a bijection onto the grid `Π {0..factor_sizes[i]}`; `by_rank` inverts it
/// through the row-major rank of a tuple (first factor most significant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coordinatization {
    factor_sizes: Vec<usize>,
    coords: Vec<Vec<usize>>,
    #[serde(skip)]
    by_rank: Vec<usize>,
}

/// The vertex set of a `G_i`-fiber through `anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub factor_index: usize,
    pub anchor: usize,
    pub vertices: VertexSet,
}

impl Coordinatization {
    /// Validates that `coords` is a bijection onto the grid spanned by `factor_sizes`.
    pub fn new(factor_sizes: Vec<usize>, coords: Vec<Vec<usize>>) -> Result<Self> {
        let total: usize = factor_sizes.iter().product();
        if coords.len() != total {
            return Err(Error::InvalidCoordinatization(format!(
                "{} vertices for a grid of size {total}",
                coords.len()
            )));
        }
        let mut by_rank = vec![usize::MAX; total];
        for (v, c) in coords.iter().enumerate() {
            if c.len() != factor_sizes.len() {
                return Err(Error::InvalidCoordinatization(format!(
                    "vertex {v} has {} coordinates, expected {}",
                    c.len(),
                    factor_sizes.len()
                )));
            }
            if let Some(i) = (0..c.len()).find(|&i| c[i] >= factor_sizes[i]) {
                return Err(Error::InvalidCoordinatization(format!(
                    "vertex {v} coordinate {i} out of range"
                )));
            }
            let r = rank(&factor_sizes, c);
            if by_rank[r] != usize::MAX {
                return Err(Error::InvalidCoordinatization(format!(
                    "vertices {} and {v} share coordinates",
                    by_rank[r]
                )));
            }
            by_rank[r] = v;
        }
        Ok(Coordinatization {
            factor_sizes,
            coords,
            by_rank,
        })
    }

    /// The trivial view of an `n`-vertex graph as a one-factor product.
    pub fn single(n: usize) -> Self {
        Coordinatization {
            factor_sizes: vec![n],
            coords: (0..n).map(|v| vec![v]).collect(),
            by_rank: (0..n).collect(),
        }
    }

    pub fn factor_count(&self) -> usize {
        self.factor_sizes.len()
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.factor_sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self, v: usize) -> &[usize] {
        &self.coords[v]
    }

    pub fn all_coords(&self) -> &[Vec<usize>] {
        &self.coords
    }

    /// `p_i(v)`.
    pub fn projection(&self, v: usize, i: usize) -> Result<usize> {
        self.check(v, i)?;
        Ok(self.coords[v][i])
    }

    /// The vertex with coordinate tuple `c`.
    pub fn vertex_at(&self, c: &[usize]) -> Option<usize> {
        if c.len() != self.factor_sizes.len() || c.iter().zip(&self.factor_sizes).any(|(a, n)| a >= n)
        {
            return None;
        }
        Some(self.by_rank[rank(&self.factor_sizes, c)])
    }

    pub fn fiber_through(&self, x: usize, i: usize) -> Result<Fiber> {
        self.check(x, i)?;
        let mut c = self.coords[x].clone();
        let mut vertices: VertexSet = (0..self.factor_sizes[i])
            .map(|a| {
                c[i] = a;
                self.vertex_at(&c).expect("grid is complete")
            })
            .collect();
        vertices.sort_unstable();
        Ok(Fiber {
            factor_index: i,
            anchor: x,
            vertices,
        })
    }

    /// The unique differing coordinate of an edge, or `None` for non-Cartesian edges.
    pub fn is_cartesian_edge(&self, g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
        if !g.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        Ok(self.differing_coordinate(u, v))
    }

    /// Like [`Self::is_cartesian_edge`] without checking adjacency.
    pub fn differing_coordinate(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (&self.coords[u], &self.coords[v]);
        let mut diff = (0..a.len()).filter(|&i| a[i] != b[i]);
        match (diff.next(), diff.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    /// Whether the strong product of `factors` laid out by this map is exactly `g`.
    pub fn reproduces(&self, g: &Graph, factors: &[Graph]) -> bool {
        if factors.len() != self.factor_sizes.len()
            || factors
                .iter()
                .zip(&self.factor_sizes)
                .any(|(f, &n)| f.vertex_count() != n)
            || g.vertex_count() != self.coords.len()
        {
            return false;
        }
        let expected: usize = strong_edge_count(factors);
        if expected != g.edge_count() {
            return false;
        }
        g.edges().all(|(u, v)| {
            let (a, b) = (&self.coords[u], &self.coords[v]);
            (0..a.len()).all(|i| a[i] == b[i] || factors[i].has_edge(a[i], b[i]))
        })
    }

    /// Reorders factors: new factor `k` is old factor `order[k]`.
    pub fn permute_factors(&self, order: &[usize]) -> Self {
        let sizes = order.iter().map(|&i| self.factor_sizes[i]).collect();
        let coords = self
            .coords
            .iter()
            .map(|c| order.iter().map(|&i| c[i]).collect())
            .collect();
        Coordinatization::new(sizes, coords).expect("permutation keeps the grid")
    }

    /// Renames vertices of factor `i` by `relabel[old] = new`.
    pub fn relabel_factor(&mut self, i: usize, relabel: &[usize]) {
        for c in &mut self.coords {
            c[i] = relabel[c[i]];
        }
        self.rebuild();
    }

    fn rebuild(&mut self) {
        for (v, c) in self.coords.iter().enumerate() {
            self.by_rank[rank(&self.factor_sizes, c)] = v;
        }
    }

    fn check(&self, v: usize, i: usize) -> Result<()> {
        if v >= self.coords.len() {
            return Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.coords.len(),
            });
        }
        if i >= self.factor_sizes.len() {
            return Err(Error::FactorIndex {
                index: i,
                count: self.factor_sizes.len(),
            });
        }
        Ok(())
    }
}

fn rank(sizes: &[usize], c: &[usize]) -> usize {
    c.iter().zip(sizes).fold(0, |acc, (&x, &n)| acc * n + x)
}

/// All tuples of the grid in row-major order.
pub(crate) fn grid(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().product();
    (0..total)
        .map(|mut r| {
            let mut c = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                c[i] = r % sizes[i];
                r /= sizes[i];
            }
            c
        })
        .collect()
}

/// Edge count of the strong product: `2|E| = Π(n_i + 2 e_i) − Π n_i`.
pub fn strong_edge_count(factors: &[Graph]) -> usize {
    let full: usize = factors
        .iter()
        .map(|f| f.vertex_count() + 2 * f.edge_count())
        .product();
    let n: usize = factors.iter().map(Graph::vertex_count).product();
    (full - n) / 2
}

fn product_with<F>(factors: &[Graph], adjacent: F) -> Result<(Graph, Coordinatization)>
where
    F: Fn(&[usize], &[usize]) -> bool,
{
    if factors.is_empty() {
        return Err(Error::NoFactors);
    }
    if factors.iter().any(|f| f.vertex_count() == 0) {
        return Err(Error::EmptyVertexSet);
    }
    let sizes: Vec<usize> = factors.iter().map(Graph::vertex_count).collect();
    let coords = grid(&sizes);
    let coord = Coordinatization::new(sizes, coords.clone())?;
    let mut adj = vec![Vec::new(); coords.len()];
    for (u, cu) in coords.iter().enumerate() {
        // Neighbors are tuples where each coordinate stays or moves to a factor neighbor.
        let mut options: Vec<Vec<usize>> = Vec::with_capacity(cu.len());
        for (i, &a) in cu.iter().enumerate() {
            options.push(factors[i].closed_neighborhood_unchecked(a));
        }
        let mut c = vec![0; cu.len()];
        let mut idx = vec![0; cu.len()];
        'outer: loop {
            for i in 0..cu.len() {
                c[i] = options[i][idx[i]];
            }
            if c != *cu && adjacent(cu, &c) {
                adj[u].push(coord.vertex_at(&c).unwrap());
            }
            let mut k = cu.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        adj[u].sort_unstable();
    }
    Ok((Graph::from_sorted_adjacency(adj), coord))
}

/// `G_1 ⊠ … ⊠ G_n` with the row-major coordinatization.
pub fn strong_product(factors: &[Graph]) -> Result<(Graph, Coordinatization)> {
    product_with(factors, |_, _| true)
}

/// `G_1 □ … □ G_n` with the row-major coordinatization.
pub fn cartesian_product(factors: &[Graph]) -> Result<(Graph, Coordinatization)> {
    product_with(factors, |a, b| a.iter().zip(b).filter(|(x, y)| x != y).count() == 1)
}
