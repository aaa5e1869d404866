//! Simple undirected graphs on dense vertex ids.
//!
//! Every adjacency list is kept sorted and every set-valued result is returned
//! in ascending order, so all algorithms built on top of [`Graph`] are
//! deterministic without extra tie-breaking rules.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Ascending list of vertex ids.
pub type VertexSet = Vec<usize>;

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an edge so that the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite simple undirected graph with vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::NotSimple(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::NotSimple(format!("parallel edge {u}-{}", w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from sorted, symmetric adjacency lists produced internally.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Open neighborhood of `v`, ascending.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.adj.len(),
            })
        }
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed_neighborhood_unchecked(v))
    }

    pub(crate) fn closed_neighborhood_unchecked(&self, v: usize) -> VertexSet {
        let list = &self.adj[v];
        let pos = list.partition_point(|&w| w < v);
        let mut out = Vec::with_capacity(list.len() + 1);
        out.extend_from_slice(&list[..pos]);
        out.push(v);
        out.extend_from_slice(&list[pos..]);
        out
    }

    /// Ball of radius `radius` around `v`: all vertices at distance at most `radius`.
    pub fn n_neighborhood(&self, v: usize, radius: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut out: VertexSet = self
            .bfs_distances_bounded(v, radius)
            .into_iter()
            .enumerate()
            .filter_map(|(w, d)| d.map(|_| w))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        self.bfs_distances_bounded(source, usize::MAX)
    }

    fn bfs_distances_bounded(&self, source: usize, radius: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == radius {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest `u`-`v` path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.bfs_distances(u)[v].ok_or(Error::Disconnected)
    }

    /// All-pairs distances; `usize::MAX` marks unreachable pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.adj.len())
            .map(|s| {
                self.bfs_distances(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Connected components, each ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for s in 0..self.adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph `⟨W⟩` induced by `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_vertex(v)?;
        }
        let adj = sorted
            .iter()
            .map(|&v| {
                // Both lists are ascending, so a merge walk yields ascending local ids.
                let mut local = Vec::new();
                let (mut i, mut j) = (0, 0);
                let nb = &self.adj[v];
                while i < nb.len() && j < sorted.len() {
                    match nb[i].cmp(&sorted[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            local.push(j);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                local
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph { adj },
            vertices: sorted,
        })
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.adj.len());
        let mut adj = vec![Vec::new(); self.adj.len()];
        for (v, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adj[perm[v]] = mapped;
        }
        Graph { adj }
    }
}

/// An induced subgraph together with its vertex correspondence.
///
/// Local vertex `i` corresponds to `vertices[i]` of the host graph; the
/// correspondence is order preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: VertexSet,
}

impl InducedSubgraph {
    /// Local id of host vertex `v`, if it belongs to the subgraph.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    #[inline]
    pub fn host(&self, local: usize) -> usize {
        self.vertices[local]
    }
}
