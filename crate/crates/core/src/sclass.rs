//! Relative S-classes, thinness, the quotient `G/S`, the backbone and the
//! S1-condition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Partition of a host vertex set by the fingerprint `N[x] ∩ H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPartition {
    pub host: VertexSet,
    /// Classes ordered by smallest member, each ascending.
    pub classes: Vec<VertexSet>,
    #[serde(skip)]
    class_index: Vec<usize>,
}

impl SPartition {
    /// Index of the class holding `v`, if `v` is in the host set.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.host.binary_search(&v).ok().map(|p| self.class_index[p])
    }

    pub fn class_containing(&self, v: usize) -> Option<&VertexSet> {
        self.class_of(v).map(|c| &self.classes[c])
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.host.len()
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> VertexSet {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Partition of `host` into the classes `S_H(x)`.
pub fn relative_s_partition(g: &Graph, host: &[usize]) -> Result<SPartition> {
    if host.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let mut host = host.to_vec();
    host.sort_unstable();
    host.dedup();
    for &v in &host {
        g.check_vertex(v)?;
    }
    let mut by_print: BTreeMap<VertexSet, usize> = BTreeMap::new();
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut class_index = Vec::with_capacity(host.len());
    for &x in &host {
        let print = intersect(&g.closed_neighborhood_unchecked(x), &host);
        let c = *by_print.entry(print).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(x);
        class_index.push(c);
    }
    Ok(SPartition {
        host,
        classes,
        class_index,
    })
}

/// The global S-classes of `g`.
pub fn s_classes(g: &Graph) -> Vec<VertexSet> {
    if g.vertex_count() == 0 {
        return Vec::new();
    }
    let all: VertexSet = (0..g.vertex_count()).collect();
    relative_s_partition(g, &all).expect("nonempty").classes
}

/// A pair of distinct twins `N[x] = N[y]`, if any. Twins are always adjacent,
/// so only edges need checking.
pub fn find_twins(g: &Graph) -> Option<(usize, usize)> {
    g.edges()
        .find(|&(u, v)| g.neighbors(u).len() == g.neighbors(v).len() && same_closed(g, u, v))
}

fn same_closed(g: &Graph, u: usize, v: usize) -> bool {
    g.closed_neighborhood_unchecked(u) == g.closed_neighborhood_unchecked(v)
}

pub fn is_thin(g: &Graph) -> bool {
    find_twins(g).is_none()
}

pub fn require_thin(g: &Graph) -> Result<()> {
    match find_twins(g) {
        Some((u, v)) => Err(Error::NotThin(u, v)),
        None => Ok(()),
    }
}

/// The quotient `G/S` together with the class correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: Graph,
    pub class_map: Vec<usize>,
    pub class_members: Vec<VertexSet>,
}

pub fn quotient(g: &Graph) -> QuotientResult {
    let class_members = s_classes(g);
    let mut class_map = vec![0; g.vertex_count()];
    for (c, members) in class_members.iter().enumerate() {
        for &v in members {
            class_map[v] = c;
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); class_members.len()];
    for (u, v) in g.edges() {
        let (a, b) = (class_map[u], class_map[v]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    QuotientResult {
        quotient: Graph::from_sorted_adjacency(adj),
        class_map,
        class_members,
    }
}

/// The backbone `B(G)` of a thin connected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Backbone {
    pub vertices: VertexSet,
}

impl Backbone {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> usize {
        self.vertices[0]
    }
}

/// Whether `N[v]` is strictly maximal, which for thin graphs is `|S_v(v)| = 1`.
pub(crate) fn has_maximal_neighborhood(g: &Graph, v: usize) -> bool {
    let nv = g.closed_neighborhood_unchecked(v);
    !g.neighbors(v)
        .iter()
        .any(|&w| g.neighbors(w).len() >= g.neighbors(v).len() && is_subset(&nv, &g.closed_neighborhood_unchecked(w)))
}

pub fn backbone(g: &Graph) -> Result<Backbone> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    require_thin(g)?;
    g.require_connected()?;
    Ok(backbone_unchecked(g))
}

pub(crate) fn backbone_unchecked(g: &Graph) -> Backbone {
    Backbone {
        vertices: (0..g.vertex_count())
            .filter(|&v| has_maximal_neighborhood(g, v))
            .collect(),
    }
}

/// `|S_z(x)|`: the size of the class of `x` in the partition of `N[z]`.
pub fn local_class_size(g: &Graph, z: usize, x: usize) -> Result<usize> {
    g.check_vertex(z)?;
    g.check_vertex(x)?;
    let nz = g.closed_neighborhood_unchecked(z);
    if nz.binary_search(&x).is_err() {
        return Err(Error::NotAnEdge(z, x));
    }
    Ok(local_class_size_in(g, &nz, x))
}

fn local_class_size_in(g: &Graph, nz: &[usize], x: usize) -> usize {
    let print = intersect(&g.closed_neighborhood_unchecked(x), nz);
    print
        .iter()
        .filter(|&&u| intersect(&g.closed_neighborhood_unchecked(u), nz) == print)
        .count()
}

/// A witness `z` for the S1-condition of the edge `xy`.
///
/// Candidates are tried backbone vertices first, then the rest, each in
/// ascending order.
pub fn s1_condition(g: &Graph, x: usize, y: usize) -> Result<Option<usize>> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge(x, y));
    }
    require_thin(g)?;
    Ok(s1_witness(g, x, y))
}

pub(crate) fn s1_witness(g: &Graph, x: usize, y: usize) -> Option<usize> {
    let common = intersect(&g.closed_neighborhood_unchecked(x), &g.closed_neighborhood_unchecked(y));
    let (back, rest): (Vec<usize>, Vec<usize>) = common
        .into_iter()
        .partition(|&z| has_maximal_neighborhood(g, z));
    back.into_iter().chain(rest).find(|&z| {
        let nz = g.closed_neighborhood_unchecked(z);
        local_class_size_in(g, &nz, x) == 1 || local_class_size_in(g, &nz, y) == 1
    })
}
