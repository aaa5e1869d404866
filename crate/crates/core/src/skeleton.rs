//! The colored Cartesian skeleton.
//!
//! Raw colors come from every backbone anchor and, for edges still undecided
//! afterwards, from 2-neighborhoods. Raw colors are merged when they share an
//! edge, and the two colors of every chordless square of colored edges are
//! identified with those of the opposite sides.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coloring::{color_from, complete_triangles, ColorOrigin, NeighborhoodCache, Stage};
use crate::error::{Error, Result};
use crate::factor::DEFAULT_SIZE_CAP;
use crate::graph::{edge, Edge, Graph};
use crate::sclass::{backbone, Backbone};
use crate::union_find::UnionFind;

/// Cartesian edges with merged colors and the stage that identified them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredSkeleton {
    /// Raw color of every identified Cartesian edge.
    pub raw: BTreeMap<Edge, usize>,
    pub stage_of: BTreeMap<Edge, Stage>,
    pub palette: Vec<ColorOrigin>,
    pub merge: UnionFind,
    /// Final colors `0..n_colors`, numbered by first appearance in edge order.
    pub color_of: BTreeMap<Edge, usize>,
    pub n_colors: usize,
    /// Prime count of every factored closed neighborhood.
    pub neighborhood_prime_counts: BTreeMap<usize, usize>,
    /// Prime count of every factored 2-neighborhood.
    pub n2_prime_counts: BTreeMap<usize, usize>,
    pub diagnostics: Vec<String>,
}

/// Per-stage edge counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub s1_local: usize,
    pub completion: usize,
    pub n2_sweep: usize,
}

impl ColoredSkeleton {
    pub fn cartesian_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.color_of.keys().copied()
    }

    pub fn stage_counts(&self) -> StageCounts {
        let mut out = StageCounts::default();
        for s in self.stage_of.values() {
            match s {
                Stage::S1Local => out.s1_local += 1,
                Stage::Completion => out.completion += 1,
                Stage::N2Sweep => out.n2_sweep += 1,
            }
        }
        out
    }

    /// The skeleton as a spanning subgraph.
    pub fn graph(&self, n: usize) -> Graph {
        Graph::from_edges(n, self.color_of.keys().copied()).expect("subgraph is simple")
    }
}

struct Builder<'a, 'g> {
    g: &'g Graph,
    cache: &'a mut NeighborhoodCache<'g>,
    raw: BTreeMap<Edge, usize>,
    stage: BTreeMap<Edge, Stage>,
    palette: Vec<ColorOrigin>,
    uf: UnionFind,
}

impl Builder<'_, '_> {
    fn new_color(&mut self, origin: ColorOrigin) -> usize {
        self.palette.push(origin);
        self.uf.push()
    }

    fn record(&mut self, e: Edge, color: usize, stage: Stage) {
        match self.raw.get(&e) {
            Some(&k) => {
                self.uf.union(k, color);
            }
            None => {
                self.raw.insert(e, color);
                self.stage.insert(e, stage);
            }
        }
    }

    fn complete(&mut self) -> usize {
        let uf = &mut self.uf;
        complete_triangles(self.g, &mut self.raw, &mut self.stage, |c| uf.find(c))
    }

    /// Unions the opposite sides of chordless colored squares until stable.
    fn merge_squares(&mut self) -> usize {
        let n = self.g.vertex_count();
        let skel = Graph::from_edges(n, self.raw.keys().copied()).expect("subgraph is simple");
        let mut merged = 0;
        loop {
            let mut changed = false;
            for z in 0..n {
                let nz = skel.neighbors(z);
                for (i, &a) in nz.iter().enumerate() {
                    for &b in &nz[i + 1..] {
                        let (ca, cb) = (self.raw[&edge(z, a)], self.raw[&edge(z, b)]);
                        if self.uf.same(ca, cb) {
                            continue;
                        }
                        if let Some([_, _, w, _]) = find_square(&skel, (z, a), (z, b)) {
                            let wa = self.raw[&edge(w, a)];
                            let wb = self.raw[&edge(w, b)];
                            for (x, y) in [(ca, wb), (cb, wa)] {
                                if self.uf.union(x, y) {
                                    merged += 1;
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                return merged;
            }
        }
    }

    fn settle(&mut self) {
        loop {
            let added = self.complete();
            let merged = self.merge_squares();
            if added == 0 && merged == 0 {
                return;
            }
        }
    }
}

/// Builds the colored Cartesian skeleton of a thin connected graph.
pub fn build_skeleton(g: &Graph) -> Result<ColoredSkeleton> {
    build_skeleton_with(g, DEFAULT_SIZE_CAP)
}

/// [`build_skeleton`] with an explicit size cap for 2-neighborhoods.
pub fn build_skeleton_with(g: &Graph, size_cap: usize) -> Result<ColoredSkeleton> {
    let b = backbone(g)?;
    let mut cache = NeighborhoodCache::new(g, size_cap);
    build(&mut cache, &b)
}

pub(crate) fn build(cache: &mut NeighborhoodCache, b: &Backbone) -> Result<ColoredSkeleton> {
    let g = cache.g;
    let n = g.vertex_count();
    let mut neighborhood_prime_counts = BTreeMap::new();
    let mut diagnostics = Vec::new();
    let mut bd = Builder {
        g,
        cache,
        raw: BTreeMap::new(),
        stage: BTreeMap::new(),
        palette: Vec::new(),
        uf: UnionFind::new(0),
    };

    for &x in &b.vertices {
        let coloring = color_from(bd.cache, b, x)?;
        let ids: Vec<usize> = coloring.palette.iter().map(|&o| bd.new_color(o)).collect();
        for (e, c) in coloring.colored {
            bd.record(e, ids[c], Stage::S1Local);
        }
        for &v in coloring.sequences.iter().flat_map(|s| &s.order) {
            neighborhood_prime_counts.insert(v, bd.cache.get(v, 1)?.prime_count());
        }
    }
    bd.settle();

    // Classes that share an origin neighborhood are different factors.
    let mut origins: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (c, o) in bd.palette.iter().enumerate() {
        let root = bd.uf.find(c);
        origins.entry(root).or_default().insert(o.center);
    }
    let distinct = |uf: &mut UnionFind, c1: usize, c2: usize| {
        let (r1, r2) = (uf.find(c1), uf.find(c2));
        match (origins.get(&r1), origins.get(&r2)) {
            (Some(o1), Some(o2)) => r1 != r2 && !o1.is_disjoint(o2),
            _ => false,
        }
    };

    let mut swept = vec![false; n];
    let mut n2_prime_counts = BTreeMap::new();
    let pending: Vec<Edge> = g.edges().filter(|e| !bd.raw.contains_key(e)).collect();
    for (u, v) in pending {
        if swept[u] || swept[v] || bd.raw.contains_key(&(u, v)) {
            continue;
        }
        let certified = crate::sclass::intersect(g.neighbors(u), g.neighbors(v))
            .into_iter()
            .any(|z| match (bd.raw.get(&edge(u, z)), bd.raw.get(&edge(z, v))) {
                (Some(&c1), Some(&c2)) => distinct(&mut bd.uf, c1, c2),
                _ => false,
            });
        if certified {
            continue;
        }
        let size = g.n_neighborhood(u, 2)?.len();
        if size > bd.cache.size_cap {
            return Err(Error::N2Infeasible {
                vertex: u,
                size,
                cap: bd.cache.size_cap,
            });
        }
        swept[u] = true;
        let ball = bd.cache.get(u, 2)?;
        n2_prime_counts.insert(u, ball.prime_count());
        let mut local_ids: BTreeMap<usize, usize> = BTreeMap::new();
        for (e, l) in ball.lifted_edges() {
            let c = *local_ids.entry(l).or_insert_with(|| {
                bd.palette.push(ColorOrigin {
                    center: u,
                    radius: 2,
                    local_index: l,
                });
                bd.uf.push()
            });
            bd.record(e, c, Stage::N2Sweep);
        }
    }
    bd.settle();

    let mut color_of = BTreeMap::new();
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    for (&e, &c) in &bd.raw {
        let root = bd.uf.find(c);
        let next = renumber.len();
        color_of.insert(e, *renumber.entry(root).or_insert(next));
    }
    let n_colors = renumber.len();

    for c in 0..n_colors {
        let mut touched = vec![false; n];
        for (&(u, v), _) in color_of.iter().filter(|(_, &k)| k == c) {
            touched[u] = true;
            touched[v] = true;
        }
        if let Some(vertex) = touched.iter().position(|t| !t) {
            return Err(Error::NonSpanning { color: c, vertex });
        }
    }
    let local_max = neighborhood_prime_counts.values().copied().max().unwrap_or(0);
    if n_colors < local_max {
        diagnostics.push(format!(
            "{n_colors} color classes, fewer than the {local_max} local factors of some backbone neighborhood"
        ));
    }

    Ok(ColoredSkeleton {
        raw: bd.raw,
        stage_of: bd.stage,
        palette: bd.palette,
        merge: bd.uf,
        color_of,
        n_colors,
        neighborhood_prime_counts,
        n2_prime_counts,
        diagnostics,
    })
}

/// The chordless 4-cycle `[z, a, w, b]` through the incident edges `e` and `f`.
pub fn find_square(skeleton: &Graph, e: Edge, f: Edge) -> Option<[usize; 4]> {
    let z = if e.0 == f.0 || e.0 == f.1 {
        e.0
    } else if e.1 == f.0 || e.1 == f.1 {
        e.1
    } else {
        return None;
    };
    let a = if e.0 == z { e.1 } else { e.0 };
    let b = if f.0 == z { f.1 } else { f.0 };
    if a == b || skeleton.has_edge(a, b) || !skeleton.has_edge(z, a) || !skeleton.has_edge(z, b) {
        return None;
    }
    crate::sclass::intersect(skeleton.neighbors(a), skeleton.neighbors(b))
        .into_iter()
        .find(|&w| w != z && !skeleton.has_edge(z, w))
        .map(|w| [z, a, w, b])
}

/// Square merging on an existing skeleton, recomputing final colors.
pub fn merge_parallel_colors(g: &Graph, skeleton: &ColoredSkeleton) -> ColoredSkeleton {
    let mut cache = NeighborhoodCache::new(g, DEFAULT_SIZE_CAP);
    let mut bd = Builder {
        g,
        cache: &mut cache,
        raw: skeleton.raw.clone(),
        stage: skeleton.stage_of.clone(),
        palette: skeleton.palette.clone(),
        uf: skeleton.merge.clone(),
    };
    bd.merge_squares();
    let mut color_of = BTreeMap::new();
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    for (&e, &c) in &bd.raw {
        let root = bd.uf.find(c);
        let next = renumber.len();
        color_of.insert(e, *renumber.entry(root).or_insert(next));
    }
    ColoredSkeleton {
        n_colors: renumber.len(),
        color_of,
        raw: bd.raw,
        stage_of: bd.stage,
        palette: bd.palette,
        merge: bd.uf,
        neighborhood_prime_counts: skeleton.neighborhood_prime_counts.clone(),
        n2_prime_counts: skeleton.n2_prime_counts.clone(),
        diagnostics: skeleton.diagnostics.clone(),
    }
}
