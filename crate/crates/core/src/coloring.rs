//! Partial product colorings grown from backbone neighborhoods.
//!
//! Starting at a backbone vertex `x`, each local factor of `⟨N[x]⟩` is followed
//! through backbone vertices along edges that carry that factor's label. The
//! label is re-aligned at every step through the edge shared with the parent
//! neighborhood, so no isomorphism guessing is involved. All lifted edges with
//! the aligned label are colored, which covers the fibers through `x` and the
//! parallel fibers inside the visited neighborhoods.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{factor_ball, NeighborhoodFactorization, DEFAULT_SIZE_CAP};
use crate::graph::{edge, Edge, Graph};
use crate::sclass::{backbone, backbone_unchecked, Backbone};

/// How an edge was identified as Cartesian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Lifted from a closed neighborhood.
    S1Local,
    /// Closed a triangle of two equally colored edges.
    Completion,
    /// Lifted from a 2-neighborhood.
    N2Sweep,
}

/// Where a raw color was created: a local factor of the ball of `radius` around `center`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColorOrigin {
    pub center: usize,
    pub radius: usize,
    pub local_index: usize,
}

/// BFS order over backbone vertices of one fiber through `anchor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringSequence {
    pub anchor: usize,
    pub factor_index: usize,
    pub order: Vec<usize>,
    pub parent: BTreeMap<usize, usize>,
    /// Local factor index of the followed factor in each visited neighborhood.
    pub labels: BTreeMap<usize, usize>,
}

/// Colors on a subset of the edges, one color per followed local factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialProductColoring {
    pub colored: BTreeMap<Edge, usize>,
    pub palette: Vec<ColorOrigin>,
    pub stage: BTreeMap<Edge, Stage>,
    pub sequences: Vec<CoveringSequence>,
}

impl PartialProductColoring {
    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        self.colored.get(&edge(u, v)).copied()
    }

    pub fn color_count(&self) -> usize {
        self.palette.len()
    }

    /// Vertices reachable from `x` along edges of color `c`, ascending.
    pub fn fiber_of(&self, g: &Graph, x: usize, c: usize) -> Vec<usize> {
        color_component(g, &self.colored, x, |k| k == c)
    }
}

/// Component of `x` in the subgraph of edges whose color satisfies `keep`.
pub(crate) fn color_component(
    g: &Graph,
    colored: &BTreeMap<Edge, usize>,
    x: usize,
    keep: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    seen[x] = true;
    let mut stack = vec![x];
    let mut out = vec![x];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] && colored.get(&edge(u, w)).is_some_and(|&k| keep(k)) {
                seen[w] = true;
                out.push(w);
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Memoized ball factorizations of one graph.
pub(crate) struct NeighborhoodCache<'g> {
    pub g: &'g Graph,
    pub size_cap: usize,
    balls: HashMap<(usize, usize), Rc<NeighborhoodFactorization>>,
}

impl<'g> NeighborhoodCache<'g> {
    pub fn new(g: &'g Graph, size_cap: usize) -> Self {
        NeighborhoodCache {
            g,
            size_cap,
            balls: HashMap::new(),
        }
    }

    pub fn get(&mut self, v: usize, radius: usize) -> Result<Rc<NeighborhoodFactorization>> {
        if let Some(nf) = self.balls.get(&(v, radius)) {
            return Ok(Rc::clone(nf));
        }
        let nf = Rc::new(factor_ball(self.g, v, radius, self.size_cap)?);
        self.balls.insert((v, radius), Rc::clone(&nf));
        Ok(nf)
    }
}

/// Follows local factor `local_color` of `⟨N[x]⟩` through the backbone.
pub fn backbone_bfs(g: &Graph, b: &Backbone, x: usize, local_color: usize) -> Result<CoveringSequence> {
    g.check_vertex(x)?;
    let mut cache = NeighborhoodCache::new(g, DEFAULT_SIZE_CAP);
    bfs(&mut cache, b, x, local_color)
}

fn bfs(cache: &mut NeighborhoodCache, b: &Backbone, x: usize, local_color: usize) -> Result<CoveringSequence> {
    if !b.contains(x) {
        return Err(Error::NotInBackbone(x));
    }
    let g = cache.g;
    let nx = cache.get(x, 1)?;
    let expected = nx.prime_count();
    if local_color >= expected {
        return Err(Error::FactorIndex {
            index: local_color,
            count: expected,
        });
    }
    let mut seq = CoveringSequence {
        anchor: x,
        factor_index: local_color,
        order: vec![x],
        parent: BTreeMap::new(),
        labels: BTreeMap::from([(x, local_color)]),
    };
    let mut queue = VecDeque::from([(x, nx)]);
    while let Some((v, nv)) = queue.pop_front() {
        let label = seq.labels[&v];
        for &w in g.neighbors(v) {
            if seq.labels.contains_key(&w) || !b.contains(w) || nv.label_of(v, w) != Some(label) {
                continue;
            }
            let nw = cache.get(w, 1)?;
            if nw.prime_count() != expected {
                return Err(Error::FactorCountMismatch {
                    vertex: w,
                    found: nw.prime_count(),
                    expected,
                });
            }
            let lw = nw
                .label_of(v, w)
                .ok_or(Error::ContinuationFailed { parent: v, vertex: w })?;
            seq.labels.insert(w, lw);
            seq.parent.insert(w, v);
            seq.order.push(w);
            queue.push_back((w, nw));
        }
    }
    Ok(seq)
}

/// Colors every fiber through the backbone vertex `x`, then closes triangles.
pub fn color_fibers_from(g: &Graph, x: usize) -> Result<PartialProductColoring> {
    let b = backbone(g)?;
    let mut cache = NeighborhoodCache::new(g, DEFAULT_SIZE_CAP);
    let mut coloring = color_from(&mut cache, &b, x)?;
    complete_triangles(g, &mut coloring.colored, &mut coloring.stage, |c| c);
    Ok(coloring)
}

/// Per-anchor coloring without the completion sweep.
pub(crate) fn color_from(cache: &mut NeighborhoodCache, b: &Backbone, x: usize) -> Result<PartialProductColoring> {
    cache.g.check_vertex(x)?;
    if !b.contains(x) {
        return Err(Error::NotInBackbone(x));
    }
    let n = cache.get(x, 1)?.prime_count();
    let mut coloring = PartialProductColoring {
        colored: BTreeMap::new(),
        palette: Vec::with_capacity(n),
        stage: BTreeMap::new(),
        sequences: Vec::with_capacity(n),
    };
    for c in 0..n {
        let seq = bfs(cache, b, x, c)?;
        for &v in &seq.order {
            let nv = cache.get(v, 1)?;
            let label = seq.labels[&v];
            for (e, _) in nv.lifted_edges().filter(|&(_, l)| l == label) {
                match coloring.colored.get(&e) {
                    Some(&k) if k != c => return Err(Error::ColorConflict(e.0, e.1)),
                    Some(_) => {}
                    None => {
                        coloring.colored.insert(e, c);
                        coloring.stage.insert(e, Stage::S1Local);
                    }
                }
            }
        }
        coloring.palette.push(ColorOrigin {
            center: x,
            radius: 1,
            local_index: c,
        });
        coloring.sequences.push(seq);
    }
    Ok(coloring)
}

/// Colors every uncolored edge `vw` that has a common neighbor `z` with `zv`
/// and `zw` in the same class, until nothing changes. Returns the number of
/// edges colored.
pub(crate) fn complete_triangles(
    g: &Graph,
    colored: &mut BTreeMap<Edge, usize>,
    stage: &mut BTreeMap<Edge, Stage>,
    mut class: impl FnMut(usize) -> usize,
) -> usize {
    let mut added = 0;
    loop {
        let mut changed = false;
        for z in 0..g.vertex_count() {
            let mut by_class: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
            for &a in g.neighbors(z) {
                if let Some(&c) = colored.get(&edge(z, a)) {
                    by_class.entry(class(c)).or_default().push((a, c));
                }
            }
            for members in by_class.values() {
                for (i, &(a, c)) in members.iter().enumerate() {
                    for &(b, _) in &members[i + 1..] {
                        let e = edge(a, b);
                        if g.has_edge(a, b) && !colored.contains_key(&e) {
                            colored.insert(e, c);
                            stage.insert(e, Stage::Completion);
                            added += 1;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return added;
        }
    }
}

/// Completes every partially colored fiber by closing equally colored triangles.
pub fn extend_to_s1_fibers(g: &Graph, coloring: &PartialProductColoring) -> PartialProductColoring {
    let mut out = coloring.clone();
    complete_triangles(g, &mut out.colored, &mut out.stage, |c| c);
    out
}

/// Coloring from the smallest backbone vertex, used by the fast path.
pub(crate) fn color_from_min_backbone(g: &Graph) -> Result<(usize, PartialProductColoring)> {
    let b = backbone_unchecked(g);
    let x = b.min();
    let mut cache = NeighborhoodCache::new(g, DEFAULT_SIZE_CAP);
    let mut coloring = color_from(&mut cache, &b, x)?;
    complete_triangles(g, &mut coloring.colored, &mut coloring.stage, |c| c);
    Ok((x, coloring))
}
