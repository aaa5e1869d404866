//! Recognition of locally unrefined graphs and factor extraction.

use std::collections::BTreeMap;

use crate::coloring::{color_component, color_fibers_from, color_from_min_backbone, NeighborhoodCache, PartialProductColoring};
use crate::error::{Error, Result};
use crate::factor::DEFAULT_SIZE_CAP;
use crate::graph::{Edge, Graph, VertexSet};
use crate::product::{strong_edge_count, Coordinatization};
use crate::sclass::{backbone, require_thin};
use crate::skeleton::{build, ColoredSkeleton};

/// Outcome of [`recognize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionReport {
    pub in_upsilon: bool,
    /// Largest prime count over all backbone neighborhoods.
    pub max_local_factors: usize,
    /// Prime count of `⟨N[v]⟩` for every backbone vertex `v`.
    pub local_prime_counts: BTreeMap<usize, usize>,
    pub extracted_factors: Vec<Graph>,
    /// Host vertices of each extracted factor; factor vertex `i` is `factor_vertices[k][i]`.
    pub factor_vertices: Vec<VertexSet>,
    pub coloring: Option<ColoredSkeleton>,
    pub reconstruction_ok: bool,
    pub diagnostics: Vec<String>,
}

/// Decides membership in the class of locally unrefined graphs.
///
/// The input must be thin and connected; pipeline failures are reported in
/// the diagnostics with `in_upsilon = false`.
pub fn recognize(g: &Graph) -> Result<RecognitionReport> {
    recognize_with(g, DEFAULT_SIZE_CAP)
}

pub fn recognize_with(g: &Graph, size_cap: usize) -> Result<RecognitionReport> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    g.require_connected()?;
    require_thin(g)?;
    let b = backbone(g)?;
    let mut cache = NeighborhoodCache::new(g, size_cap);
    let mut report = RecognitionReport {
        in_upsilon: false,
        max_local_factors: 0,
        local_prime_counts: BTreeMap::new(),
        extracted_factors: Vec::new(),
        factor_vertices: Vec::new(),
        coloring: None,
        reconstruction_ok: false,
        diagnostics: Vec::new(),
    };
    for &v in &b.vertices {
        match cache.get(v, 1) {
            Ok(nf) => {
                report.local_prime_counts.insert(v, nf.prime_count());
            }
            Err(e) => {
                report.diagnostics.push(format!("neighborhood of {v}: {e}"));
                return Ok(report);
            }
        }
    }
    report.max_local_factors = report.local_prime_counts.values().copied().max().unwrap_or(0);

    let skeleton = match build(&mut cache, &b) {
        Ok(s) => s,
        Err(e) => {
            report.diagnostics.push(format!("skeleton: {e}"));
            return Ok(report);
        }
    };
    report.diagnostics.extend(skeleton.diagnostics.iter().cloned());
    let verdict = verify_product(g, &skeleton.color_of);
    if let Some(d) = &verdict.diagnostic {
        report.diagnostics.push(d.clone());
    }
    let m = verdict.factors.len();
    report.reconstruction_ok = verdict.ok;
    report.extracted_factors = verdict.factors;
    report.factor_vertices = verdict.fibers;
    report.coloring = Some(skeleton);
    if report.reconstruction_ok && report.max_local_factors != m {
        report.diagnostics.push(format!(
            "{m} factors extracted but some backbone neighborhood has {} prime factors",
            report.max_local_factors
        ));
    }
    report.in_upsilon = report.reconstruction_ok && report.max_local_factors == m;
    Ok(report)
}

/// Result of checking a coloring against the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub ok: bool,
    /// One factor per color, the fiber of that color through the lowest vertex.
    pub factors: Vec<Graph>,
    pub fibers: Vec<VertexSet>,
    pub coords: Option<Coordinatization>,
    pub diagnostic: Option<String>,
}

/// Checks that the colored edges make `g` the strong product of its color fibers.
///
/// Coordinate `c` of a vertex is where its component in the skeleton without
/// color `c` meets the `c`-fiber; these coordinates must biject onto the grid
/// and reproduce `g` edge for edge.
pub fn verify_product(g: &Graph, coloring: &BTreeMap<Edge, usize>) -> ProductCheck {
    let n = g.vertex_count();
    let m = coloring.values().copied().max().map_or(0, |c| c + 1);
    let mut out = ProductCheck {
        ok: false,
        factors: Vec::new(),
        fibers: Vec::new(),
        coords: None,
        diagnostic: None,
    };
    for c in 0..m {
        let Some(start) = coloring.iter().filter(|(_, &k)| k == c).map(|(e, _)| e.0).min() else {
            out.diagnostic = Some(format!("color {c} is unused"));
            return out;
        };
        let fiber = color_component(g, coloring, start, |k| k == c);
        out.factors.push(g.induced_subgraph(&fiber).expect("fiber is nonempty").graph);
        out.fibers.push(fiber);
    }
    let mut coords = vec![Vec::with_capacity(m); n];
    for c in 0..m {
        let others: Vec<Edge> = coloring
            .iter()
            .filter(|(_, &k)| k != c)
            .map(|(&e, _)| e)
            .collect();
        let rest = Graph::from_edges(n, others).expect("subgraph is simple");
        let fiber = &out.fibers[c];
        for comp in rest.components() {
            let hits: Vec<usize> = comp.iter().filter_map(|v| fiber.binary_search(v).ok()).collect();
            if hits.len() != 1 {
                out.diagnostic = Some(format!(
                    "coordinates are not bijective: a layer for color {c} meets its fiber {} times",
                    hits.len()
                ));
                return out;
            }
            for &v in &comp {
                coords[v].push(hits[0]);
            }
        }
    }
    let sizes = out.fibers.iter().map(Vec::len).collect();
    let coords = match Coordinatization::new(sizes, coords) {
        Ok(c) => c,
        Err(e) => {
            out.diagnostic = Some(format!("coordinates are not bijective: {e}"));
            return out;
        }
    };
    out.ok = coords.reproduces(g, &out.factors);
    if !out.ok {
        out.diagnostic = Some("product of the extracted factors differs from the graph".into());
    }
    out.coords = Some(coords);
    out
}

/// Prime factors read off the fibers through one backbone vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberFactorization {
    pub anchor: usize,
    pub factors: Vec<Graph>,
    /// Host vertices of each factor; factor vertex `i` is `fibers[k][i]`.
    pub fibers: Vec<VertexSet>,
}

/// Prime factor decomposition from the smallest backbone vertex alone.
///
/// Valid for locally unrefined graphs. Only vertex and edge counts are
/// checked against the fibers, so a graph outside the class can slip through
/// with wrong factors; use [`recognize`] when membership is unknown.
/// Coloring failures surface as [`Error::NotLocallyUnrefined`].
pub fn pfd_fast(g: &Graph) -> Result<FiberFactorization> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    g.require_connected()?;
    require_thin(g)?;
    fibers_to_factors(g, color_from_min_backbone(g))
}

/// [`pfd_fast`] anchored at the backbone vertex `x`.
pub fn pfd_fast_from(g: &Graph, x: usize) -> Result<FiberFactorization> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    g.check_vertex(x)?;
    g.require_connected()?;
    require_thin(g)?;
    fibers_to_factors(g, color_fibers_from(g, x).map(|c| (x, c)))
}

fn fibers_to_factors(g: &Graph, colored: Result<(usize, PartialProductColoring)>) -> Result<FiberFactorization> {
    let (x, coloring) = colored.map_err(|e| match e {
        Error::ContinuationFailed { .. } | Error::FactorCountMismatch { .. } | Error::ColorConflict(..) => {
            Error::NotLocallyUnrefined(e.to_string())
        }
        other => other,
    })?;
    let mut parts: Vec<(Graph, VertexSet)> = (0..coloring.color_count())
        .map(|c| {
            let fiber = coloring.fiber_of(g, x, c);
            (g.induced_subgraph(&fiber).expect("nonempty").graph, fiber)
        })
        .collect();
    let product: usize = parts.iter().map(|(_, f)| f.len()).product();
    let factors: Vec<Graph> = parts.iter().map(|(f, _)| f.clone()).collect();
    if product != g.vertex_count() || strong_edge_count(&factors) != g.edge_count() {
        return Err(Error::NotLocallyUnrefined(format!(
            "fibers through {x} have sizes {:?}, inconsistent with {} vertices and {} edges",
            parts.iter().map(|(_, f)| f.len()).collect::<Vec<_>>(),
            g.vertex_count(),
            g.edge_count()
        )));
    }
    parts.sort_by_key(|(f, _)| {
        let mut degrees: Vec<usize> = (0..f.vertex_count()).map(|v| f.neighbors(v).len()).collect();
        degrees.sort_unstable();
        (f.vertex_count(), f.edge_count(), degrees)
    });
    let (factors, fibers) = parts.into_iter().unzip();
    Ok(FiberFactorization {
        anchor: x,
        factors,
        fibers,
    })
}
