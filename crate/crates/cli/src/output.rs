//! JSON shapes of command results. Maps are keyed by vertex and ordered, so
//! the text is stable across runs.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use strongprod::coloring::Stage;
use strongprod::io::to_json_value;
use strongprod::oracle::ProductInstance;
use strongprod::recognize::{FiberFactorization, RecognitionReport};
use strongprod::skeleton::{ColoredSkeleton, StageCounts};
use strongprod::Graph;

#[derive(Serialize)]
struct SkeletonEdge {
    u: usize,
    v: usize,
    color: usize,
    stage: Stage,
}

#[derive(Serialize)]
struct SkeletonJson {
    n_colors: usize,
    stage_counts: StageCounts,
    edges: Vec<SkeletonEdge>,
    neighborhood_prime_counts: BTreeMap<usize, usize>,
    n2_prime_counts: BTreeMap<usize, usize>,
    diagnostics: Vec<String>,
}

fn factor_json(g: &Graph, vertices: &[usize]) -> Value {
    let mut v = to_json_value(g);
    v["vertices"] = json!(vertices);
    v
}

pub fn skeleton(s: &ColoredSkeleton) -> Value {
    let edges = s
        .color_of
        .iter()
        .map(|(&(u, v), &color)| SkeletonEdge {
            u,
            v,
            color,
            stage: s.stage_of[&(u, v)],
        })
        .collect();
    serde_json::to_value(SkeletonJson {
        n_colors: s.n_colors,
        stage_counts: s.stage_counts(),
        edges,
        neighborhood_prime_counts: s.neighborhood_prime_counts.clone(),
        n2_prime_counts: s.n2_prime_counts.clone(),
        diagnostics: s.diagnostics.clone(),
    })
    .expect("skeleton serializes")
}

pub fn report(r: &RecognitionReport) -> Value {
    json!({
        "in_upsilon": r.in_upsilon,
        "factor_count": r.extracted_factors.len(),
        "max_local_factors": r.max_local_factors,
        "local_prime_counts": r.local_prime_counts,
        "reconstruction_ok": r.reconstruction_ok,
        "factors": r.extracted_factors.iter().zip(&r.factor_vertices)
            .map(|(g, vs)| factor_json(g, vs)).collect::<Vec<_>>(),
        "skeleton": r.coloring.as_ref().map(skeleton),
        "diagnostics": r.diagnostics,
    })
}

pub fn factorization(f: &FiberFactorization) -> Value {
    json!({
        "anchor": f.anchor,
        "factor_count": f.factors.len(),
        "factors": f.factors.iter().zip(&f.fibers)
            .map(|(g, vs)| factor_json(g, vs)).collect::<Vec<_>>(),
    })
}

/// Top-level `n` and `edges` keep the instance readable as a plain graph.
pub fn instance(i: &ProductInstance) -> Value {
    let mut v = to_json_value(&i.graph);
    v["seed"] = json!(i.seed);
    v["thin"] = json!(i.thin);
    v["factors"] = json!(i.ground_truth_factors.iter().map(to_json_value).collect::<Vec<_>>());
    v["coords"] = serde_json::to_value(&i.ground_truth_coords).expect("coordinates serialize");
    v
}
