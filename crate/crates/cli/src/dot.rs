//! Graphviz rendering. Cartesian edges carry their color index as the edge
//! label, so the color partition can be read back from the text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use strongprod::graph::{edge, Edge};
use strongprod::Graph;

const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

fn header(out: &mut String, name: &str, g: &Graph, filled: &[usize]) {
    writeln!(out, "graph {name} {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..g.vertex_count() {
        if filled.binary_search(&v).is_ok() {
            writeln!(out, "  {v} [style=filled, fillcolor=lightgray];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
}

/// Colored Cartesian edges solid and labeled, the rest dotted.
pub fn skeleton(g: &Graph, colors: &BTreeMap<Edge, usize>) -> String {
    let mut out = String::new();
    header(&mut out, "skeleton", g, &[]);
    for (u, v) in g.edges() {
        match colors.get(&(u, v)) {
            Some(&c) => writeln!(
                out,
                "  {u} -- {v} [color=\"{}\", label=\"{c}\"];",
                PALETTE[c % PALETTE.len()]
            )
            .unwrap(),
            None => writeln!(out, "  {u} -- {v} [style=dotted, color=gray];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// The graph with `filled` vertices shaded.
pub fn highlighted(g: &Graph, filled: &[usize]) -> String {
    let mut out = String::new();
    header(&mut out, "G", g, filled);
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edges inside fiber `k` get color `k`.
pub fn fibers(g: &Graph, fibers: &[Vec<usize>]) -> String {
    let mut colors = BTreeMap::new();
    for (k, f) in fibers.iter().enumerate() {
        for (i, &u) in f.iter().enumerate() {
            for &v in &f[i + 1..] {
                if g.has_edge(u, v) {
                    colors.insert(edge(u, v), k);
                }
            }
        }
    }
    skeleton(g, &colors)
}
