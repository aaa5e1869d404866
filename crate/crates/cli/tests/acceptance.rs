//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p strongprod-cli --test acceptance -- --nocapture`
//! to see the report. The test fails if any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use strongprod::factor::{factor_exact, factor_neighborhood, DEFAULT_SIZE_CAP};
use strongprod::graph::Edge;
use strongprod::io::to_edge_list;
use strongprod::iso::{canonical_form, is_isomorphic, CanonicalForm};
use strongprod::oracle::{
    gen_connected_graph, gen_product_instance, gen_thin_graph, oracle_pfd, s1_gap_fixture, twisted_fixture,
    ProductInstance,
};
use strongprod::recognize::recognize;
use strongprod::sclass::{backbone, local_class_size, quotient, s_classes};
use strongprod::skeleton::build_skeleton;
use strongprod::coloring::Stage;
use strongprod::{strong_product, Graph};
use strongprod_cli::{bench_rows, log_log_slope, BENCH_KS};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Deterministic stream of draws for instance parameters.
struct Draws(u64);

impl Draws {
    fn next(&mut self) -> u64 {
        // splitmix64
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

fn forms(gs: &[Graph]) -> Vec<CanonicalForm> {
    let mut v: Vec<_> = gs.iter().map(|g| canonical_form(g).unwrap()).collect();
    v.sort();
    v
}

fn ground_truth_coloring(inst: &ProductInstance) -> BTreeMap<Edge, usize> {
    inst.graph
        .edges()
        .filter_map(|(u, v)| inst.ground_truth_coords.differing_coordinate(u, v).map(|i| ((u, v), i)))
        .collect()
}

fn same_partition(a: &BTreeMap<Edge, usize>, b: &BTreeMap<Edge, usize>) -> bool {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    a.keys().eq(b.keys())
        && a.iter().all(|(e, &x)| {
            let y = b[e];
            *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x
        })
}

fn two_factor_instances() -> Vec<ProductInstance> {
    (0..200u64)
        .map(|seed| {
            let mut d = Draws(seed);
            let sizes = [d.range(3, 6), d.range(3, 6)];
            gen_product_instance(&sizes, seed).unwrap()
        })
        .collect()
}

fn cli(args: &[&str], stdin: &str) -> (Option<i32>, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_strongprod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), out.stdout)
}

fn factor_recovery() -> Verdict {
    let start = Instant::now();
    let (mut eligible, mut accepted, mut missed, mut wrong) = (0, 0, 0, 0);
    for inst in two_factor_instances() {
        let g = &inst.graph;
        // The product is too large for the oracle; its prime factors are those of the factors.
        let truth: Vec<Graph> = inst
            .ground_truth_factors
            .iter()
            .flat_map(|f| oracle_pfd(f).unwrap().factors)
            .collect();
        let all_agree = backbone(g)
            .unwrap()
            .vertices
            .iter()
            .all(|&v| factor_neighborhood(g, v).unwrap().prime_count() == truth.len());
        let r = recognize(g).unwrap();
        eligible += all_agree as usize;
        if all_agree && !r.in_upsilon {
            missed += 1;
        }
        if r.in_upsilon {
            accepted += 1;
            if forms(&r.extracted_factors) != forms(&truth) {
                wrong += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        missed == 0 && wrong == 0 && secs < 60.0,
        format!("{accepted}/200 accepted, {eligible} eligible, {missed} missed, {wrong} wrong factor sets, {secs:.1}s"),
    )
}

fn backbone_law() -> Verdict {
    let mut failures = 0;
    for seed in 0..500u64 {
        let mut d = Draws(seed ^ 0xb0b);
        let n = d.range(3, 12);
        let g = gen_thin_graph(n, 0.2 + 0.5 * d.below(100) as f64 / 100.0, seed).unwrap();
        let b = backbone(&g).unwrap();
        let connected = g.induced_subgraph(&b.vertices).unwrap().graph.is_connected();
        let dominating = (0..n).all(|v| b.contains(v) || g.neighbors(v).iter().any(|&w| b.contains(w)));
        failures += (!connected || !dominating) as usize;
    }
    verdict(failures == 0, format!("{failures} failures on 500 thin connected graphs"))
}

fn product_backbone_law() -> Verdict {
    let mut failures = 0;
    for inst in two_factor_instances().into_iter().take(100) {
        let c = &inst.ground_truth_coords;
        let bs: Vec<_> = inst.ground_truth_factors.iter().map(|f| backbone(f).unwrap()).collect();
        let expected: Vec<usize> = (0..inst.graph.vertex_count())
            .filter(|&v| (0..2).all(|i| bs[i].contains(c.coords(v)[i])))
            .collect();
        failures += (backbone(&inst.graph).unwrap().vertices != expected) as usize;
    }
    verdict(failures == 0, format!("{failures} failures on 100 products"))
}

fn distance_law() -> Verdict {
    let instances = two_factor_instances();
    let mut d = Draws(0xd157);
    let mut failures = 0;
    for _ in 0..1000 {
        let inst = &instances[d.below(instances.len())];
        let n = inst.graph.vertex_count();
        let (u, v) = (d.below(n), d.below(n));
        let c = &inst.ground_truth_coords;
        let expected = (0..2)
            .map(|i| inst.ground_truth_factors[i].distance(c.coords(u)[i], c.coords(v)[i]).unwrap())
            .max()
            .unwrap();
        failures += (inst.graph.distance(u, v).unwrap() != expected) as usize;
    }
    verdict(failures == 0, format!("{failures} mismatches in 1000 vertex pairs"))
}

fn subproduct_law() -> Verdict {
    let mut d = Draws(0x5ab);
    let mut failures = 0;
    for inst in two_factor_instances().into_iter().take(100) {
        let g = &inst.graph;
        let x = d.below(g.vertex_count());
        let c = &inst.ground_truth_coords;
        for r in 1..=2 {
            let ball = g.induced_subgraph(&g.n_neighborhood(x, r).unwrap()).unwrap().graph;
            let parts: Vec<Graph> = (0..2)
                .map(|i| {
                    let f = &inst.ground_truth_factors[i];
                    f.induced_subgraph(&f.n_neighborhood(c.coords(x)[i], r).unwrap()).unwrap().graph
                })
                .collect();
            let (expected, _) = strong_product(&parts).unwrap();
            failures += !is_isomorphic(&ball, &expected).unwrap() as usize;
        }
    }
    verdict(failures == 0, format!("{failures} failures over 100 centers at radius 1 and 2"))
}

fn quotient_law() -> Verdict {
    let mut d = Draws(0x907);
    let mut failures = 0;
    let mut non_thin = 0;
    for _ in 0..100 {
        let pick = |d: &mut Draws| match d.below(4) {
            0 => Graph::complete(2),
            1 => Graph::complete(3),
            _ => {
                let n = d.range(2, 5);
                gen_connected_graph(n, 0.6, d.next()).unwrap()
            }
        };
        let f0 = pick(&mut d);
        let f1 = pick(&mut d);
        let (g, c) = strong_product(&[f0.clone(), f1.clone()]).unwrap();
        non_thin += (s_classes(&g).len() < g.vertex_count()) as usize;
        let (qp, _) = strong_product(&[quotient(&f0).quotient, quotient(&f1).quotient]).unwrap();
        let mut ok = is_isomorphic(&quotient(&g).quotient, &qp).unwrap();
        for z in 0..g.vertex_count() {
            for &x in &g.closed_neighborhood(z).unwrap() {
                let (cz, cx) = (c.coords(z), c.coords(x));
                let expected = local_class_size(&f0, cz[0], cx[0]).unwrap() * local_class_size(&f1, cz[1], cx[1]).unwrap();
                ok &= local_class_size(&g, z, x).unwrap() == expected;
            }
        }
        failures += !ok as usize;
    }
    verdict(failures == 0, format!("{failures} failures on 100 products, {non_thin} of them not thin"))
}

fn skeleton_exactness() -> Verdict {
    let mut instances = two_factor_instances();
    instances.extend((0..10).map(|s| gen_product_instance(&[3, 3, 4], s).unwrap()));
    instances.extend((3..=8).map(s1_gap_fixture));
    let (mut checked, mut failures) = (0, 0);
    for inst in &instances {
        if !recognize(&inst.graph).unwrap().in_upsilon {
            continue;
        }
        checked += 1;
        let s = build_skeleton(&inst.graph).unwrap();
        failures += !same_partition(&s.color_of, &ground_truth_coloring(inst)) as usize;
    }
    verdict(
        failures == 0 && checked > 0,
        format!("{failures} inexact skeletons among {checked} accepted instances"),
    )
}

fn negative_control() -> Verdict {
    let g = twisted_fixture();
    let prime = oracle_pfd(&g).unwrap().prime_count == 1;
    let local: Vec<usize> = backbone(&g)
        .unwrap()
        .vertices
        .iter()
        .map(|&v| factor_neighborhood(&g, v).unwrap().prime_count())
        .collect();
    let all_two = local.iter().all(|&k| k == 2);
    let (code, _) = cli(&["recognize"], &to_edge_list(&g));
    verdict(
        prime && all_two && code == Some(1),
        format!("oracle prime: {prime}, backbone prime counts {local:?}, recognize exit {code:?}"),
    )
}

fn s1_staging() -> Verdict {
    let mut found = Vec::new();
    let mut ok = true;
    for k in 3..=6 {
        let inst = s1_gap_fixture(k);
        let s = build_skeleton(&inst.graph).unwrap();
        let truth = ground_truth_coloring(&inst);
        // Ground-truth fibers keyed by factor and the remaining coordinates.
        let mut fibers: BTreeMap<(usize, Vec<usize>), Vec<Edge>> = BTreeMap::new();
        for (&(u, v), &i) in &truth {
            let mut rest = inst.ground_truth_coords.coords(u).to_vec();
            rest.remove(i);
            fibers.entry((i, rest)).or_default().push((u, v));
        }
        let late = fibers
            .values()
            .filter(|edges| edges.iter().all(|e| s.stage_of.get(e).is_some_and(|&st| st != Stage::S1Local)))
            .filter(|edges| edges.iter().any(|e| s.stage_of[e] == Stage::N2Sweep))
            .count();
        ok &= late > 0 && same_partition(&s.color_of, &truth) && recognize(&inst.graph).unwrap().in_upsilon;
        found.push(format!("k={k}: {late}"));
    }
    verdict(
        ok,
        format!("P_k ⊠ bull fibers with no S1 edge, recovered by the 2-neighborhood sweep: {}", found.join(", ")),
    )
}

fn scaling() -> Verdict {
    let start = Instant::now();
    let rows = bench_rows(&BENCH_KS, 3).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let slope = log_log_slope(&rows);
    let times: Vec<String> = rows.iter().map(|r| format!("{}:{:.1}ms", r.k, r.millis)).collect();
    verdict(
        slope <= 1.3 && secs < 30.0,
        format!("slope {slope:.2} over {}, total {secs:.1}s", times.join(" ")),
    )
}

fn oracle_agreement() -> Verdict {
    let mut disagreements = 0;
    let mut non_thin = 0;
    for seed in 0..500u64 {
        let mut d = Draws(seed ^ 0x0ac1e);
        let n = d.range(1, 10);
        let p = 0.3 + 0.6 * d.below(100) as f64 / 100.0;
        let g = gen_connected_graph(n, p, seed).unwrap();
        non_thin += (s_classes(&g).len() < n) as usize;
        let ours = factor_exact(&g, DEFAULT_SIZE_CAP).unwrap();
        let oracle = oracle_pfd(&g).unwrap();
        disagreements += (forms(&ours.factors) != forms(&oracle.factors)) as usize;
    }
    verdict(
        disagreements == 0,
        format!("{disagreements} disagreements on 500 graphs, {non_thin} not thin"),
    )
}

fn determinism() -> Verdict {
    let inputs = [
        to_edge_list(&gen_product_instance(&[4, 5], 21).unwrap().graph),
        to_edge_list(&s1_gap_fixture(4).graph),
        to_edge_list(&twisted_fixture()),
    ];
    let mut identical = true;
    for text in &inputs {
        for cmd in ["recognize", "skeleton"] {
            let a = cli(&[cmd], text);
            let b = cli(&[cmd], text);
            identical &= a == b && !a.1.is_empty();
        }
    }
    verdict(identical, "recognize and skeleton JSON byte-identical across two runs on 3 inputs")
}

#[test]
fn acceptance() {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 12] = [
        ("factor recovery", factor_recovery),
        ("backbone is a connected dominating set", backbone_law),
        ("backbone of a product", product_backbone_law),
        ("distance law", distance_law),
        ("subproduct law", subproduct_law),
        ("quotient and class sizes", quotient_law),
        ("skeleton exactness", skeleton_exactness),
        ("negative control", negative_control),
        ("S1 staging", s1_staging),
        ("scaling", scaling),
        ("oracle agreement", oracle_agreement),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("{} {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
