//! Reference values checked against brute-force oracles written independently of the library.

use std::collections::BTreeMap;

use prax::axioms::{check_axiom, AxiomCase, AxiomId, ClassMode};
use prax::centrality::{
    adaptive_decay, betweenness, bonacich, closeness, decay_centrality, degree, eigenvector, katz,
    katz_prestige, pagerank_direct, pagerank_power, scaled_pagerank, sink_doubled,
};
use prax::graph::parse_graph;
use prax::random_walk::{path_probability, WalkPath};
use prax::scalar::rational;
use prax::{ExactGraph, Graph, MeasureId, MeasureSpec, NodeId, OpInstance, Rational, Tolerance};

fn fig1() -> Graph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/fig1.graph");
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fig2_gf() -> Graph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/fig2_gf.graph");
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn graph(nodes: &[(&str, f64)], edges: &[(&str, &str, u64)]) -> Graph {
    Graph::from_parts(nodes.iter().copied(), edges.iter().copied()).unwrap()
}

fn id(s: &str) -> NodeId {
    NodeId::new(s)
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
fn floyd(g: &Graph) -> BTreeMap<(NodeId, NodeId), u32> {
    let nodes: Vec<NodeId> = g.nodes().cloned().collect();
    let mut d: BTreeMap<(NodeId, NodeId), u32> = BTreeMap::new();
    for (u, v, _) in g.edges() {
        d.insert((u.clone(), v.clone()), 1);
    }
    for k in &nodes {
        for i in &nodes {
            for j in &nodes {
                let (Some(&a), Some(&b)) = (
                    d.get(&(i.clone(), k.clone())),
                    d.get(&(k.clone(), j.clone())),
                ) else {
                    continue;
                };
                let e = d.entry((i.clone(), j.clone())).or_insert(u32::MAX);
                *e = (*e).min(a + b);
            }
        }
    }
    d
}

/// Every shortest `s -> t` path, edges expanded by multiplicity, by depth-first search.
fn shortest_paths(g: &Graph, s: &NodeId, t: &NodeId, len: u32) -> Vec<Vec<NodeId>> {
    fn go(
        g: &Graph,
        at: &NodeId,
        t: &NodeId,
        left: u32,
        path: &mut Vec<NodeId>,
        out: &mut Vec<Vec<NodeId>>,
    ) {
        if left == 0 {
            if at == t {
                out.push(path.clone());
            }
            return;
        }
        for (w, m) in g.out_edges(at) {
            for _ in 0..m {
                path.push(w.clone());
                go(g, w, t, left - 1, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, s, t, len, &mut vec![s.clone()], &mut out);
    out
}

fn betweenness_oracle(g: &Graph, v: &NodeId) -> f64 {
    let d = floyd(g);
    let mut total = 0.0;
    for s in g.nodes().filter(|&s| s != v) {
        for t in g.nodes().filter(|&t| t != v && t != s) {
            let Some(&len) = d.get(&(s.clone(), t.clone())) else {
                continue;
            };
            let paths = shortest_paths(g, s, t, len);
            let through = paths.iter().filter(|p| p.contains(v)).count();
            total += through as f64 / paths.len() as f64;
        }
    }
    total
}

#[test]
fn fig1_incidence_reachability_and_distances() {
    let g = fig1();
    let v7 = g.incidence(&id("v7")).unwrap();
    assert_eq!(v7.in_degree(), 3);
    assert_eq!(v7.out_degree, 1);
    let v2 = g.incidence(&id("v2")).unwrap();
    assert_eq!(v2.out_degree, 1);
    assert_eq!(v2.in_multiplicity, BTreeMap::from([(id("v8"), 2)]));
    let r = g.reachability(&id("v2")).unwrap();
    assert_eq!(r.successors.into_iter().collect::<Vec<_>>(), vec![id("v3")]);
    assert_eq!(g.distance(&id("v5"), &id("v8")).unwrap(), Some(2));
    assert_eq!(g.distance(&id("v7"), &id("v8")).unwrap(), Some(2));
    assert!(!g.is_strongly_connected().unwrap());
    let fw = floyd(&g);
    for u in g.nodes() {
        for v in g.nodes().filter(|&v| v != u) {
            assert_eq!(
                g.distance(u, v).unwrap(),
                fw.get(&(u.clone(), v.clone())).copied(),
                "{u}->{v}"
            );
        }
    }
    let out: u64 = g.nodes().map(|v| g.out_degree(v)).sum();
    let inn: u64 = g.nodes().map(|v| g.incidence(v).unwrap().in_degree()).sum();
    assert_eq!(out, 13);
    assert_eq!(inn, 13);
    assert_eq!(g.edge_count(), 13);
}

#[test]
fn fig1_pagerank_is_the_exact_fixed_point() {
    let g: ExactGraph = fig1().to_scalar();
    let a = rational(9, 10);
    let pr = pagerank_direct(&g, a.clone()).unwrap();
    for v in g.nodes() {
        let mut rhs = g.weight(v).unwrap().clone();
        for u in g.nodes() {
            let m = g.multiplicity(u, v);
            if m > 0 {
                let share = Rational::from_integer(m.into())
                    / Rational::from_integer(g.out_degree(u).into());
                rhs += a.clone() * share * pr.get(u).unwrap().clone();
            }
        }
        assert_eq!(pr.get(v).unwrap(), &rhs, "{v}");
    }
    assert_eq!(pr.get(&id("v4")).unwrap(), &rational(10, 7));
    let power = pagerank_power(&fig1(), 0.9, 1e-10, 10_000).unwrap();
    assert!(power.scores.max_deviation(&pr.to_f64()) < 1e-8);
}

#[test]
fn pagerank_arrows_and_sources() {
    let a = rational(3, 4);
    let arrow = ExactGraph::from_parts(
        [("u", rational(5, 1)), ("v", rational(0, 1))],
        [("u", "v", 1)],
    )
    .unwrap();
    let pr = pagerank_direct(&arrow, a.clone()).unwrap();
    assert_eq!(pr.get(&id("u")).unwrap(), &rational(5, 1));
    assert_eq!(pr.get(&id("v")).unwrap(), &(a.clone() * rational(5, 1)));
    let k_arrow = ExactGraph::from_parts(
        [
            ("u", rational(2, 1)),
            ("x", rational(0, 1)),
            ("y", rational(0, 1)),
            ("z", rational(0, 1)),
        ],
        [("u", "x", 1), ("u", "y", 1), ("u", "z", 1)],
    )
    .unwrap();
    let pr = pagerank_direct(&k_arrow, a.clone()).unwrap();
    for s in ["x", "y", "z"] {
        assert_eq!(pr.get(&id(s)).unwrap(), &(a.clone() * rational(2, 3)));
    }
}

#[test]
fn walk_probability_formula() {
    let g: ExactGraph = fig1().to_scalar();
    let path = WalkPath::parse("v5,v7,v1,v8").unwrap();
    for (n, d) in [(1, 10), (1, 2), (9, 10), (1, 3)] {
        let a = rational(n, d);
        let want =
            a.clone() * a.clone() * a.clone() * (rational(1, 1) - a.clone()) / rational(24, 1);
        assert_eq!(path_probability(&g, a, &path).unwrap(), want);
    }
    let single = WalkPath::parse("v5").unwrap();
    assert_eq!(
        path_probability(&g, rational(1, 2), &single).unwrap(),
        rational(1, 16)
    );
    let missing = WalkPath::parse("v5,v8").unwrap();
    assert_eq!(
        path_probability(&g, rational(1, 2), &missing).unwrap(),
        rational(0, 1)
    );
}

#[test]
fn degree_katz_and_bonacich_on_the_diamond() {
    let diamond = graph(
        &[("u", 0.0), ("v", 1.0), ("v'", 0.0), ("w", 0.0)],
        &[("u", "v", 1), ("u", "v'", 1), ("v", "w", 1), ("v'", "w", 1)],
    );
    assert_eq!(*degree(&diamond).get(&id("w")).unwrap(), 2.0);
    assert_eq!(*degree(&fig1()).get(&id("v2")).unwrap(), 2.0);
    let a = 0.3;
    let k = katz(&diamond, a).unwrap();
    assert!((k.get(&id("w")).unwrap() - a).abs() < 1e-15);
    let doubled = OpInstance::multiply("v", 1).apply(&diamond).unwrap();
    assert!((katz(&doubled, a).unwrap().get(&id("w")).unwrap() - 2.0 * a).abs() < 1e-15);
    let g = fig2_gf();
    let k = katz(&g, a).unwrap();
    let bk = bonacich(&g, a).unwrap();
    let series = katz_series(&g, a, 200);
    for v in g.nodes() {
        assert!((k.get(v).unwrap() - series[v]).abs() < 1e-12, "{v}");
        let want = (series[v] - g.weight(v).unwrap()) / a;
        assert!((bk.get(v).unwrap() - want).abs() < 1e-10, "{v}");
    }
}

/// `Σ_k a^k (Aᵀ)^k b`, truncated.
fn katz_series(g: &Graph, a: f64, terms: usize) -> BTreeMap<NodeId, f64> {
    let mut term: BTreeMap<NodeId, f64> = g.weights().map(|(v, w)| (v.clone(), *w)).collect();
    let mut total = term.clone();
    for _ in 0..terms {
        let mut next: BTreeMap<NodeId, f64> = g.nodes().map(|v| (v.clone(), 0.0)).collect();
        for (u, v, m) in g.edges() {
            *next.get_mut(v).unwrap() += a * m as f64 * term[u];
        }
        for (v, x) in &next {
            *total.get_mut(v).unwrap() += x;
        }
        term = next;
    }
    total
}

#[test]
fn eigenvector_and_prestige_on_cycles() {
    let two = graph(&[("u", 1.0), ("v", 1.0)], &[("u", "v", 1), ("v", "u", 1)]);
    let ev = eigenvector(&two, 1e-13).unwrap();
    assert!((ev.get(&id("u")).unwrap() - 0.5).abs() < 1e-9);
    let quad = graph(&[("u", 1.0), ("v", 1.0)], &[("u", "v", 4), ("v", "u", 1)]);
    assert!((quad.spectral_radius(1e-13).unwrap() - 2.0).abs() < 1e-9);
    let ev = eigenvector(&quad, 1e-13).unwrap();
    assert!((ev.get(&id("u")).unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert!((ev.get(&id("v")).unwrap() - 2.0 / 3.0).abs() < 1e-9);
    let kp = katz_prestige(&quad.to_scalar::<Rational>()).unwrap();
    assert_eq!(kp.get(&id("u")).unwrap(), &rational(1, 2));
    let three = graph(
        &[("a", 1.0), ("b", 2.0), ("c", 0.0)],
        &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)],
    );
    for (_, x) in katz_prestige(&three).unwrap().iter() {
        assert!((x - 1.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn closeness_and_decay_match_floyd_warshall() {
    let triangle = graph(
        &[("u", 1.0), ("v", 1.0), ("w", 1.0)],
        &[("u", "v", 2), ("v", "w", 2), ("w", "u", 2)],
    );
    let c = closeness(&triangle).unwrap();
    assert!((c.get(&id("u")).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    let swapped = OpInstance::swap("u", "v", "w", "u")
        .apply(&triangle)
        .unwrap();
    assert!((closeness(&swapped).unwrap().get(&id("v")).unwrap() - 0.5).abs() < 1e-15);
    let a = 0.4;
    let y = decay_centrality(&triangle, a);
    assert!((y.get(&id("u")).unwrap() - (a + a * a)).abs() < 1e-15);
    let g = fig2_gf();
    let fw = floyd(&g);
    let y = decay_centrality(&g, a);
    for v in g.nodes() {
        let want: f64 = g
            .nodes()
            .filter(|&u| u != v)
            .filter_map(|u| fw.get(&(u.clone(), v.clone())))
            .map(|&d| a.powi(d as i32))
            .sum();
        assert!((y.get(v).unwrap() - want).abs() < 1e-14, "{v}");
    }
}

#[test]
fn betweenness_matches_path_enumeration() {
    let path = graph(
        &[("u", 1.0), ("v", 1.0), ("w", 1.0)],
        &[("u", "v", 1), ("v", "w", 1)],
    );
    assert_eq!(betweenness(&path).unwrap().get(&id("v")).unwrap(), &1.0);
    let diamond = graph(
        &[("u", 1.0), ("v", 1.0), ("v'", 1.0), ("w", 1.0)],
        &[("u", "v", 1), ("u", "v'", 1), ("v", "w", 1), ("v'", "w", 1)],
    );
    let counts = diamond
        .shortest_path_counts(&id("u"), &id("w"), Some(&id("v")))
        .unwrap();
    assert_eq!((counts.total, counts.through_via), (2, 1));
    let doubled = OpInstance::multiply("v", 1).apply(&diamond).unwrap();
    let exact = betweenness(&doubled.to_scalar::<Rational>()).unwrap();
    assert_eq!(exact.get(&id("v")).unwrap(), &rational(2, 3));
    for g in [fig1(), fig2_gf(), doubled] {
        let b = betweenness(&g).unwrap();
        for v in g.nodes() {
            assert!(
                (b.get(v).unwrap() - betweenness_oracle(&g, v)).abs() < 1e-12,
                "{v}"
            );
        }
    }
}

#[test]
fn counterexample_witness_values() {
    let g = graph(&[("u", 1.0), ("v", 0.0), ("w", 1.0)], &[("u", "v", 1)]);
    let exact = g.to_scalar::<Rational>();
    assert_eq!(
        adaptive_decay(&exact).unwrap().get(&id("v")).unwrap(),
        &rational(1, 4)
    );
    let smaller = OpInstance::delete_node("w").apply(&exact).unwrap();
    assert_eq!(
        adaptive_decay(&smaller).unwrap().get(&id("v")).unwrap(),
        &rational(1, 3)
    );
    let chain = graph(
        &[("u", 1.0), ("v", 0.0), ("w", 0.0)],
        &[("u", "v", 1), ("v", "w", 1)],
    );
    let a = 0.6;
    assert!((sink_doubled(&chain, a).unwrap().get(&id("v")).unwrap() - a).abs() < 1e-15);
    let cut = OpInstance::delete_edge("v", "w").apply(&chain).unwrap();
    assert!((sink_doubled(&cut, a).unwrap().get(&id("v")).unwrap() - 2.0 * a).abs() < 1e-15);
    let lone = graph(&[("v", 1.0)], &[]);
    assert_eq!(
        scaled_pagerank(&lone, 0.85).unwrap().get(&id("v")).unwrap(),
        &2.0
    );
}

#[test]
fn worked_chain_first_step_is_a_redirect_of_twins() {
    let g = fig2_gf();
    assert!(g.are_out_twins(&id("v1"), &id("v7")).unwrap());
    let m = MeasureSpec::with_decay(MeasureId::PageRank, 0.9).unwrap();
    let case = AxiomCase::Invariance(OpInstance::redirect("v7", "v1"));
    let r = check_axiom(
        &m,
        AxiomId::NodeRedirect,
        &g,
        &case,
        Tolerance::default(),
        ClassMode::Strict,
    )
    .unwrap();
    assert!(!r.is_violated(), "{r}");
    let ge = OpInstance::redirect("v7", "v1").apply(&g).unwrap();
    assert_eq!(ge.weight(&id("v1")).unwrap(), &1.0);
    let before = pagerank_direct(&g, 0.9).unwrap();
    let after = pagerank_direct(&ge, 0.9).unwrap();
    let sum = before.get(&id("v1")).unwrap() + before.get(&id("v7")).unwrap();
    assert!((after.get(&id("v1")).unwrap() - sum).abs() < 1e-12);
}
