use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AxiomCase, AxiomId};
use crate::error::{Error, Result};
use crate::graph::{GraphClass, MultiGraph, NodeId, DEFAULT_SPECTRAL_TOL};
use crate::scalar::Scalar;
use crate::transforms::OpInstance;

const REJECTION_CAP: usize = 1000;

/// Shape parameters for random graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_multiplicity: u64,
    pub weight_pool: Vec<f64>,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            min_nodes: 1,
            max_nodes: 6,
            max_multiplicity: 3,
            weight_pool: vec![0.0, 0.5, 1.0, 2.0, 3.0],
        }
    }
}

impl GenConfig {
    pub fn sized(min_nodes: usize, max_nodes: usize) -> Self {
        Self {
            min_nodes,
            max_nodes,
            ..Self::default()
        }
    }
}

/// Random graph in `class`, reproducible from `seed`.
pub fn generate_graph(class: GraphClass, cfg: &GenConfig, seed: u64) -> Result<MultiGraph> {
    generate_with(class, cfg, &mut ChaCha8Rng::seed_from_u64(seed), "n")
}

fn name(prefix: &str, i: usize) -> NodeId {
    NodeId::new(format!("{prefix}{i}"))
}

fn weight<R: Rng>(cfg: &GenConfig, rng: &mut R) -> f64 {
    *cfg.weight_pool.choose(rng).unwrap_or(&1.0)
}

fn multiplicity<R: Rng>(cfg: &GenConfig, rng: &mut R) -> u64 {
    rng.gen_range(1..=cfg.max_multiplicity.max(1))
}

pub(crate) fn generate_with<R: Rng>(
    class: GraphClass,
    cfg: &GenConfig,
    rng: &mut R,
    prefix: &str,
) -> Result<MultiGraph> {
    if cfg.min_nodes == 0 || cfg.min_nodes > cfg.max_nodes {
        return Err(Error::invalid("node range must satisfy 1 <= min <= max"));
    }
    let min = match class {
        GraphClass::StronglyConnected => cfg.min_nodes.max(2),
        _ => cfg.min_nodes,
    };
    if min > cfg.max_nodes {
        return Err(Error::invalid(
            "strongly connected graphs need at least two nodes",
        ));
    }
    let n = rng.gen_range(min..=cfg.max_nodes);
    let density: f64 = rng.gen_range(0.1..0.6);
    let mut g = MultiGraph::new();
    for i in 0..n {
        g.add_node(name(prefix, i), weight(cfg, rng))?;
    }
    match class {
        GraphClass::All => {
            for i in 0..n {
                for j in 0..n {
                    if rng.gen_bool(density) {
                        g.add_edge(name(prefix, i), name(prefix, j), multiplicity(cfg, rng))?;
                    }
                }
            }
        }
        GraphClass::Acyclic => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for x in 0..n {
                for y in x + 1..n {
                    if rng.gen_bool(density) {
                        let (i, j) = (order[x], order[y]);
                        g.add_edge(name(prefix, i), name(prefix, j), multiplicity(cfg, rng))?;
                    }
                }
            }
        }
        GraphClass::StronglyConnected => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for x in 0..n {
                let (i, j) = (order[x], order[(x + 1) % n]);
                g.add_edge(name(prefix, i), name(prefix, j), multiplicity(cfg, rng))?;
            }
            for i in 0..n {
                for j in 0..n {
                    if rng.gen_bool(density / 2.0) {
                        g.add_edge(name(prefix, i), name(prefix, j), multiplicity(cfg, rng))?;
                    }
                }
            }
        }
        GraphClass::KatzAdmissible(a) => {
            for _ in 0..REJECTION_CAP {
                let h = generate_with(GraphClass::All, cfg, rng, prefix)?;
                if h.spectral_radius(DEFAULT_SPECTRAL_TOL)? * a < 1.0 {
                    return Ok(h);
                }
            }
            return Err(Error::GenerationFailed {
                attempts: REJECTION_CAP,
            });
        }
    }
    Ok(g)
}

/// Base graph for instance generation, mixing acyclic graphs into the unrestricted class.
fn base_graph<R: Rng>(
    class: GraphClass,
    cfg: &GenConfig,
    rng: &mut R,
    prefix: &str,
) -> Result<MultiGraph> {
    match class {
        GraphClass::All if rng.gen_bool(0.3) => {
            generate_with(GraphClass::Acyclic, cfg, rng, prefix)
        }
        GraphClass::KatzAdmissible(_) if rng.gen_bool(0.5) => {
            generate_with(GraphClass::Acyclic, cfg, rng, prefix)
        }
        _ => generate_with(class, cfg, rng, prefix),
    }
}

fn pick_edge<R: Rng>(g: &MultiGraph, rng: &mut R) -> Option<(NodeId, NodeId)> {
    let edges: Vec<(NodeId, NodeId)> = g.edges().map(|(u, v, _)| (u.clone(), v.clone())).collect();
    edges.choose(rng).cloned()
}

fn pick_node<R: Rng>(g: &MultiGraph, rng: &mut R) -> NodeId {
    let nodes: Vec<&NodeId> = g.nodes().collect();
    (*nodes.choose(rng).expect("nonempty graph")).clone()
}

/// Random graph plus a valid instance of `axiom`, built so its structural
/// precondition holds; measures restricted to `class` get graphs from that class.
pub fn generate_instance(
    class: GraphClass,
    axiom: AxiomId,
    cfg: &GenConfig,
    seed: u64,
) -> Result<(MultiGraph, AxiomCase)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    instance_with(class, axiom, cfg, &mut rng)
}

pub(crate) fn instance_with<R: Rng>(
    class: GraphClass,
    axiom: AxiomId,
    cfg: &GenConfig,
    rng: &mut R,
) -> Result<(MultiGraph, AxiomCase)> {
    match axiom {
        AxiomId::NodeDeletion | AxiomId::Baseline => {
            let mut g = base_graph(class, cfg, rng, "n")?;
            g.add_node("z", weight(cfg, rng))?;
            let case = if axiom == AxiomId::Baseline {
                AxiomCase::Baseline(NodeId::new("z"))
            } else {
                AxiomCase::Invariance(OpInstance::delete_node("z"))
            };
            Ok((g, case))
        }
        AxiomId::EdgeDeletion => {
            for _ in 0..REJECTION_CAP {
                let g = base_graph(class, cfg, rng, "n")?;
                if let Some((u, w)) = pick_edge(&g, rng) {
                    return Ok((g, AxiomCase::Invariance(OpInstance::delete_edge(u, w))));
                }
            }
            Err(Error::GenerationFailed {
                attempts: REJECTION_CAP,
            })
        }
        AxiomId::EdgeMultiplication => {
            let g = base_graph(class, cfg, rng, "n")?;
            let sources: Vec<NodeId> = g.nodes().filter(|v| !g.is_sink(v)).cloned().collect();
            let u = sources
                .choose(rng)
                .cloned()
                .unwrap_or_else(|| pick_node(&g, rng));
            let k = rng.gen_range(1..=3);
            Ok((g, AxiomCase::Invariance(OpInstance::multiply(u, k))))
        }
        AxiomId::EdgeSwap => {
            if class != GraphClass::StronglyConnected && rng.gen_bool(0.4) {
                duplicated_components(class, cfg, rng)
            } else {
                twin_swap(class, cfg, rng)
            }
        }
        AxiomId::NodeRedirect => twin_redirect(class, cfg, rng),
        AxiomId::Locality | AxiomId::SourceNode => Err(Error::invalid(format!(
            "{axiom} is checked with check_derived_property"
        ))),
    }
}

/// `H + H'` with a swap between an edge of `H` and its copy in `H'`.
fn duplicated_components<R: Rng>(
    class: GraphClass,
    cfg: &GenConfig,
    rng: &mut R,
) -> Result<(MultiGraph, AxiomCase)> {
    for _ in 0..REJECTION_CAP {
        let h = base_graph(class, cfg, rng, "a")?;
        let Some((u, u2)) = pick_edge(&h, rng) else {
            continue;
        };
        let copy = h.relabeled("c");
        let g = h.disjoint_union(&copy)?;
        let prime = |v: &NodeId| NodeId::new(format!("c{v}"));
        let (w, w2) = (prime(&u), prime(&u2));
        return Ok((g, AxiomCase::Invariance(OpInstance::swap(u, u2, w, w2))));
    }
    Err(Error::GenerationFailed {
        attempts: REJECTION_CAP,
    })
}

/// Adds twins `t1`, `t2` that an automorphism exchanges, then swaps one out-edge of each.
fn twin_swap<R: Rng>(
    class: GraphClass,
    cfg: &GenConfig,
    rng: &mut R,
) -> Result<(MultiGraph, AxiomCase)> {
    let (t1, t2) = (NodeId::new("t1"), NodeId::new("t2"));
    let mut g = base_graph(class, cfg, rng, "n")?;
    let rest: Vec<NodeId> = g.nodes().cloned().collect();
    let w = weight(cfg, rng);
    g.add_node(t1.clone(), w)?;
    g.add_node(t2.clone(), w)?;
    let force = class == GraphClass::StronglyConnected;
    let wired = |g: &mut MultiGraph, outward: bool, rng: &mut R| -> Result<()> {
        let mut any = false;
        for x in &rest {
            if rng.gen_bool(0.35) {
                let m = multiplicity(cfg, rng);
                for t in [&t1, &t2] {
                    if outward {
                        g.add_edge(t.clone(), x.clone(), m)?;
                    } else {
                        g.add_edge(x.clone(), t.clone(), m)?;
                    }
                }
                any = true;
            }
        }
        if force && !any {
            let x = rest.choose(rng).expect("nonempty").clone();
            for t in [&t1, &t2] {
                if outward {
                    g.add_edge(t.clone(), x.clone(), 1)?;
                } else {
                    g.add_edge(x.clone(), t.clone(), 1)?;
                }
            }
        }
        Ok(())
    };
    wired(&mut g, true, rng)?;
    wired(&mut g, false, rng)?;
    if rng.gen_bool(0.4) {
        let m = multiplicity(cfg, rng);
        g.add_edge(t1.clone(), t2.clone(), m)?;
        g.add_edge(t2.clone(), t1.clone(), m)?;
    }
    if rng.gen_bool(0.3) {
        let m = multiplicity(cfg, rng);
        g.add_edge(t1.clone(), t1.clone(), m)?;
        g.add_edge(t2.clone(), t2.clone(), m)?;
    }
    if g.is_sink(&t1) {
        let x = rest.choose(rng).expect("nonempty").clone();
        g.add_edge(t1.clone(), x.clone(), 1)?;
        g.add_edge(t2.clone(), x, 1)?;
    }
    let targets = |t: &NodeId| -> Vec<NodeId> { g.out_edges(t).map(|(x, _)| x.clone()).collect() };
    let u2 = targets(&t1).choose(rng).expect("t1 has out-edges").clone();
    let w2 = targets(&t2).choose(rng).expect("t2 has out-edges").clone();
    Ok((g, AxiomCase::Invariance(OpInstance::swap(t1, u2, t2, w2))))
}

/// Adds an out-twin `w` of a random node `u` and redirects one into the other.
fn twin_redirect<R: Rng>(
    class: GraphClass,
    cfg: &GenConfig,
    rng: &mut R,
) -> Result<(MultiGraph, AxiomCase)> {
    let mut g = base_graph(class, cfg, rng, "n")?;
    let rest: Vec<NodeId> = g.nodes().cloned().collect();
    let u = rest.choose(rng).expect("nonempty").clone();
    let w = NodeId::new("w");
    g.add_node(w.clone(), weight(cfg, rng))?;
    let outs: Vec<(NodeId, u64)> = g.out_edges(&u).map(|(x, m)| (x.clone(), m)).collect();
    for (x, m) in outs {
        // #(w,u) mirrors #(u,u); every other target is copied as is
        g.add_edge(w.clone(), x, m)?;
    }
    if rng.gen_bool(0.3) {
        let k = multiplicity(cfg, rng);
        g.add_edge(u.clone(), w.clone(), k)?;
        g.add_edge(w.clone(), w.clone(), k)?;
    }
    let mut has_in = false;
    for x in rest.iter().filter(|x| **x != u) {
        if rng.gen_bool(0.35) {
            g.add_edge(x.clone(), w.clone(), multiplicity(cfg, rng))?;
            has_in = true;
        }
    }
    if class == GraphClass::StronglyConnected && !has_in {
        let others: Vec<&NodeId> = rest.iter().filter(|x| **x != u).collect();
        let x = (*others.choose(rng).expect("at least two nodes")).clone();
        g.add_edge(x, w.clone(), 1)?;
    }
    let op = if rng.gen_bool(0.5) {
        OpInstance::redirect(u, w)
    } else {
        OpInstance::redirect(w, u)
    };
    Ok((g, AxiomCase::Invariance(op)))
}

/// Every structurally valid instance of `axiom` on `g`, in a fixed order.
///
/// Edge swaps are listed for all pairs of distinct edges; whether their
/// endpoints score equally is left to the check.
pub fn instances_on<S: Scalar>(g: &MultiGraph<S>, axiom: AxiomId) -> Vec<AxiomCase> {
    let isolated = || g.nodes().filter(|v| g.is_isolated(v)).cloned();
    let op = AxiomCase::Invariance;
    match axiom {
        AxiomId::NodeDeletion => isolated().map(|v| op(OpInstance::delete_node(v))).collect(),
        AxiomId::Baseline => isolated().map(AxiomCase::Baseline).collect(),
        AxiomId::EdgeDeletion => g
            .edges()
            .map(|(u, w, _)| op(OpInstance::delete_edge(u, w)))
            .collect(),
        AxiomId::EdgeMultiplication => g
            .nodes()
            .filter(|u| g.out_degree(u) > 0)
            .map(|u| op(OpInstance::multiply(u, 1)))
            .collect(),
        AxiomId::EdgeSwap => {
            let edges: Vec<(&NodeId, &NodeId)> = g.edges().map(|(u, w, _)| (u, w)).collect();
            let mut out = Vec::new();
            for (i, &(u, u2)) in edges.iter().enumerate() {
                for &(w, w2) in &edges[i + 1..] {
                    if u != w && u2 != w2 {
                        out.push(op(OpInstance::swap(u, u2, w, w2)));
                    }
                }
            }
            out
        }
        AxiomId::NodeRedirect => {
            let mut out = Vec::new();
            for u in g.nodes() {
                for w in g.nodes().filter(|&w| w != u) {
                    if g.are_out_twins(u, w).unwrap_or(false) {
                        out.push(op(OpInstance::redirect(u, w)));
                    }
                }
            }
            out
        }
        AxiomId::Locality | AxiomId::SourceNode => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_respected() {
        let cfg = GenConfig::sized(2, 7);
        for seed in 0..100 {
            let g = generate_graph(GraphClass::StronglyConnected, &cfg, seed).unwrap();
            assert!(g.is_strongly_connected().unwrap());
            let g = generate_graph(GraphClass::Acyclic, &cfg, seed).unwrap();
            assert_eq!(g.spectral_radius(1e-12).unwrap(), 0.0);
            let g = generate_graph(GraphClass::KatzAdmissible(0.3), &cfg, seed).unwrap();
            assert!(g.spectral_radius(1e-12).unwrap() < 1.0 / 0.3);
        }
    }

    #[test]
    fn reproducible_and_single_node() {
        let cfg = GenConfig::default();
        assert_eq!(
            generate_graph(GraphClass::All, &cfg, 5).unwrap(),
            generate_graph(GraphClass::All, &cfg, 5).unwrap()
        );
        let g = generate_graph(GraphClass::All, &GenConfig::sized(1, 1), 9).unwrap();
        assert_eq!(g.node_count(), 1);
    }

    #[test]
    fn instances_meet_structural_preconditions() {
        let cfg = GenConfig::default();
        for seed in 0..200 {
            for class in [GraphClass::All, GraphClass::StronglyConnected] {
                for axiom in AxiomId::SIX {
                    let (g, case) = generate_instance(class, axiom, &cfg, seed).unwrap();
                    assert_eq!(case.axiom(), axiom);
                    if let Some(op) = case.op() {
                        op.apply(&g).unwrap();
                    }
                    if let OpInstance::SwapEdges { u, w, .. } =
                        case.op().unwrap_or(&OpInstance::delete_node("-"))
                    {
                        assert_eq!(g.out_degree(u), g.out_degree(w));
                    }
                    if class == GraphClass::StronglyConnected
                        && matches!(axiom, AxiomId::EdgeSwap | AxiomId::NodeRedirect)
                    {
                        assert!(g.is_strongly_connected().unwrap(), "{axiom} seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn instances_on_small_graph() {
        let g = MultiGraph::<f64>::from_parts(
            [("u", 1.0), ("w", 1.0), ("v", 0.0), ("z", 2.0)],
            [("u", "v", 1), ("w", "v", 1)],
        )
        .unwrap();
        assert_eq!(instances_on(&g, AxiomId::NodeDeletion).len(), 1);
        assert_eq!(instances_on(&g, AxiomId::EdgeDeletion).len(), 2);
        assert_eq!(instances_on(&g, AxiomId::EdgeMultiplication).len(), 2);
        assert!(instances_on(&g, AxiomId::EdgeSwap).is_empty());
        assert_eq!(
            instances_on(&g, AxiomId::NodeRedirect),
            vec![
                AxiomCase::Invariance(OpInstance::redirect("u", "w")),
                AxiomCase::Invariance(OpInstance::redirect("v", "z")),
                AxiomCase::Invariance(OpInstance::redirect("w", "u")),
                AxiomCase::Invariance(OpInstance::redirect("z", "v")),
            ]
        );
    }
}
