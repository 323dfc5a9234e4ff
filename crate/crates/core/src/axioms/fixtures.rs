use super::{AxiomCase, AxiomId};
use crate::centrality::MeasureId;
use crate::graph::{MultiGraph, NodeId};
use crate::transforms::OpInstance;

/// A small hand-built instance that breaks an axiom for the listed measures.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub axiom: AxiomId,
    pub graph: MultiGraph,
    pub case: AxiomCase,
    /// Node whose score changes.
    pub node: NodeId,
    /// Measures this instance refutes.
    pub refutes: Vec<MeasureId>,
}

fn graph(nodes: &[(&str, f64)], edges: &[(&str, &str, u64)]) -> MultiGraph {
    MultiGraph::from_parts(nodes.iter().copied(), edges.iter().copied())
        .expect("fixture graphs are well formed")
}

fn fixture(
    name: &'static str,
    graph: MultiGraph,
    op: Option<OpInstance>,
    node: &str,
    refutes: &[MeasureId],
) -> Fixture {
    let case = match op {
        Some(op) => AxiomCase::Invariance(op),
        None => AxiomCase::Baseline(NodeId::new(node)),
    };
    Fixture {
        name,
        axiom: case.axiom(),
        graph,
        case,
        node: NodeId::new(node),
        refutes: refutes.to_vec(),
    }
}

/// Witness instances for every failing (measure, axiom) pair.
pub fn witness_fixtures() -> Vec<Fixture> {
    use MeasureId::*;
    let diamond = graph(
        &[("u", 0.0), ("v", 1.0), ("v'", 0.0), ("w", 0.0)],
        &[("u", "v", 1), ("u", "v'", 1), ("v", "w", 1), ("v'", "w", 1)],
    );
    let triangle = graph(
        &[("u", 1.0), ("v", 1.0), ("w", 1.0)],
        &[("u", "v", 2), ("v", "w", 2), ("w", "u", 2)],
    );
    let fan = graph(
        &[("u", 1.0), ("v", 1.0), ("w", 1.0)],
        &[("u", "v", 1), ("w", "v", 1), ("v", "u", 1), ("v", "w", 1)],
    );
    vec![
        fixture(
            "path-edge-deletion",
            graph(
                &[("u", 1.0), ("v", 1.0), ("w", 1.0)],
                &[("u", "v", 1), ("v", "w", 1)],
            ),
            Some(OpInstance::delete_edge("v", "w")),
            "v",
            &[Betweenness],
        ),
        fixture(
            "diamond-multiplication",
            diamond.clone(),
            Some(OpInstance::multiply("v", 1)),
            "w",
            &[Degree, Katz, Bonacich],
        ),
        fixture(
            "diamond-multiplication-betweenness",
            diamond,
            Some(OpInstance::multiply("v", 1)),
            "v",
            &[Betweenness],
        ),
        fixture(
            "two-cycle-multiplication",
            graph(&[("u", 1.0), ("v", 1.0)], &[("u", "v", 1), ("v", "u", 1)]),
            Some(OpInstance::multiply("u", 3)),
            "u",
            &[Eigenvector],
        ),
        fixture(
            "arrow-pair-swap",
            graph(
                &[("u", 1.0), ("u'", 0.0), ("w", 0.0), ("w'", 0.0)],
                &[("u", "u'", 1), ("w", "w'", 1)],
            ),
            Some(OpInstance::swap("u", "u'", "w", "w'")),
            "u'",
            &[Bonacich],
        ),
        fixture(
            "doubled-triangle-swap",
            triangle.clone(),
            Some(OpInstance::swap("u", "v", "w", "u")),
            "v",
            &[Closeness, Decay],
        ),
        fixture(
            "doubled-triangle-swap-betweenness",
            triangle,
            Some(OpInstance::swap("u", "v", "w", "u")),
            "u",
            &[Betweenness],
        ),
        fixture(
            "fan-redirect",
            fan,
            Some(OpInstance::redirect("u", "w")),
            "v",
            &[Degree, Beta, Closeness, Decay, Betweenness],
        ),
        fixture(
            "isolated-baseline",
            graph(&[("v", 1.0)], &[]),
            None,
            "v",
            &[Degree, Bonacich, Beta, Decay, Betweenness, CxScaledPageRank],
        ),
        fixture(
            "weighted-isolate-deletion",
            graph(&[("u", 1.0), ("v", 0.0), ("w", 1.0)], &[("u", "v", 1)]),
            Some(OpInstance::delete_node("w")),
            "v",
            &[CxAdaptiveDecay],
        ),
        fixture(
            "chain-edge-deletion",
            graph(
                &[("u", 1.0), ("v", 0.0), ("w", 0.0)],
                &[("u", "v", 1), ("v", "w", 1)],
            ),
            Some(OpInstance::delete_edge("v", "w")),
            "v",
            &[CxSinkDoubled],
        ),
        fixture(
            "arrow-multiplication",
            graph(&[("u", 1.0), ("v", 0.0)], &[("u", "v", 1)]),
            Some(OpInstance::multiply("u", 1)),
            "v",
            &[CxDampedOutdeg],
        ),
        fixture(
            "chain-swap",
            graph(
                &[("u", 1.0), ("v", 0.0), ("w", 0.0)],
                &[("u", "v", 1), ("v", "w", 1)],
            ),
            Some(OpInstance::swap("u", "v", "v", "w")),
            "w",
            &[CxWeightedBeta],
        ),
        fixture(
            "source-pair-redirect",
            graph(
                &[("u", 0.0), ("v", 0.0), ("w", 0.0)],
                &[("u", "v", 1), ("w", "v", 1)],
            ),
            Some(OpInstance::redirect("u", "w")),
            "v",
            &[CxUniformBeta],
        ),
    ]
}
