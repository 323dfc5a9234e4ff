use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generate::instance_with;
use super::{check_axiom, AxiomId, AxiomReport, ClassMode, GenConfig, Verdict};
use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::scalar::Tolerance;

const SHRINK_CAP: usize = 200;

/// Tally of a random search; `counterexample` is `None` when nothing was found.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchOutcome {
    pub counterexample: Option<AxiomReport<f64>>,
    pub tried: usize,
    pub holds: usize,
    pub skipped: usize,
    pub precondition_unmet: usize,
    /// Instances on which the measure itself failed to evaluate.
    pub errors: usize,
    pub shrink_steps: usize,
}

/// Samples up to `budget` random instances and returns the first violation, shrunk.
pub fn search_counterexample(
    measure: &dyn Measure<f64>,
    axiom: AxiomId,
    cfg: &GenConfig,
    budget: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::invalid("search budget must be positive"));
    }
    let mut out = SearchOutcome::default();
    let class = measure.class();
    for i in 0..budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let (g, case) = instance_with(class, axiom, cfg, &mut rng)?;
        out.tried += 1;
        let report = match check_axiom(measure, axiom, &g, &case, tol, ClassMode::Restricted) {
            Ok(r) => r,
            Err(Error::NoConvergence { .. } | Error::Singular(_)) => {
                out.errors += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match report.verdict {
            Verdict::Holds => out.holds += 1,
            Verdict::SkippedOutOfClass => out.skipped += 1,
            Verdict::PreconditionUnmet => out.precondition_unmet += 1,
            Verdict::Violated => {
                let (small, steps) = shrink(measure, report, tol);
                out.counterexample = Some(small);
                out.shrink_steps = steps;
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Greedily drops nodes and edge copies while the violation persists.
pub fn shrink(
    measure: &dyn Measure<f64>,
    report: AxiomReport<f64>,
    tol: Tolerance,
) -> (AxiomReport<f64>, usize) {
    let mut best = report;
    let mut steps = 0;
    'outer: while steps < SHRINK_CAP {
        let w = best.witness.as_ref().expect("violations carry a witness");
        for candidate in candidates(&w.graph, w.case.nodes()) {
            let Ok(r) = check_axiom(
                measure,
                best.axiom,
                &candidate,
                &w.case,
                tol,
                ClassMode::Restricted,
            ) else {
                continue;
            };
            if r.is_violated() {
                best = r;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (best, steps)
}

/// One-step reductions: remove a node not named by the case, or one edge copy.
fn candidates(g: &MultiGraph, keep: Vec<&NodeId>) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for v in g.nodes().filter(|v| !keep.contains(v)) {
        let mut h = g.clone();
        h.remove_node_and_edges(v);
        out.push(h);
    }
    for (u, v, m) in g.edges() {
        let mut h = g.clone();
        h.set_multiplicity(u, v, m - 1);
        out.push(h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{MeasureId, MeasureSpec};

    #[test]
    fn betweenness_edge_deletion_is_found_and_shrunk() {
        let m = MeasureSpec::default_for(MeasureId::Betweenness);
        let out = search_counterexample(
            &m,
            AxiomId::EdgeDeletion,
            &GenConfig::default(),
            500,
            1,
            Tolerance::default(),
        )
        .unwrap();
        let report = out.counterexample.expect("betweenness fails edge deletion");
        let g = &report.witness.as_ref().unwrap().graph;
        assert!(g.node_count() <= 4, "{g:?}");
    }

    #[test]
    fn pagerank_survives_search() {
        let m = MeasureSpec::default_for(MeasureId::PageRank);
        for axiom in AxiomId::SIX {
            let out = search_counterexample(
                &m,
                axiom,
                &GenConfig::default(),
                100,
                7,
                Tolerance::default(),
            )
            .unwrap();
            assert!(out.counterexample.is_none(), "{axiom}");
            assert_eq!(out.holds, 100, "{axiom}: {out:?}");
        }
    }
}
