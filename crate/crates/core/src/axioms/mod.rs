//! Executable invariance axioms.
//!
//! Each axiom pairs a graph operation with a prediction about which scores it
//! leaves untouched. [`check_axiom`] evaluates a measure before and after the
//! operation and reports whether the prediction held, with a witness node when
//! it did not.

mod fixtures;
mod generate;
mod matrix;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::centrality::{CentralityVector, Measure};
use crate::error::{Error, Result};
use crate::graph::{format_graph, MultiGraph, NodeId};
use crate::scalar::{Scalar, Tolerance};
use crate::transforms::OpInstance;

pub use fixtures::{witness_fixtures, Fixture};
pub use generate::{generate_graph, generate_instance, instances_on, GenConfig};
pub use matrix::{
    expected_table, satisfiability_matrix, Cell, CellEvidence, Mark, MatrixConfig, SatMatrix,
};
pub use search::{search_counterexample, shrink, SearchOutcome};

/// The six axioms plus the two derived properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    NodeDeletion,
    EdgeDeletion,
    EdgeMultiplication,
    EdgeSwap,
    NodeRedirect,
    Baseline,
    Locality,
    SourceNode,
}

impl AxiomId {
    pub const SIX: [AxiomId; 6] = [
        AxiomId::NodeDeletion,
        AxiomId::EdgeDeletion,
        AxiomId::EdgeMultiplication,
        AxiomId::EdgeSwap,
        AxiomId::NodeRedirect,
        AxiomId::Baseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::NodeDeletion => "node-deletion",
            AxiomId::EdgeDeletion => "edge-deletion",
            AxiomId::EdgeMultiplication => "edge-multiplication",
            AxiomId::EdgeSwap => "edge-swap",
            AxiomId::NodeRedirect => "node-redirect",
            AxiomId::Baseline => "baseline",
            AxiomId::Locality => "locality",
            AxiomId::SourceNode => "source-node",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            AxiomId::NodeDeletion => "ND",
            AxiomId::EdgeDeletion => "ED",
            AxiomId::EdgeMultiplication => "EM",
            AxiomId::EdgeSwap => "ES",
            AxiomId::NodeRedirect => "NR",
            AxiomId::Baseline => "BL",
            AxiomId::Locality => "LOC",
            AxiomId::SourceNode => "SRC",
        }
    }

    /// Consequences of the axioms rather than axioms themselves.
    pub fn is_derived(self) -> bool {
        matches!(self, AxiomId::Locality | AxiomId::SourceNode)
    }

    fn accepts(self, case: &AxiomCase) -> bool {
        matches!(
            (self, case),
            (
                AxiomId::NodeDeletion,
                AxiomCase::Invariance(OpInstance::DeleteNode { .. })
            ) | (
                AxiomId::EdgeDeletion,
                AxiomCase::Invariance(OpInstance::DeleteEdge { .. })
            ) | (
                AxiomId::EdgeMultiplication,
                AxiomCase::Invariance(OpInstance::MultiplyEdges { .. })
            ) | (
                AxiomId::EdgeSwap,
                AxiomCase::Invariance(OpInstance::SwapEdges { .. })
            ) | (
                AxiomId::NodeRedirect,
                AxiomCase::Invariance(OpInstance::Redirect { .. })
            ) | (AxiomId::Baseline, AxiomCase::Baseline(_))
        )
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = AxiomId::SIX
            .into_iter()
            .chain([AxiomId::Locality, AxiomId::SourceNode]);
        for a in all {
            if a.name() == s || a.short().eq_ignore_ascii_case(s) {
                return Ok(a);
            }
        }
        Err(Error::invalid(format!("unknown axiom `{s}`")))
    }
}

/// What an axiom check is applied to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomCase {
    /// An operation whose effect on the scores is predicted.
    Invariance(OpInstance),
    /// An isolated node whose score should equal its weight.
    Baseline(NodeId),
}

impl AxiomCase {
    /// The axiom this case instantiates.
    pub fn axiom(&self) -> AxiomId {
        match self {
            AxiomCase::Baseline(_) => AxiomId::Baseline,
            AxiomCase::Invariance(op) => match op {
                OpInstance::DeleteNode { .. } => AxiomId::NodeDeletion,
                OpInstance::DeleteEdge { .. } => AxiomId::EdgeDeletion,
                OpInstance::MultiplyEdges { .. } => AxiomId::EdgeMultiplication,
                OpInstance::SwapEdges { .. } => AxiomId::EdgeSwap,
                OpInstance::Redirect { .. } => AxiomId::NodeRedirect,
            },
        }
    }

    pub fn op(&self) -> Option<&OpInstance> {
        match self {
            AxiomCase::Invariance(op) => Some(op),
            AxiomCase::Baseline(_) => None,
        }
    }

    /// Nodes the case refers to.
    pub fn nodes(&self) -> Vec<&NodeId> {
        match self {
            AxiomCase::Invariance(op) => op.nodes(),
            AxiomCase::Baseline(v) => vec![v],
        }
    }
}

impl fmt::Display for AxiomCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomCase::Invariance(op) => write!(f, "{op}"),
            AxiomCase::Baseline(v) => write!(f, "baseline {v}"),
        }
    }
}

/// How graphs outside a measure's class are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassMode {
    /// The axiom only quantifies over graphs in the class; others are skipped.
    #[default]
    Restricted,
    /// Leaving the class is an error.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    SkippedOutOfClass,
    PreconditionUnmet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::SkippedOutOfClass => "skipped_out_of_class",
            Verdict::PreconditionUnmet => "precondition_unmet",
        })
    }
}

/// Node whose score broke the prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Witness<S: Scalar> {
    #[serde(serialize_with = "graph_text")]
    pub graph: MultiGraph<S>,
    pub case: AxiomCase,
    pub node: NodeId,
    #[serde(serialize_with = "as_f64")]
    pub before: S,
    #[serde(serialize_with = "as_f64")]
    pub after: S,
    #[serde(serialize_with = "as_f64")]
    pub expected: S,
}

fn graph_text<S: Scalar, Ser: Serializer>(
    g: &MultiGraph<S>,
    s: Ser,
) -> std::result::Result<Ser::Ok, Ser::Error> {
    s.serialize_str(&format_graph(g))
}

fn as_f64<S: Scalar, Ser: Serializer>(x: &S, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    s.serialize_f64(x.to_f64())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct AxiomReport<S: Scalar> {
    pub axiom: AxiomId,
    pub measure: String,
    pub verdict: Verdict,
    pub witness: Option<Witness<S>>,
    /// Why the check was skipped or its precondition failed.
    pub note: Option<String>,
}

impl<S: Scalar> AxiomReport<S> {
    fn new(axiom: AxiomId, measure: String, verdict: Verdict) -> Self {
        Self {
            axiom,
            measure,
            verdict,
            witness: None,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

impl<S: Scalar> fmt::Display for AxiomReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}: {}", self.measure, self.axiom, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(
                f,
                " at {} under `{}`: before {} after {} expected {}",
                w.node,
                w.case,
                w.before.to_f64(),
                w.after.to_f64(),
                w.expected.to_f64()
            )?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// Evaluates `m` on `g`, or reports why it cannot be evaluated under `mode`.
fn scores_in_class<S: Scalar>(
    m: &dyn Measure<S>,
    g: &MultiGraph<S>,
    mode: ClassMode,
) -> Result<Option<CentralityVector<S>>> {
    if !m.defined_on(g)? {
        return match mode {
            ClassMode::Restricted => Ok(None),
            ClassMode::Strict => Err(Error::ClassViolation {
                measure: m.label(),
                class: m.class(),
            }),
        };
    }
    m.evaluate(g).map(Some)
}

/// Largest mismatch among `targets`, if any exceeds the tolerance.
fn worst_mismatch<S: Scalar>(
    targets: impl IntoIterator<Item = (NodeId, S, S, S)>,
    tol: Tolerance,
) -> Option<(NodeId, S, S, S)> {
    targets
        .into_iter()
        .filter(|(_, _, after, expected)| !after.approx_eq(expected, tol))
        .max_by(|a, b| {
            let da = (a.2.to_f64() - a.3.to_f64()).abs();
            let db = (b.2.to_f64() - b.3.to_f64()).abs();
            da.total_cmp(&db)
        })
}

/// Checks one axiom instance.
pub fn check_axiom<S: Scalar>(
    measure: &dyn Measure<S>,
    axiom: AxiomId,
    g: &MultiGraph<S>,
    case: &AxiomCase,
    tol: Tolerance,
    mode: ClassMode,
) -> Result<AxiomReport<S>> {
    if !axiom.accepts(case) {
        return Err(Error::invalid(format!(
            "`{case}` is not an instance of {axiom}"
        )));
    }
    let label = measure.label();
    let report = |v: Verdict| AxiomReport::<S>::new(axiom, label.clone(), v);
    let op = match case {
        AxiomCase::Baseline(v) => {
            g.require(v)?;
            if !g.is_isolated(v) {
                return Ok(
                    report(Verdict::PreconditionUnmet).with_note(format!("{v} is not isolated"))
                );
            }
            let Some(f) = scores_in_class(measure, g, mode)? else {
                return Ok(report(Verdict::SkippedOutOfClass));
            };
            let (after, expected) = (f.get(v)?.clone(), g.weight(v)?.clone());
            if after.approx_eq(&expected, tol) {
                return Ok(report(Verdict::Holds));
            }
            let mut r = report(Verdict::Violated);
            r.witness = Some(Witness {
                graph: g.clone(),
                case: case.clone(),
                node: v.clone(),
                before: expected.clone(),
                after,
                expected,
            });
            return Ok(r);
        }
        AxiomCase::Invariance(op) => op,
    };

    let g2 = match op.apply(g) {
        Ok(g2) => g2,
        Err(e @ (Error::PreconditionViolated { .. } | Error::NodeNotFound(_))) => {
            return Ok(report(Verdict::PreconditionUnmet).with_note(e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let Some(f) = scores_in_class(measure, g, mode)? else {
        return Ok(report(Verdict::SkippedOutOfClass).with_note("input graph outside class"));
    };
    if !g2.is_empty() && !measure.defined_on(&g2)? {
        if mode == ClassMode::Strict {
            return Err(Error::ClassViolation {
                measure: label,
                class: measure.class(),
            });
        }
        return Ok(report(Verdict::SkippedOutOfClass).with_note("result graph outside class"));
    }
    let f2 = if g2.is_empty() {
        CentralityVector::from_values(&[], vec![])
    } else {
        measure.evaluate(&g2)?
    };

    let unchanged = |v: &NodeId| -> Result<(NodeId, S, S, S)> {
        let before = f.get(v)?.clone();
        Ok((v.clone(), before.clone(), f2.get(v)?.clone(), before))
    };
    let mut targets = Vec::new();
    match op {
        OpInstance::DeleteNode { node } => {
            for v in g.nodes().filter(|v| *v != node) {
                targets.push(unchanged(v)?);
            }
        }
        OpInstance::DeleteEdge { src, .. } => {
            let succ = g.reachability(src)?.successors;
            for v in g.nodes().filter(|v| !succ.contains(*v)) {
                targets.push(unchanged(v)?);
            }
        }
        OpInstance::MultiplyEdges { .. } => {
            for v in g.nodes() {
                targets.push(unchanged(v)?);
            }
        }
        OpInstance::SwapEdges { u, w, .. } => {
            let (fu, fw) = (f.get(u)?, f.get(w)?);
            if !fu.approx_eq(fw, tol) {
                return Ok(report(Verdict::PreconditionUnmet)
                    .with_note(format!("scores of {u} and {w} differ")));
            }
            if g.out_degree(u) != g.out_degree(w) {
                return Ok(report(Verdict::PreconditionUnmet)
                    .with_note(format!("out-degrees of {u} and {w} differ")));
            }
            for v in g.nodes() {
                targets.push(unchanged(v)?);
            }
        }
        OpInstance::Redirect { from, into } => {
            for v in g.nodes().filter(|v| *v != from && *v != into) {
                targets.push(unchanged(v)?);
            }
            let before = f.get(from)?.clone() + f.get(into)?.clone();
            targets.push((into.clone(), before.clone(), f2.get(into)?.clone(), before));
        }
    }
    Ok(match worst_mismatch(targets, tol) {
        None => report(Verdict::Holds),
        Some((node, before, after, expected)) => {
            let mut r = report(Verdict::Violated);
            r.witness = Some(Witness {
                graph: g.clone(),
                case: case.clone(),
                node,
                before,
                after,
                expected,
            });
            r
        }
    })
}

/// `c_F`, `a_F` and `d_F = a_F · c_F` read off the single-node and 1-arrow graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ProbeResult<S: Scalar = f64> {
    #[serde(serialize_with = "as_f64")]
    pub c: S,
    #[serde(serialize_with = "as_f64")]
    pub a: S,
    #[serde(serialize_with = "as_f64")]
    pub d: S,
}

impl<S: Scalar> ProbeResult<S> {
    /// `a ∈ [0, 1)`, as for any measure satisfying the axioms.
    pub fn is_pagerank_like(&self) -> bool {
        self.a >= S::zero() && self.a < S::one()
    }
}

pub fn probe_constants<S: Scalar>(measure: &dyn Measure<S>) -> Result<ProbeResult<S>> {
    let lone = MultiGraph::from_parts([("w", S::one())], [])?;
    let arrow = MultiGraph::from_parts([("w'", S::one()), ("w", S::zero())], [("w'", "w", 1)])?;
    let w = NodeId::new("w");
    let c = measure.scores(&lone)?.get(&w)?.clone();
    let sink = measure.scores(&arrow)?.get(&w)?.clone();
    let a = if c > S::zero() {
        sink / c.clone()
    } else {
        S::zero()
    };
    let d = a.clone() * c.clone();
    Ok(ProbeResult { c, a, d })
}

/// Comparison of a measure with `c · PR^a` for its probed constants.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub measure: String,
    pub probe: ProbeResult<f64>,
    /// `false` when the probed decay lies outside `[0, 1)`; no graph is compared then.
    pub pagerank_like: bool,
    pub max_deviation: f64,
    pub worst_graph: Option<usize>,
    pub checked: usize,
    pub skipped: usize,
    pub within_tolerance: bool,
}

pub fn check_uniqueness<S: Scalar>(
    measure: &dyn Measure<S>,
    corpus: &[MultiGraph<S>],
    tol: Tolerance,
) -> Result<UniquenessReport> {
    let probe = probe_constants(measure)?;
    let probe_f = ProbeResult {
        c: probe.c.to_f64(),
        a: probe.a.to_f64(),
        d: probe.d.to_f64(),
    };
    let mut out = UniquenessReport {
        measure: measure.label(),
        probe: probe_f,
        pagerank_like: probe.is_pagerank_like(),
        max_deviation: 0.0,
        worst_graph: None,
        checked: 0,
        skipped: 0,
        within_tolerance: true,
    };
    if !out.pagerank_like {
        out.max_deviation = f64::INFINITY;
        out.within_tolerance = false;
        return Ok(out);
    }
    let c = probe.c.clone();
    let a = probe.a.clone();
    for (i, g) in corpus.iter().enumerate() {
        let f = match scores_in_class(measure, g, ClassMode::Restricted)? {
            Some(f) => f,
            None => {
                out.skipped += 1;
                continue;
            }
        };
        let reference = crate::centrality::pagerank_direct(g, a.clone())?;
        out.checked += 1;
        for (v, x) in f.iter() {
            let y = c.clone() * reference.get(v)?.clone();
            let dev = (x.to_f64() - y.to_f64()).abs();
            if !x.approx_eq(&y, tol) {
                out.within_tolerance = false;
            }
            if dev > out.max_deviation {
                out.max_deviation = dev;
                out.worst_graph = Some(i);
            }
        }
    }
    Ok(out)
}

/// Checks locality (`g2` required) or the source-node law on `g`.
pub fn check_derived_property<S: Scalar>(
    measure: &dyn Measure<S>,
    which: AxiomId,
    g: &MultiGraph<S>,
    g2: Option<&MultiGraph<S>>,
    tol: Tolerance,
    mode: ClassMode,
) -> Result<AxiomReport<S>> {
    let label = measure.label();
    let report = |v: Verdict| AxiomReport::<S>::new(which, label.clone(), v);
    let violated = |graph: MultiGraph<S>, node: NodeId, before: S, after: S, expected: S| {
        let mut r = report(Verdict::Violated);
        r.witness = Some(Witness {
            graph,
            case: AxiomCase::Baseline(node.clone()),
            node,
            before,
            after,
            expected,
        });
        r
    };
    match which {
        AxiomId::Locality => {
            let other = g2.ok_or_else(|| Error::invalid("locality needs a second graph"))?;
            let union = g.disjoint_union(other)?;
            let (Some(f), Some(fu)) = (
                scores_in_class(measure, g, mode)?,
                scores_in_class(measure, &union, mode)?,
            ) else {
                return Ok(report(Verdict::SkippedOutOfClass));
            };
            let targets = g
                .nodes()
                .map(|v| {
                    let before = f.get(v)?.clone();
                    Ok((v.clone(), before.clone(), fu.get(v)?.clone(), before))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(match worst_mismatch(targets, tol) {
                None => report(Verdict::Holds),
                Some((v, b, a, e)) => violated(union, v, b, a, e),
            })
        }
        AxiomId::SourceNode => {
            let sources: BTreeSet<NodeId> = g
                .nodes()
                .filter(|v| !g.edges().any(|(_, dst, _)| dst == *v))
                .cloned()
                .collect();
            if sources.is_empty() {
                return Ok(report(Verdict::PreconditionUnmet).with_note("graph has no source"));
            }
            let c = probe_constants(measure)?.c;
            let Some(f) = scores_in_class(measure, g, mode)? else {
                return Ok(report(Verdict::SkippedOutOfClass));
            };
            let targets = sources
                .iter()
                .map(|v| {
                    let expected = c.clone() * g.weight(v)?.clone();
                    Ok((v.clone(), expected.clone(), f.get(v)?.clone(), expected))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(match worst_mismatch(targets, tol) {
                None => report(Verdict::Holds),
                Some((v, b, a, e)) => violated(g.clone(), v, b, a, e),
            })
        }
        other => Err(Error::invalid(format!("{other} is not a derived property"))),
    }
}
