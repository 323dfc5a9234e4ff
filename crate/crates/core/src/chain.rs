//! Invariance chains: a graph, a measure and a sequence of operations.
//!
//! ```text
//! graph fig2_gf.graph        # or inline `node`/`edge` lines
//! measure pagerank 0.9
//! track v1
//! mode redirect-sum
//! redirect v7 v1
//! delete-node v3
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::axioms::{check_axiom, AxiomCase, AxiomReport, ClassMode, Verdict};
use crate::centrality::{Measure, MeasureId, MeasureSpec};
use crate::error::{Error, Result};
use crate::graph::format::{apply_statement, parse_error, tokens};
use crate::graph::{parse_graph, MultiGraph, NodeId};
use crate::scalar::{Scalar, Tolerance};
use crate::transforms::OpInstance;

/// What the tracked nodes are expected to score at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainMode {
    /// Tracked scores never change.
    #[default]
    Invariant,
    /// A tracked node absorbs the initial scores of every node redirected into it.
    RedirectSum,
}

#[derive(Debug, Clone)]
pub struct ChainScript {
    pub graph: MultiGraph,
    pub measure: MeasureSpec,
    pub tracked: Vec<NodeId>,
    pub mode: ChainMode,
    /// Operations with their script line numbers.
    pub ops: Vec<(usize, OpInstance)>,
}

impl ChainScript {
    /// Parses a script; `graph <path>` is resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut graph = MultiGraph::new();
        let mut measure = None;
        let mut tracked = Vec::new();
        let mut mode = ChainMode::default();
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks = tokens(raw);
            let Some(&(col, keyword)) = toks.first() else {
                continue;
            };
            let args: Vec<&str> = toks[1..].iter().map(|t| t.1).collect();
            let err = |msg: String| parse_error(line, col, msg);
            match keyword {
                "graph" => {
                    let [file] = args[..] else {
                        return Err(err("expected `graph <path>`".into()));
                    };
                    if !ops.is_empty() || !graph.is_empty() {
                        return Err(err("`graph` must precede nodes and operations".into()));
                    }
                    let path = base.map_or_else(|| Path::new(file).to_path_buf(), |b| b.join(file));
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
                    graph = parse_graph(&text)
                        .map_err(|e| err(format!("in {}: {e}", path.display())))?;
                }
                "measure" => {
                    let (id, alpha) = match args[..] {
                        [id] => (id, None),
                        [id, a] => (
                            id,
                            Some(
                                a.parse::<f64>()
                                    .map_err(|_| err(format!("invalid decay `{a}`")))?,
                            ),
                        ),
                        _ => return Err(err("expected `measure <id> [decay]`".into())),
                    };
                    let id: MeasureId = id.parse().map_err(|e: Error| err(e.to_string()))?;
                    let spec = match alpha {
                        Some(a) => MeasureSpec::with_decay(id, a),
                        None => Ok(MeasureSpec::default_for(id)),
                    };
                    measure = Some(spec.map_err(|e| err(e.to_string()))?);
                }
                "track" => {
                    if args.is_empty() {
                        return Err(err("expected `track <node>...`".into()));
                    }
                    tracked.extend(args.iter().map(|&v| NodeId::new(v)));
                }
                "mode" => {
                    mode = match args[..] {
                        ["invariant"] => ChainMode::Invariant,
                        ["redirect-sum"] => ChainMode::RedirectSum,
                        _ => return Err(err("expected `mode invariant|redirect-sum`".into())),
                    };
                }
                "node" | "edge" => {
                    if !ops.is_empty() {
                        return Err(err("graph statements must precede operations".into()));
                    }
                    apply_statement(&mut graph, line, &toks)?;
                }
                _ => {
                    let body = raw.split('#').next().unwrap_or("");
                    let op = OpInstance::parse(body).map_err(|e| err(e.to_string()))?;
                    ops.push((line, op));
                }
            }
        }
        for v in &tracked {
            if !graph.contains(v) {
                return Err(Error::invalid(format!(
                    "tracked node `{v}` is not in the graph"
                )));
            }
        }
        Ok(Self {
            graph,
            measure: measure.unwrap_or_else(|| MeasureSpec::default_for(MeasureId::PageRank)),
            tracked,
            mode,
            ops,
        })
    }

    /// Reads a script file, resolving `graph` paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct StepReport<S: Scalar> {
    pub step: usize,
    pub line: usize,
    pub op: OpInstance,
    pub report: AxiomReport<S>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrackedOutcome {
    pub node: NodeId,
    /// Nodes whose initial scores make up `expected`.
    pub absorbed: Vec<NodeId>,
    pub expected: f64,
    pub actual: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct ChainReport<S: Scalar> {
    pub measure: String,
    pub steps: Vec<StepReport<S>>,
    pub tracked: Vec<TrackedOutcome>,
}

impl<S: Scalar> ChainReport<S> {
    pub fn passed(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.report.verdict == Verdict::Holds)
            && self.tracked.iter().all(|t| t.holds)
    }
}

impl<S: Scalar> fmt::Display for ChainReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "step {} (line {}): {} -> {}",
                s.step, s.line, s.op, s.report
            )?;
        }
        for t in &self.tracked {
            let sum = t
                .absorbed
                .iter()
                .map(|v| v.as_str())
                .collect::<Vec<_>>()
                .join(" + ");
            writeln!(
                f,
                "{}: final {} expected {} ({sum}) -> {}",
                t.node,
                t.actual,
                t.expected,
                if t.holds { "holds" } else { "violated" }
            )?;
        }
        write!(
            f,
            "chain {}",
            if self.passed() { "holds" } else { "violated" }
        )
    }
}

/// Applies every operation, checking its axiom at each step and the tracked totals at the end.
pub fn run_chain<S: Scalar>(
    measure: &dyn Measure<S>,
    g0: &MultiGraph<S>,
    ops: &[(usize, OpInstance)],
    tracked: &[NodeId],
    mode: ChainMode,
    tol: Tolerance,
) -> Result<ChainReport<S>> {
    let initial = measure.scores(g0)?;
    let mut absorbed: BTreeMap<NodeId, Vec<NodeId>> =
        g0.nodes().map(|v| (v.clone(), vec![v.clone()])).collect();
    let mut g = g0.clone();
    let mut steps = Vec::with_capacity(ops.len());
    for (i, (line, op)) in ops.iter().enumerate() {
        let step = i + 1;
        let wrap = |e: Error| Error::Step {
            step,
            op: op.to_string(),
            error: Box::new(e),
        };
        let next = op.apply(&g).map_err(wrap)?;
        let case = AxiomCase::Invariance(op.clone());
        let report =
            check_axiom(measure, case.axiom(), &g, &case, tol, ClassMode::Strict).map_err(wrap)?;
        match op {
            OpInstance::Redirect { from, into } => {
                let moved = absorbed.remove(from).unwrap_or_default();
                absorbed.entry(into.clone()).or_default().extend(moved);
            }
            OpInstance::DeleteNode { node } => {
                absorbed.remove(node);
            }
            _ => {}
        }
        steps.push(StepReport {
            step,
            line: *line,
            op: op.clone(),
            report,
        });
        g = next;
    }
    let last = measure.scores(&g)?;
    let mut outcomes = Vec::with_capacity(tracked.len());
    for v in tracked {
        let actual = last.get(v).map_err(|_| {
            Error::invalid(format!("tracked node `{v}` does not survive the chain"))
        })?;
        let sources = match mode {
            ChainMode::Invariant => vec![v.clone()],
            ChainMode::RedirectSum => absorbed.get(v).cloned().unwrap_or_default(),
        };
        let mut expected = S::zero();
        for u in &sources {
            expected = expected + initial.get(u)?.clone();
        }
        outcomes.push(TrackedOutcome {
            node: v.clone(),
            absorbed: sources,
            expected: expected.to_f64(),
            actual: actual.to_f64(),
            holds: actual.approx_eq(&expected, tol),
        });
    }
    Ok(ChainReport {
        measure: measure.label(),
        steps,
        tracked: outcomes,
    })
}

impl ChainScript {
    pub fn run(&self, tol: Tolerance) -> Result<ChainReport<f64>> {
        run_chain(
            &self.measure,
            &self.graph,
            &self.ops,
            &self.tracked,
            self.mode,
            tol,
        )
    }

    /// Runs the chain in exact rational arithmetic.
    pub fn run_exact(&self) -> Result<ChainReport<crate::Rational>> {
        let g = self.graph.to_scalar();
        run_chain(
            &self.measure,
            &g,
            &self.ops,
            &self.tracked,
            self.mode,
            Tolerance::new(0.0, 0.0),
        )
    }
}
