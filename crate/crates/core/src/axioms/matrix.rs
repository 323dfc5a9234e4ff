use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_axiom, search_counterexample, witness_fixtures, AxiomId, AxiomReport, ClassMode,
    GenConfig, SearchOutcome,
};
use crate::centrality::{MeasureId, MeasureSpec};
use crate::error::Result;
use crate::scalar::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    Plus,
    /// Holds on the restricted class the measure is defined on.
    PlusStar,
    Minus,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Plus => "+",
            Mark::PlusStar => "+*",
            Mark::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CellEvidence {
    /// A fixed witness instance broke the axiom.
    Fixture { name: String },
    /// Random search; holds a counterexample iff the cell is a minus.
    Search(Box<SearchOutcome>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub measure: MeasureId,
    pub axiom: AxiomId,
    pub mark: Mark,
    pub evidence: CellEvidence,
    pub witness: Option<AxiomReport<f64>>,
}

#[derive(Debug, Clone)]
pub struct MatrixConfig {
    pub measures: Vec<MeasureSpec>,
    pub budget: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub gen: GenConfig,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        Self {
            measures: MeasureId::COMPARISON
                .into_iter()
                .map(MeasureSpec::default_for)
                .collect(),
            budget: 500,
            seed: 0,
            tol: Tolerance::default(),
            gen: GenConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SatMatrix {
    pub measures: Vec<MeasureSpec>,
    pub cells: Vec<Cell>,
}

fn evaluate_cell(spec: &MeasureSpec, axiom: AxiomId, cfg: &MatrixConfig) -> Result<Cell> {
    for fx in witness_fixtures().into_iter().filter(|f| f.axiom == axiom) {
        let report = check_axiom(
            spec,
            axiom,
            &fx.graph,
            &fx.case,
            cfg.tol,
            ClassMode::Restricted,
        )?;
        if report.is_violated() {
            return Ok(Cell {
                measure: spec.id,
                axiom,
                mark: Mark::Minus,
                evidence: CellEvidence::Fixture {
                    name: fx.name.to_string(),
                },
                witness: Some(report),
            });
        }
    }
    let mut outcome = search_counterexample(spec, axiom, &cfg.gen, cfg.budget, cfg.seed, cfg.tol)?;
    let witness = outcome.counterexample.take();
    let mark = match (&witness, spec.class.is_restricted()) {
        (Some(_), _) => Mark::Minus,
        (None, true) => Mark::PlusStar,
        (None, false) => Mark::Plus,
    };
    Ok(Cell {
        measure: spec.id,
        axiom,
        mark,
        evidence: CellEvidence::Search(Box::new(outcome)),
        witness,
    })
}

/// Fixtures first, then random search, for every (measure, axiom) pair.
pub fn satisfiability_matrix(cfg: &MatrixConfig) -> Result<SatMatrix> {
    let pairs: Vec<(MeasureSpec, AxiomId)> = cfg
        .measures
        .iter()
        .flat_map(|m| AxiomId::SIX.into_iter().map(move |a| (*m, a)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|(m, a)| evaluate_cell(m, *a, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SatMatrix {
        measures: cfg.measures.clone(),
        cells,
    })
}

/// Reference pattern for the ten comparison measures, axioms in [`AxiomId::SIX`] order.
pub fn expected_table() -> Vec<(MeasureId, [Mark; 6])> {
    use Mark::{Minus as M, Plus as P, PlusStar as S};
    vec![
        (MeasureId::Degree, [P, P, M, P, M, M]),
        (MeasureId::Eigenvector, [S, S, M, S, S, S]),
        (MeasureId::Katz, [S, S, M, S, S, S]),
        (MeasureId::Bonacich, [S, S, M, M, S, M]),
        (MeasureId::Beta, [P, P, P, P, M, M]),
        (MeasureId::KatzPrestige, [S, S, S, S, S, S]),
        (MeasureId::PageRank, [P, P, P, P, P, P]),
        (MeasureId::Closeness, [S, S, S, M, M, S]),
        (MeasureId::Decay, [P, P, P, M, M, M]),
        (MeasureId::Betweenness, [P, M, M, M, M, M]),
    ]
}

impl SatMatrix {
    pub fn cell(&self, measure: MeasureId, axiom: AxiomId) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.measure == measure && c.axiom == axiom)
    }

    /// Cells whose mark differs from [`expected_table`], as `(measure, axiom, got, want)`.
    pub fn mismatches(&self) -> Vec<(MeasureId, AxiomId, Option<Mark>, Mark)> {
        let mut out = Vec::new();
        for (m, row) in expected_table() {
            for (a, want) in AxiomId::SIX.into_iter().zip(row) {
                let got = self.cell(m, a).map(|c| c.mark);
                if got != Some(want) {
                    out.push((m, a, got, want));
                }
            }
        }
        out
    }

    /// Aligned text table, one row per measure.
    pub fn render(&self) -> String {
        let width = self
            .measures
            .iter()
            .map(|m| m.id.name().len())
            .max()
            .unwrap_or(7)
            .max(7);
        let mut out = format!("{:width$}", "measure");
        for a in AxiomId::SIX {
            let _ = write!(out, " {:>4}", a.short());
        }
        out.push('\n');
        for m in &self.measures {
            let _ = write!(out, "{:width$}", m.id.name());
            for a in AxiomId::SIX {
                let mark = self
                    .cell(m.id, a)
                    .map_or("?".to_string(), |c| c.mark.to_string());
                let _ = write!(out, " {mark:>4}");
            }
            out.push('\n');
        }
        out
    }
}
