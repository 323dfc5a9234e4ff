use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use prax::axioms::{
    check_axiom, instances_on, probe_constants, satisfiability_matrix, search_counterexample,
    AxiomId, AxiomReport, ClassMode, GenConfig, MatrixConfig, Verdict,
};
use prax::centrality::Measure;
use prax::chain::ChainScript;
use prax::graph::{format_graph, parse_graph_as};
use prax::random_walk::{expected_visits_mc, path_probability, WalkPath};
use prax::{
    CentralityVector, GraphClass, MeasureId, MeasureSpec, MultiGraph, Rational, Scalar, Tolerance,
};

mod display;

/// Writes to stdout; a closed pipe ends the process quietly.
macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if write!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(141);
        }
    }};
}

macro_rules! out {
    ($($arg:tt)*) => {{
        out_raw!($($arg)*);
        out_raw!("\n");
    }};
}

use display::sig;

#[derive(Parser)]
#[command(
    name = "prax",
    version,
    about = "PageRank, comparison centralities and invariance axioms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every node of a graph.
    Centrality {
        graph: PathBuf,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Use exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the six axioms on a graph or on random instances.
    Axioms {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        graph: Option<PathBuf>,
        /// Search random instances instead of a given graph.
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Only check these axioms.
        #[arg(long = "axiom", value_name = "AXIOM")]
        axioms: Vec<AxiomId>,
        /// Graph class the axioms quantify over (defaults to the measure's own).
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        /// Instances per axiom.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, env = "PRAX_SEED", default_value_t = 0)]
        seed: u64,
        /// Print every report, not only violations.
        #[arg(long)]
        verbose: bool,
    },
    /// Reproduce the satisfiability matrix of the ten comparison measures.
    Matrix {
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, env = "PRAX_SEED", default_value_t = 0)]
        seed: u64,
        /// One JSON record per cell.
        #[arg(long)]
        json: bool,
        /// Write each witness graph into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Walk probabilities and Monte Carlo visit estimates.
    Walk {
        graph: PathBuf,
        #[arg(long)]
        alpha: String,
        /// Comma-separated node sequence.
        #[arg(long, conflicts_with = "mc", required_unless_present = "mc")]
        path: Option<String>,
        /// Number of sampled walks.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, env = "PRAX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exact: bool,
    },
    /// Read off the scaling constant and decay of a measure.
    Probe {
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        exact: bool,
    },
    /// Run an invariance chain script.
    Chain {
        script: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long, default_value = "pagerank")]
    measure: MeasureId,
    /// Decay factor; measures that use one fall back to their default.
    #[arg(long)]
    alpha: Option<f64>,
}

impl MeasureArgs {
    fn spec(&self) -> Result<MeasureSpec> {
        let decay = self.alpha.or(self.measure.default_decay());
        if self.alpha.is_some() && !self.measure.uses_decay() {
            bail!("{} takes no decay factor", self.measure);
        }
        Ok(MeasureSpec::new(self.measure, decay)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    StronglyConnected,
    KatzAdmissible,
    Acyclic,
}

impl ClassArg {
    fn resolve(self, spec: &MeasureSpec) -> GraphClass {
        match self {
            ClassArg::All => GraphClass::All,
            ClassArg::StronglyConnected => GraphClass::StronglyConnected,
            ClassArg::KatzAdmissible => GraphClass::KatzAdmissible(spec.decay.unwrap_or(0.85)),
            ClassArg::Acyclic => GraphClass::Acyclic,
        }
    }
}

fn read_graph<S: Scalar>(path: &Path) -> Result<MultiGraph<S>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph_as(&text).with_context(|| format!("{}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested check held.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Centrality {
            graph,
            measure,
            exact,
            json,
        } => {
            let spec = measure.spec()?;
            if exact {
                let scores = spec.scores(&read_graph::<Rational>(&graph)?)?;
                print_scores(&scores, json, true);
            } else {
                let scores = spec.scores(&read_graph::<f64>(&graph)?)?;
                print_scores(&scores, json, false);
            }
            Ok(true)
        }
        Command::Axioms {
            graph,
            random,
            measure,
            axioms,
            class,
            budget,
            seed,
            verbose,
        } => {
            let mut spec = measure.spec()?;
            if let Some(c) = class {
                spec.class = c.resolve(&spec);
            }
            let axioms = if axioms.is_empty() {
                AxiomId::SIX.to_vec()
            } else {
                axioms
            };
            if random {
                axioms_random(&spec, &axioms, budget, seed)
            } else {
                let g = read_graph::<f64>(graph.as_deref().expect("clap requires a graph"))?;
                axioms_on_graph(&spec, &g, &axioms, budget, verbose)
            }
        }
        Command::Matrix {
            budget,
            seed,
            json,
            witness_dir,
        } => matrix(budget, seed, json, witness_dir.as_deref()),
        Command::Walk {
            graph,
            alpha,
            path,
            mc,
            seed,
            exact,
        } => match (path, mc) {
            (Some(path), _) => {
                let path = WalkPath::parse(&path)?;
                if exact {
                    walk_path::<Rational>(&graph, &alpha, &path, true)
                } else {
                    walk_path::<f64>(&graph, &alpha, &path, false)
                }
            }
            (None, Some(samples)) => walk_mc(&graph, &alpha, samples, seed),
            (None, None) => unreachable!("clap requires --path or --mc"),
        },
        Command::Probe { measure, exact } => {
            let spec = measure.spec()?;
            if exact {
                let p = probe_constants::<Rational>(&spec)?;
                out!("c = {}\na = {}\nd = {}", p.c, p.a, p.d);
                Ok(true)
            } else {
                let p = probe_constants::<f64>(&spec)?;
                out!("c = {}\na = {}\nd = {}", sig(p.c), sig(p.a), sig(p.d));
                Ok(true)
            }
        }
        Command::Chain {
            script,
            exact,
            json,
        } => {
            let script = ChainScript::load(&script)?;
            if exact {
                report_chain(script.run_exact()?, json)
            } else {
                report_chain(script.run(Tolerance::default())?, json)
            }
        }
    }
}

fn print_scores<S: Scalar>(scores: &CentralityVector<S>, json: bool, exact: bool) {
    if json {
        let map: serde_json::Map<String, serde_json::Value> = scores
            .iter()
            .map(|(v, x)| {
                let value = if exact {
                    json!(x.to_string())
                } else {
                    json!(x.to_f64())
                };
                (v.to_string(), value)
            })
            .collect();
        out!("{}", serde_json::Value::Object(map));
        return;
    }
    let width = scores
        .iter()
        .map(|(v, _)| v.as_str().len())
        .max()
        .unwrap_or(4)
        .max(4);
    out!("{:width$}  score", "node");
    for (v, x) in scores.iter() {
        if exact {
            out!("{:width$}  {}  ({})", v.as_str(), x, sig(x.to_f64()));
        } else {
            out!("{:width$}  {}", v.as_str(), sig(x.to_f64()));
        }
    }
}

fn axioms_on_graph(
    spec: &MeasureSpec,
    g: &MultiGraph,
    axioms: &[AxiomId],
    budget: usize,
    verbose: bool,
) -> Result<bool> {
    let tol = Tolerance::default();
    let mut ok = true;
    for &axiom in axioms {
        let cases = instances_on(g, axiom);
        let mut tally = [0usize; 4];
        for case in cases.iter().take(budget) {
            let report: AxiomReport<f64> =
                check_axiom(spec, axiom, g, case, tol, ClassMode::Restricted)?;
            tally[verdict_index(report.verdict)] += 1;
            if report.is_violated() {
                ok = false;
            }
            if verbose || report.is_violated() {
                out!("{report}");
            }
        }
        out!(
            "{}: {} instances, {} hold, {} violated, {} skipped, {} precondition unmet",
            axiom,
            cases.len().min(budget),
            tally[0],
            tally[1],
            tally[2],
            tally[3]
        );
    }
    Ok(ok)
}

fn verdict_index(v: Verdict) -> usize {
    match v {
        Verdict::Holds => 0,
        Verdict::Violated => 1,
        Verdict::SkippedOutOfClass => 2,
        Verdict::PreconditionUnmet => 3,
    }
}

fn axioms_random(spec: &MeasureSpec, axioms: &[AxiomId], budget: usize, seed: u64) -> Result<bool> {
    let mut ok = true;
    for &axiom in axioms {
        let out = search_counterexample(
            spec,
            axiom,
            &GenConfig::default(),
            budget,
            seed,
            Tolerance::default(),
        )?;
        match &out.counterexample {
            Some(report) => {
                ok = false;
                out!("{report}");
                if let Some(w) = &report.witness {
                    out_raw!("{}", indent(&format_graph(&w.graph)));
                }
            }
            None => out!(
                "{}: no violation in {} instances ({} hold, {} skipped, {} precondition unmet, {} numerical failures)",
                axiom, out.tried, out.holds, out.skipped, out.precondition_unmet, out.errors
            ),
        }
    }
    Ok(ok)
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

fn matrix(budget: usize, seed: u64, json: bool, witness_dir: Option<&Path>) -> Result<bool> {
    let cfg = MatrixConfig {
        budget,
        seed,
        ..MatrixConfig::default()
    };
    let m = satisfiability_matrix(&cfg)?;
    if let Some(dir) = witness_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let mut records = Vec::with_capacity(m.cells.len());
    for cell in &m.cells {
        let mut file = None;
        if let (Some(dir), Some(w)) = (
            witness_dir,
            cell.witness.as_ref().and_then(|r| r.witness.as_ref()),
        ) {
            let path = dir.join(format!("{}-{}.graph", cell.measure, cell.axiom));
            let body = format!(
                "# {} violates {} under `{}` at {}\n{}",
                cell.measure,
                cell.axiom,
                w.case,
                w.node,
                format_graph(&w.graph)
            );
            fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
            file = Some(path.display().to_string());
        }
        records.push(json!({
            "measure": cell.measure.name(),
            "axiom": cell.axiom.name(),
            "verdict": cell.mark,
            "witness": file,
            "evidence": cell.evidence,
        }));
    }
    let mismatches = m.mismatches();
    if json {
        out!("{}", serde_json::to_string_pretty(&records)?);
    } else {
        out_raw!("{}", m.render());
        for (measure, axiom, got, want) in &mismatches {
            let got = got.map_or("missing".to_string(), |g| g.to_string());
            out!("mismatch: {measure} / {axiom}: got {got}, expected {want}");
        }
    }
    Ok(mismatches.is_empty())
}

fn walk_path<S: Scalar>(graph: &Path, alpha: &str, path: &WalkPath, exact: bool) -> Result<bool> {
    let a = S::parse_decimal(alpha).with_context(|| format!("invalid decay `{alpha}`"))?;
    let g = read_graph::<S>(graph)?;
    let p = path_probability(&g, a, path)?;
    if exact {
        out!("{p}  ({})", sig(p.to_f64()));
    } else {
        out!("{}", sig(p.to_f64()));
    }
    Ok(true)
}

fn walk_mc(graph: &Path, alpha: &str, samples: usize, seed: u64) -> Result<bool> {
    let a: f64 = alpha
        .parse()
        .with_context(|| format!("invalid decay `{alpha}`"))?;
    let g = read_graph::<f64>(graph)?;
    let est = expected_visits_mc(&g, a, samples, seed)?;
    let exact = prax::centrality::pagerank_direct(&g, a)?;
    let width = exact
        .iter()
        .map(|(v, _)| v.as_str().len())
        .max()
        .unwrap_or(4)
        .max(4);
    out!(
        "{:width$}  {:>12}  {:>12}  {:>12}  {:>8}",
        "node",
        "mc",
        "stderr",
        "pagerank",
        "z"
    );
    let mut ok = true;
    for (v, x) in exact.iter() {
        let m = *est.mean.get(v)?;
        let se = *est.stderr.get(v)?;
        let z = if se > 0.0 {
            (m - x) / se
        } else if m == *x {
            0.0
        } else {
            f64::INFINITY
        };
        ok &= z.abs() <= 4.0;
        out!(
            "{:width$}  {:>12}  {:>12}  {:>12}  {:>8.3}",
            v.as_str(),
            sig(m),
            sig(se),
            sig(*x),
            z
        );
    }
    Ok(ok)
}

fn report_chain<S: Scalar>(report: prax::chain::ChainReport<S>, json: bool) -> Result<bool> {
    if json {
        out!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        out!("{report}");
    }
    Ok(report.passed())
}
