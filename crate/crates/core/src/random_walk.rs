//! Random walk with decay.
//!
//! A walk starts at a node drawn proportionally to the weights. At each step it
//! stops with probability `1 - a`, or always at a sink, and otherwise follows an
//! out-edge chosen proportionally to multiplicity. Expected visit counts scaled
//! by `b(G)` equal PageRank.

use std::fmt;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::centrality::CentralityVector;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId, Topology};
use crate::scalar::Scalar;

/// Walks per independently seeded batch.
const BATCH: usize = 1 << 14;

/// Truncation threshold for the dynamic-programming evaluation.
const DP_CUTOFF: f64 = 1e-14;

/// A finite node sequence; its length is the number of steps taken.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WalkPath {
    pub nodes: Vec<NodeId>,
}

impl WalkPath {
    pub fn new(nodes: impl IntoIterator<Item = impl Into<NodeId>>) -> Self {
        Self {
            nodes: nodes.into_iter().map(Into::into).collect(),
        }
    }

    /// Parses `v1,v2,v3`.
    pub fn parse(s: &str) -> Result<Self> {
        let nodes: Vec<&str> = s.split(',').map(str::trim).collect();
        if nodes.iter().any(|v| v.is_empty()) {
            return Err(Error::invalid(format!("malformed path `{s}`")));
        }
        Ok(Self::new(nodes))
    }

    /// Number of steps `T`.
    pub fn steps(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }
}

impl fmt::Display for WalkPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_walk_inputs<S: Scalar>(g: &MultiGraph<S>, a: &S) -> Result<S> {
    if *a < S::zero() || *a >= S::one() {
        return Err(Error::invalid(format!("decay factor {a} out of range")));
    }
    let total = g.total_weight();
    if total.is_zero() {
        return Err(Error::invalid("random walk needs a positive total weight"));
    }
    Ok(total)
}

/// Probability that the walk is exactly `path`.
pub fn path_probability<S: Scalar>(g: &MultiGraph<S>, a: S, path: &WalkPath) -> Result<S> {
    let total = check_walk_inputs(g, &a)?;
    let Some(first) = path.nodes.first() else {
        return Err(Error::invalid("empty walk"));
    };
    for v in &path.nodes {
        g.require(v)?;
    }
    let mut p = g.weight(first)?.clone() / total;
    for pair in path.nodes.windows(2) {
        let m = g.multiplicity(&pair[0], &pair[1]);
        if m == 0 {
            return Ok(S::zero());
        }
        p = p * a.clone() * S::from_u64(m) / S::from_u64(g.out_degree(&pair[0]));
    }
    let last = path.nodes.last().unwrap();
    if !g.is_sink(last) {
        p = p * (S::one() - a);
    }
    Ok(p)
}

/// Precomputed sampling tables.
struct Walker {
    start: WeightedIndex<f64>,
    next: Vec<Option<(Vec<usize>, WeightedIndex<u64>)>>,
    a: f64,
}

impl Walker {
    fn new<S: Scalar>(g: &MultiGraph<S>, topo: &Topology, a: f64) -> Result<Self> {
        check_walk_inputs(g, &S::from_f64(a))?;
        let weights: Vec<f64> = g.weight_vec().iter().map(Scalar::to_f64).collect();
        let start = WeightedIndex::new(weights).map_err(|e| Error::invalid(e.to_string()))?;
        let next = topo
            .out
            .iter()
            .map(|row| {
                (!row.is_empty()).then(|| {
                    let targets = row.iter().map(|&(j, _)| j).collect();
                    let dist = WeightedIndex::new(row.iter().map(|&(_, m)| m))
                        .expect("positive multiplicities");
                    (targets, dist)
                })
            })
            .collect();
        Ok(Self { start, next, a })
    }

    /// Calls `visit` for every node of one sampled walk.
    fn walk<R: Rng>(&self, rng: &mut R, mut visit: impl FnMut(usize)) {
        let mut v = self.start.sample(rng);
        visit(v);
        while let Some((targets, dist)) = &self.next[v] {
            if !rng.gen_bool(self.a) {
                break;
            }
            v = targets[dist.sample(rng)];
            visit(v);
        }
    }
}

/// Samples one walk; the same seed always yields the same walk.
pub fn sample_walk<S: Scalar>(g: &MultiGraph<S>, a: f64, seed: u64) -> Result<WalkPath> {
    let topo = g.topology();
    let walker = Walker::new(g, &topo, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::new();
    walker.walk(&mut rng, |v| nodes.push(topo.ids[v].clone()));
    Ok(WalkPath { nodes })
}

/// Monte Carlo estimate of `b(G) · E[visits]` with its standard error.
#[derive(Debug, Clone, Serialize)]
pub struct VisitEstimate {
    pub mean: CentralityVector<f64>,
    pub stderr: CentralityVector<f64>,
    pub samples: usize,
}

/// Estimates PageRank as scaled expected visit counts over `samples` walks.
///
/// Walks are split into fixed-size batches, each driven by its own ChaCha8
/// stream derived from `seed`, so results do not depend on thread count.
pub fn expected_visits_mc<S: Scalar>(
    g: &MultiGraph<S>,
    a: f64,
    samples: usize,
    seed: u64,
) -> Result<VisitEstimate> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let topo = g.topology();
    let walker = Walker::new(g, &topo, a)?;
    let n = topo.len();
    let batches = samples.div_ceil(BATCH);
    let (sum, sumsq) = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let count = BATCH.min(samples - batch * BATCH);
            let mut sum = vec![0u64; n];
            let mut sumsq = vec![0u64; n];
            let mut visits = vec![0u64; n];
            let mut touched = Vec::new();
            for _ in 0..count {
                walker.walk(&mut rng, |v| {
                    if visits[v] == 0 {
                        touched.push(v);
                    }
                    visits[v] += 1;
                });
                for &v in &touched {
                    sum[v] += visits[v];
                    sumsq[v] += visits[v] * visits[v];
                    visits[v] = 0;
                }
                touched.clear();
            }
            (sum, sumsq)
        })
        .reduce(
            || (vec![0; n], vec![0; n]),
            |(mut s1, mut q1), (s2, q2)| {
                s1.iter_mut().zip(s2).for_each(|(x, y)| *x += y);
                q1.iter_mut().zip(q2).for_each(|(x, y)| *x += y);
                (s1, q1)
            },
        );
    let total = g.total_weight().to_f64();
    let ns = samples as f64;
    let mut mean = Vec::with_capacity(n);
    let mut stderr = Vec::with_capacity(n);
    for v in 0..n {
        let m = sum[v] as f64 / ns;
        let var = if samples > 1 {
            ((sumsq[v] as f64 - ns * m * m) / (ns - 1.0)).max(0.0)
        } else {
            0.0
        };
        mean.push(total * m);
        stderr.push(total * (var / ns).sqrt());
    }
    Ok(VisitEstimate {
        mean: CentralityVector::from_values(&topo.ids, mean),
        stderr: CentralityVector::from_values(&topo.ids, stderr),
        samples,
    })
}

/// Position distributions `P(w(t) = v)` for `t = 0, 1, …`, in node order.
pub fn position_distributions<S: Scalar>(
    g: &MultiGraph<S>,
    a: S,
    steps: usize,
) -> Result<Vec<Vec<S>>> {
    let total = check_walk_inputs(g, &a)?;
    let topo = g.topology();
    let mut p: Vec<S> = g
        .weight_vec()
        .into_iter()
        .map(|w| w / total.clone())
        .collect();
    let mut out = Vec::with_capacity(steps + 1);
    for _ in 0..=steps {
        let mut q = vec![S::zero(); topo.len()];
        for (u, row) in topo.out.iter().enumerate() {
            if p[u].is_zero() {
                continue;
            }
            let deg = S::from_u64(topo.out_deg[u]);
            for &(v, m) in row {
                q[v] = q[v].clone() + p[u].clone() * a.clone() * S::from_u64(m) / deg.clone();
            }
        }
        out.push(std::mem::replace(&mut p, q));
    }
    Ok(out)
}

/// Result of [`expected_visits_dp`].
#[derive(Debug, Clone)]
pub struct DpOutcome {
    pub scores: CentralityVector<f64>,
    pub steps: usize,
}

/// `b(G) · Σ_t P(w(t) = v)`, truncated once `a^T · n` falls below `1e-14`.
pub fn expected_visits_dp<S: Scalar>(g: &MultiGraph<S>, a: f64) -> Result<DpOutcome> {
    check_walk_inputs(g, &S::from_f64(a))?;
    let n = g.node_count() as f64;
    let mut steps = 0;
    let mut mass = n;
    while mass >= DP_CUTOFF && a > 0.0 {
        mass *= a;
        steps += 1;
    }
    let gf = g.map_weights(Scalar::to_f64);
    let dists = position_distributions(&gf, a, steps)?;
    let total = gf.total_weight();
    let sums = (0..g.node_count())
        .map(|v| total * dists.iter().map(|p| p[v]).sum::<f64>())
        .collect();
    let ids: Vec<NodeId> = g.nodes().cloned().collect();
    Ok(DpOutcome {
        scores: CentralityVector::from_values(&ids, sums),
        steps,
    })
}

/// Every walk with positive probability on an acyclic graph, with its probability.
pub fn enumerate_walks<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<Vec<(WalkPath, S)>> {
    check_walk_inputs(g, &a)?;
    if !g.is_acyclic() {
        return Err(Error::invalid("walk enumeration needs an acyclic graph"));
    }
    let mut out = Vec::new();
    let starts: Vec<NodeId> = g
        .weights()
        .filter(|(_, w)| !w.is_zero())
        .map(|(v, _)| v.clone())
        .collect();
    for s in starts {
        let mut stack = vec![vec![s]];
        while let Some(nodes) = stack.pop() {
            let last = nodes.last().unwrap().clone();
            let path = WalkPath {
                nodes: nodes.clone(),
            };
            let p = path_probability(g, a.clone(), &path)?;
            out.push((path, p));
            if a.is_zero() {
                continue;
            }
            for (x, _) in g.out_edges(&last) {
                let mut next = nodes.clone();
                next.push(x.clone());
                stack.push(next);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::pagerank_direct;
    use crate::scalar::{rational, Rational};

    fn arrow() -> MultiGraph<f64> {
        MultiGraph::from_parts([("u", 1.0), ("v", 0.0)], [("u", "v", 1)]).unwrap()
    }

    #[test]
    fn arrow_outcomes_sum_to_one() {
        let g = arrow().to_scalar::<Rational>();
        let a = rational(3, 10);
        let walks = enumerate_walks(&g, a.clone()).unwrap();
        let total = walks
            .iter()
            .fold(rational(0, 1), |acc, (_, p)| acc + p.clone());
        assert_eq!(total, rational(1, 1));
        let stop = path_probability(&g, a.clone(), &WalkPath::new(["u"])).unwrap();
        assert_eq!(stop, rational(7, 10));
        let missing = path_probability(&g, a, &WalkPath::new(["v", "u"])).unwrap();
        assert_eq!(missing, rational(0, 1));
    }

    #[test]
    fn zero_decay_walks_are_single_nodes() {
        let g = arrow();
        for seed in 0..50 {
            assert_eq!(sample_walk(&g, 0.0, seed).unwrap().nodes.len(), 1);
        }
        assert_eq!(
            sample_walk(&g, 0.5, 7).unwrap(),
            sample_walk(&g, 0.5, 7).unwrap()
        );
    }

    #[test]
    fn mc_is_deterministic_and_close() {
        let g = arrow();
        let e1 = expected_visits_mc(&g, 0.4, 40_000, 3).unwrap();
        let e2 = expected_visits_mc(&g, 0.4, 40_000, 3).unwrap();
        assert_eq!(e1.mean, e2.mean);
        let v = NodeId::new("v");
        let (m, s) = (e1.mean.get(&v).unwrap(), e1.stderr.get(&v).unwrap());
        assert!((m - 0.4).abs() <= 4.0 * s);
        assert_eq!(*e1.mean.get(&NodeId::new("u")).unwrap(), 1.0);
    }

    #[test]
    fn dp_matches_solver_and_mass_balance() {
        let g = MultiGraph::<f64>::from_parts(
            [("a", 1.0), ("b", 2.0), ("c", 0.5)],
            [("a", "b", 2), ("b", "a", 1), ("b", "c", 1), ("c", "c", 1)],
        )
        .unwrap();
        let dp = expected_visits_dp(&g, 0.7).unwrap();
        let pr = pagerank_direct(&g, 0.7).unwrap();
        assert!(dp.scores.max_deviation(&pr) < 1e-10);
        let dists = position_distributions(&g, 0.7, 5).unwrap();
        // no sinks here, so the mass still walking after t steps is a^t
        for (t, p) in dists.iter().enumerate() {
            let mass: f64 = p.iter().sum();
            assert!((mass - 0.7f64.powi(t as i32)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_weight_graph_is_rejected() {
        let g = MultiGraph::<f64>::from_parts([("u", 0.0)], []).unwrap();
        assert!(sample_walk(&g, 0.5, 1).is_err());
        assert!(WalkPath::parse("a,,b").is_err());
    }
}
