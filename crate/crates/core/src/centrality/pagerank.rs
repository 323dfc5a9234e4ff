use super::{check_decay, CentralityVector};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::linalg;
use crate::scalar::Scalar;

/// Solves `PR_v = a · Σ_{(u,v)} PR_u / deg⁺_u + b(v)` directly.
///
/// Sinks keep their score; nothing is redistributed from them.
pub fn pagerank_direct<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    check_decay(&a, false)?;
    let topo = g.topology();
    let n = topo.len();
    let mut m = linalg::identity::<S>(n);
    for (u, row) in topo.out.iter().enumerate() {
        let deg = S::from_u64(topo.out_deg[u]);
        for &(v, k) in row {
            let coef = a.clone() * S::from_u64(k) / deg.clone();
            m[v][u] = m[v][u].clone() - coef;
        }
    }
    let x = linalg::solve(m, g.weight_vec(), "pagerank")?;
    Ok(CentralityVector::from_values(&topo.ids, x))
}

/// Result of [`pagerank_power`].
#[derive(Debug, Clone)]
pub struct PowerOutcome<S: Scalar> {
    pub scores: CentralityVector<S>,
    pub iterations: usize,
    /// Bound on the 1-norm distance to the fixed point.
    pub error_bound: f64,
}

/// Fixed-point iteration of the PageRank equation starting from the weights.
///
/// Stops once the a-posteriori bound `a/(1-a) · ‖x_{k+1} - x_k‖₁` drops below `tol`.
pub fn pagerank_power<S: Scalar>(
    g: &MultiGraph<S>,
    a: S,
    tol: f64,
    max_iter: usize,
) -> Result<PowerOutcome<S>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    check_decay(&a, false)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let topo = g.topology();
    let b = g.weight_vec();
    let share: Vec<Vec<(usize, S)>> = topo
        .out
        .iter()
        .enumerate()
        .map(|(u, row)| {
            let deg = S::from_u64(topo.out_deg[u]);
            row.iter()
                .map(|&(v, k)| (v, a.clone() * S::from_u64(k) / deg.clone()))
                .collect()
        })
        .collect();
    let af = a.to_f64();
    let factor = if af == 0.0 { 0.0 } else { af / (1.0 - af) };
    let mut x = b.clone();
    let mut bound = f64::INFINITY;
    for it in 1..=max_iter {
        let mut y = b.clone();
        for (u, row) in share.iter().enumerate() {
            for (v, c) in row {
                y[*v] = y[*v].clone() + c.clone() * x[u].clone();
            }
        }
        let step: f64 = y
            .iter()
            .zip(&x)
            .map(|(p, q)| (p.clone() - q.clone()).abs().to_f64())
            .sum();
        x = y;
        bound = factor * step;
        if bound < tol {
            return Ok(PowerOutcome {
                scores: CentralityVector::from_values(&topo.ids, x),
                iterations: it,
                error_bound: bound,
            });
        }
    }
    Err(Error::NoConvergence {
        what: "pagerank power iteration",
        residual: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;
    use crate::scalar::{rational, Rational};

    #[test]
    fn one_arrow() {
        let g = MultiGraph::<Rational>::from_parts(
            [("u", rational(3, 1)), ("v", rational(0, 1))],
            [("u", "v", 1)],
        )
        .unwrap();
        let pr = pagerank_direct(&g, rational(9, 10)).unwrap();
        assert_eq!(*pr.get(&NodeId::new("u")).unwrap(), rational(3, 1));
        assert_eq!(*pr.get(&NodeId::new("v")).unwrap(), rational(27, 10));
    }

    #[test]
    fn k_arrow_power() {
        let g = MultiGraph::<f64>::from_parts(
            [("s", 2.0), ("a", 0.0), ("b", 0.0), ("c", 0.0)],
            [("s", "a", 1), ("s", "b", 1), ("s", "c", 1)],
        )
        .unwrap();
        let out = pagerank_power(&g, 0.6, 1e-12, 100).unwrap();
        for v in ["a", "b", "c"] {
            assert!((out.scores.get(&NodeId::new(v)).unwrap() - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_decay_takes_one_step() {
        let g = MultiGraph::<f64>::from_parts([("u", 1.0), ("v", 2.0)], [("u", "v", 1)]).unwrap();
        let out = pagerank_power(&g, 0.0, 1e-12, 10).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(
            out.scores.values().cloned().collect::<Vec<_>>(),
            vec![1.0, 2.0]
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            pagerank_direct(&MultiGraph::<f64>::new(), 0.5),
            Err(Error::EmptyGraph)
        );
        let g = MultiGraph::<f64>::from_parts([("u", 1.0)], []).unwrap();
        assert!(pagerank_direct(&g, 1.0).is_err());
    }
}
