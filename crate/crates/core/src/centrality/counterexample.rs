//! PageRank variants that each break exactly one invariance axiom.

use super::{check_decay, pagerank_direct, CentralityVector};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::linalg;
use crate::scalar::Scalar;

/// `PR^{a(G)}` with `a(G) = 1 / (2 + b(G))`.
pub fn adaptive_decay<S: Scalar>(g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
    let two = S::one() + S::one();
    let a = S::one() / (two + g.total_weight());
    pagerank_direct(g, a)
}

/// PageRank, except that sinks score `2·PR_v - b(v)`.
pub fn sink_doubled<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    let pr = pagerank_direct(g, a)?;
    let two = S::one() + S::one();
    Ok(pr.map(|v, x| {
        if g.is_sink(v) {
            two.clone() * x.clone() - g.weight(v).expect("node of g").clone()
        } else {
            x.clone()
        }
    }))
}

/// `F_v = a · Σ_{(u,v)} F_u / (deg⁺_u + 1) + b(v)`.
pub fn damped_outdeg<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    check_decay(&a, false)?;
    let topo = g.topology();
    let mut m = linalg::identity::<S>(topo.len());
    for (u, row) in topo.out.iter().enumerate() {
        let den = S::from_u64(topo.out_deg[u] + 1);
        for &(v, k) in row {
            m[v][u] = m[v][u].clone() - a.clone() * S::from_u64(k) / den.clone();
        }
    }
    let x = linalg::solve(m, g.weight_vec(), "damped out-degree")?;
    Ok(CentralityVector::from_values(&topo.ids, x))
}

fn one_step<S: Scalar>(g: &MultiGraph<S>, weighted: bool) -> CentralityVector<S> {
    let topo = g.topology();
    let b = g.weight_vec();
    let mut x = b.clone();
    for (u, row) in topo.out.iter().enumerate() {
        let src = if weighted { b[u].clone() } else { S::one() };
        for &(v, k) in row {
            x[v] = x[v].clone() + src.clone() * S::from_u64(k) / S::from_u64(topo.out_deg[u]);
        }
    }
    CentralityVector::from_values(&topo.ids, x)
}

/// `F_v = Σ_{(u,v)} b(u) / deg⁺_u + b(v)`.
pub fn weighted_beta<S: Scalar>(g: &MultiGraph<S>) -> CentralityVector<S> {
    one_step(g, true)
}

/// `F_v = Σ_{(u,v)} 1 / deg⁺_u + b(v)`.
pub fn uniform_beta<S: Scalar>(g: &MultiGraph<S>) -> CentralityVector<S> {
    one_step(g, false)
}

/// `2 · PR^a`.
pub fn scaled_pagerank<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    let two = S::one() + S::one();
    Ok(pagerank_direct(g, a)?.map(|_, x| two.clone() * x.clone()))
}
