use super::{check_decay, CentralityVector};
use crate::error::{Error, Result};
use crate::graph::{spectral_perron, GraphClass, MultiGraph, Topology};
use crate::linalg;
use crate::scalar::Scalar;

fn require_class<S: Scalar>(g: &MultiGraph<S>, class: GraphClass, measure: &str) -> Result<()> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if class.contains(g)? {
        Ok(())
    } else {
        Err(Error::ClassViolation {
            measure: measure.into(),
            class,
        })
    }
}

/// In-degree counted with multiplicity.
pub fn degree<S: Scalar>(g: &MultiGraph<S>) -> CentralityVector<S> {
    let topo = g.topology();
    let vals = topo
        .inc
        .iter()
        .map(|es| S::from_u64(es.iter().map(|&(_, m)| m).sum()))
        .collect();
    CentralityVector::from_values(&topo.ids, vals)
}

/// Dominant left eigenvector of the adjacency matrix, normalized to sum 1.
pub fn eigenvector<S: Scalar>(g: &MultiGraph<S>, tol: f64) -> Result<CentralityVector<S>> {
    require_class(g, GraphClass::StronglyConnected, "eigenvector")?;
    if S::EXACT {
        return Err(Error::InexactOnly("eigenvector centrality"));
    }
    let topo = g.topology();
    if topo.len() == 1 {
        return Ok(CentralityVector::from_values(&topo.ids, vec![S::one()]));
    }
    let rows: Vec<Vec<(usize, f64)>> = topo
        .out
        .iter()
        .map(|es| es.iter().map(|&(j, m)| (j, m as f64)).collect())
        .collect();
    let (_, x) = spectral_perron(&rows, tol)?;
    Ok(CentralityVector::from_values(
        &topo.ids,
        x.into_iter().map(S::from_f64).collect(),
    ))
}

/// `(I - a·Aᵀ) · x = rhs`.
fn katz_system<S: Scalar>(topo: &Topology, a: &S, rhs: Vec<S>) -> Result<Vec<S>> {
    let mut m = linalg::identity::<S>(topo.len());
    for (u, row) in topo.out.iter().enumerate() {
        for &(v, k) in row {
            m[v][u] = m[v][u].clone() - a.clone() * S::from_u64(k);
        }
    }
    linalg::solve(m, rhs, "katz")
}

/// `K_v = a · Σ_{(u,v)} K_u + b(v)`.
pub fn katz<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    check_decay(&a, true)?;
    require_class(g, GraphClass::KatzAdmissible(a.to_f64()), "katz")?;
    let topo = g.topology();
    let x = katz_system(&topo, &a, g.weight_vec())?;
    Ok(CentralityVector::from_values(&topo.ids, x))
}

/// `BK_v = Σ_{(u,v)} (a · BK_u + b(u))`.
pub fn bonacich<S: Scalar>(g: &MultiGraph<S>, a: S) -> Result<CentralityVector<S>> {
    check_decay(&a, true)?;
    require_class(g, GraphClass::KatzAdmissible(a.to_f64()), "bonacich")?;
    let topo = g.topology();
    let b = g.weight_vec();
    let mut rhs = vec![S::zero(); topo.len()];
    for (u, row) in topo.out.iter().enumerate() {
        for &(v, k) in row {
            rhs[v] = rhs[v].clone() + S::from_u64(k) * b[u].clone();
        }
    }
    let x = katz_system(&topo, &a, rhs)?;
    Ok(CentralityVector::from_values(&topo.ids, x))
}

/// `β_v = Σ_{(u,v)} 1/deg⁺_u`.
pub fn beta_measure<S: Scalar>(g: &MultiGraph<S>) -> CentralityVector<S> {
    let topo = g.topology();
    let mut x = vec![S::zero(); topo.len()];
    for (u, row) in topo.out.iter().enumerate() {
        for &(v, k) in row {
            x[v] = x[v].clone() + S::from_u64(k) / S::from_u64(topo.out_deg[u]);
        }
    }
    CentralityVector::from_values(&topo.ids, x)
}

/// Stationary solution of `KP_v = Σ_{(u,v)} KP_u / deg⁺_u`, normalized to sum 1.
pub fn katz_prestige<S: Scalar>(g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
    require_class(g, GraphClass::StronglyConnected, "katz-prestige")?;
    let topo = g.topology();
    let n = topo.len();
    let mut m = linalg::zeros::<S>(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -S::one();
    }
    for (u, row) in topo.out.iter().enumerate() {
        for &(v, k) in row {
            m[v][u] = m[v][u].clone() + S::from_u64(k) / S::from_u64(topo.out_deg[u]);
        }
    }
    m[n - 1] = vec![S::one(); n];
    let mut rhs = vec![S::zero(); n];
    rhs[n - 1] = S::one();
    let x = linalg::solve(m, rhs, "katz prestige")?;
    Ok(CentralityVector::from_values(&topo.ids, x))
}
