use super::{MultiGraph, Topology};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-12;

const MAX_ITER: usize = 10_000;

impl<S: Scalar> MultiGraph<S> {
    /// Dominant eigenvalue of the multiplicity-weighted adjacency matrix.
    pub fn spectral_radius(&self, tol: f64) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::invalid("spectral tolerance must be positive"));
        }
        let topo = self.topology();
        let mut radius: f64 = 0.0;
        for comp in topo.components() {
            radius = radius.max(component_radius(&topo, &comp, tol)?);
        }
        Ok(radius)
    }
}

fn component_radius(topo: &Topology, comp: &[usize], tol: f64) -> Result<f64> {
    if let [v] = comp {
        let loops = topo.out[*v]
            .iter()
            .find(|&&(j, _)| j == *v)
            .map_or(0, |&(_, m)| m);
        return Ok(loops as f64);
    }
    let local = |i: usize| comp.binary_search(&i).ok();
    let out: Vec<Vec<(usize, f64)>> = comp
        .iter()
        .map(|&i| {
            topo.out[i]
                .iter()
                .filter_map(|&(j, m)| local(j).map(|k| (k, m as f64)))
                .collect()
        })
        .collect();
    let (lambda, _) = perron(&out, tol)?;
    Ok(lambda)
}

/// Perron root and positive eigenvector (sum 1) of an irreducible nonnegative
/// matrix given row-wise as `rows[i] = [(j, m_ij)]`, acting as `y_j = Σ_i x_i m_ij`.
pub(crate) fn perron(rows: &[Vec<(usize, f64)>], tol: f64) -> Result<(f64, Vec<f64>)> {
    let n = rows.len();
    // Iterate with A + I: primitive whenever A is irreducible.
    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let mut y = x.clone();
        for (i, row) in rows.iter().enumerate() {
            for &(j, m) in row {
                y[j] += x[i] * m;
            }
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let sum: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= sum);
        let step: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        residual = hi - lo;
        if residual <= tol * hi.max(1.0) && step <= tol {
            return Ok(((hi + lo) / 2.0 - 1.0, x));
        }
    }
    Err(Error::NoConvergence {
        what: "spectral radius",
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radius(edges: &[(&'static str, &'static str, u64)]) -> f64 {
        let mut g = MultiGraph::<f64>::new();
        for &(u, v, m) in edges {
            for x in [u, v] {
                if !g.contains(&x.into()) {
                    g.add_node(x, 1.0).unwrap();
                }
            }
            g.add_edge(u, v, m).unwrap();
        }
        g.spectral_radius(1e-12).unwrap()
    }

    #[test]
    fn small_cycles() {
        assert!((radius(&[("u", "v", 1), ("v", "u", 1)]) - 1.0).abs() < 1e-9);
        assert!((radius(&[("u", "v", 4), ("v", "u", 1)]) - 2.0).abs() < 1e-9);
        assert_eq!(radius(&[("u", "u", 3)]), 3.0);
        assert_eq!(radius(&[("u", "v", 1), ("v", "w", 2)]), 0.0);
    }

    #[test]
    fn union_takes_maximum() {
        let r = radius(&[("a", "b", 1), ("b", "a", 1), ("c", "d", 1), ("d", "c", 9)]);
        assert!((r - 3.0).abs() < 1e-9);
    }

    #[test]
    fn periodic_component_converges() {
        let r = radius(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]);
        assert!((r - 1.0).abs() < 1e-9);
    }
}
