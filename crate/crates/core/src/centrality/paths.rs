use super::{check_decay, CentralityVector};
use crate::error::{Error, Result};
use crate::graph::{GraphClass, MultiGraph};
use crate::scalar::Scalar;

/// `C_v = 1 / Σ_{u≠v} dist(u,v)`.
pub fn closeness<S: Scalar>(g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.node_count() < 2 {
        return Err(Error::invalid("closeness needs at least two nodes"));
    }
    if !g.is_strongly_connected()? {
        return Err(Error::ClassViolation {
            measure: "closeness".into(),
            class: GraphClass::StronglyConnected,
        });
    }
    let topo = g.topology();
    let n = topo.len();
    let mut total = vec![0u64; n];
    for u in 0..n {
        for (v, d) in topo.distances_from(u).into_iter().enumerate() {
            if v != u {
                total[v] += d.expect("strongly connected") as u64;
            }
        }
    }
    let vals = total
        .into_iter()
        .map(|t| S::one() / S::from_u64(t))
        .collect();
    Ok(CentralityVector::from_values(&topo.ids, vals))
}

/// `Y_v = Σ_{u≠v} a^dist(u,v)`, unreachable pairs contributing nothing.
pub fn decay_centrality<S: Scalar>(g: &MultiGraph<S>, a: S) -> CentralityVector<S> {
    debug_assert!(check_decay(&a, true).is_ok());
    let topo = g.topology();
    let n = topo.len();
    let mut y = vec![S::zero(); n];
    for u in 0..n {
        for (v, d) in topo.distances_from(u).into_iter().enumerate() {
            if let (true, Some(d)) = (v != u, d) {
                y[v] = y[v].clone() + a.powu(d);
            }
        }
    }
    CentralityVector::from_values(&topo.ids, y)
}

/// `B_v = Σ_{s≠v≠t, σ_st>0} σ_st(v) / σ_st`, parallel edges counted as distinct paths.
pub fn betweenness<S: Scalar>(g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
    let topo = g.topology();
    let n = topo.len();
    let mut score = vec![S::zero(); n];
    for s in 0..n {
        let (dist, sigma) = topo.path_counts(s, false)?;
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v].is_some()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
        let mut delta = vec![S::zero(); n];
        for &v in &order {
            let dv = dist[v].unwrap();
            let mut acc = S::zero();
            for &(w, m) in &topo.out[v] {
                if dist[w] == Some(dv + 1) {
                    let num = sigma[v].checked_mul(m as u128).ok_or(Error::Overflow)?;
                    let frac = S::from_u128(num) / S::from_u128(sigma[w]);
                    acc = acc + frac * (S::one() + delta[w].clone());
                }
            }
            delta[v] = acc;
            if v != s {
                score[v] = score[v].clone() + delta[v].clone();
            }
        }
    }
    Ok(CentralityVector::from_values(&topo.ids, score))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;
    use crate::scalar::{rational, Rational};

    fn id(s: &str) -> NodeId {
        NodeId::new(s)
    }

    fn doubled_triangle() -> MultiGraph<Rational> {
        let one = || rational(1, 1);
        MultiGraph::from_parts(
            [("u", one()), ("v", one()), ("w", one())],
            [("u", "v", 2), ("v", "w", 2), ("w", "u", 2)],
        )
        .unwrap()
    }

    #[test]
    fn triangle_values() {
        let g = doubled_triangle();
        assert_eq!(
            *closeness(&g).unwrap().get(&id("u")).unwrap(),
            rational(1, 3)
        );
        let a = rational(1, 2);
        assert_eq!(
            *decay_centrality(&g, a.clone()).get(&id("u")).unwrap(),
            a.clone() + a.powu(2)
        );
        assert_eq!(
            *betweenness(&g).unwrap().get(&id("u")).unwrap(),
            rational(1, 1)
        );
    }

    #[test]
    fn diamond_betweenness() {
        let z = || rational(0, 1);
        let mut g = MultiGraph::<Rational>::from_parts(
            [("u", z()), ("v", z()), ("v'", z()), ("w", z())],
            [("u", "v", 1), ("u", "v'", 1), ("v", "w", 1), ("v'", "w", 1)],
        )
        .unwrap();
        assert_eq!(
            *betweenness(&g).unwrap().get(&id("v")).unwrap(),
            rational(1, 2)
        );
        g.add_edge("v", "w", 1).unwrap();
        assert_eq!(
            *betweenness(&g).unwrap().get(&id("v")).unwrap(),
            rational(2, 3)
        );
    }

    #[test]
    fn closeness_domain() {
        let g = MultiGraph::<f64>::from_parts([("v", 1.0)], [("v", "v", 1)]).unwrap();
        assert!(matches!(closeness(&g), Err(Error::InvalidArgument(_))));
        let g = MultiGraph::<f64>::from_parts([("u", 1.0), ("v", 1.0)], [("u", "v", 1)]).unwrap();
        assert!(matches!(closeness(&g), Err(Error::ClassViolation { .. })));
    }
}
