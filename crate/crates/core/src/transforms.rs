//! The five graph operations behind the invariance axioms.
//!
//! Every operation checks its structural precondition and returns a fresh graph;
//! the input is never modified.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::scalar::Scalar;

/// One concrete graph operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum OpInstance {
    DeleteNode {
        node: NodeId,
    },
    DeleteEdge {
        src: NodeId,
        dst: NodeId,
    },
    /// Adds `k` extra copies of every outgoing edge of `node`.
    MultiplyEdges {
        node: NodeId,
        k: u64,
    },
    /// Replaces `(u,u')` and `(w,w')` with `(u,w')` and `(w,u')`.
    SwapEdges {
        u: NodeId,
        u2: NodeId,
        w: NodeId,
        w2: NodeId,
    },
    /// Merges `from` into its out-twin `into`.
    Redirect {
        from: NodeId,
        into: NodeId,
    },
}

impl OpInstance {
    pub fn delete_node(node: impl Into<NodeId>) -> Self {
        OpInstance::DeleteNode { node: node.into() }
    }

    pub fn delete_edge(src: impl Into<NodeId>, dst: impl Into<NodeId>) -> Self {
        OpInstance::DeleteEdge {
            src: src.into(),
            dst: dst.into(),
        }
    }

    pub fn multiply(node: impl Into<NodeId>, k: u64) -> Self {
        OpInstance::MultiplyEdges {
            node: node.into(),
            k,
        }
    }

    pub fn swap(
        u: impl Into<NodeId>,
        u2: impl Into<NodeId>,
        w: impl Into<NodeId>,
        w2: impl Into<NodeId>,
    ) -> Self {
        OpInstance::SwapEdges {
            u: u.into(),
            u2: u2.into(),
            w: w.into(),
            w2: w2.into(),
        }
    }

    pub fn redirect(from: impl Into<NodeId>, into: impl Into<NodeId>) -> Self {
        OpInstance::Redirect {
            from: from.into(),
            into: into.into(),
        }
    }

    pub fn apply<S: Scalar>(&self, g: &MultiGraph<S>) -> Result<MultiGraph<S>> {
        match self {
            OpInstance::DeleteNode { node } => delete_node(g, node),
            OpInstance::DeleteEdge { src, dst } => delete_edge(g, src, dst),
            OpInstance::MultiplyEdges { node, k } => multiply_edges(g, node, *k),
            OpInstance::SwapEdges { u, u2, w, w2 } => swap_edges(g, u, u2, w, w2),
            OpInstance::Redirect { from, into } => redirect(g, from, into),
        }
    }

    /// Nodes named by the operation.
    pub fn nodes(&self) -> Vec<&NodeId> {
        match self {
            OpInstance::DeleteNode { node } | OpInstance::MultiplyEdges { node, .. } => vec![node],
            OpInstance::DeleteEdge { src, dst } => vec![src, dst],
            OpInstance::SwapEdges { u, u2, w, w2 } => vec![u, u2, w, w2],
            OpInstance::Redirect { from, into } => vec![from, into],
        }
    }

    /// Parses one script line such as `swap v5 v2 v6 v5`.
    pub fn parse(line: &str) -> Result<Self> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let arity = |n: usize, usage: &str| {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                Err(Error::invalid(format!("expected `{usage}`")))
            }
        };
        match toks.first().copied() {
            Some("delete-node") => {
                arity(1, "delete-node <u>")?;
                Ok(Self::delete_node(toks[1]))
            }
            Some("delete-edge") => {
                arity(2, "delete-edge <u> <w>")?;
                Ok(Self::delete_edge(toks[1], toks[2]))
            }
            Some("multiply") => {
                arity(2, "multiply <u> <k>")?;
                let k = toks[2]
                    .parse()
                    .map_err(|_| Error::invalid(format!("invalid copy count `{}`", toks[2])))?;
                Ok(Self::multiply(toks[1], k))
            }
            Some("swap") => {
                arity(4, "swap <u> <u'> <w> <w'>")?;
                Ok(Self::swap(toks[1], toks[2], toks[3], toks[4]))
            }
            Some("redirect") => {
                arity(2, "redirect <u> <w>")?;
                Ok(Self::redirect(toks[1], toks[2]))
            }
            Some(other) => Err(Error::invalid(format!("unknown operation `{other}`"))),
            None => Err(Error::invalid("empty operation")),
        }
    }
}

impl fmt::Display for OpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpInstance::DeleteNode { node } => write!(f, "delete-node {node}"),
            OpInstance::DeleteEdge { src, dst } => write!(f, "delete-edge {src} {dst}"),
            OpInstance::MultiplyEdges { node, k } => write!(f, "multiply {node} {k}"),
            OpInstance::SwapEdges { u, u2, w, w2 } => write!(f, "swap {u} {u2} {w} {w2}"),
            OpInstance::Redirect { from, into } => write!(f, "redirect {from} {into}"),
        }
    }
}

/// Removes an isolated node.
pub fn delete_node<S: Scalar>(g: &MultiGraph<S>, u: &NodeId) -> Result<MultiGraph<S>> {
    g.require(u)?;
    let incident: Vec<String> = g
        .edges()
        .filter(|(a, b, _)| *a == u || *b == u)
        .map(|(a, b, m)| format!("({a},{b})x{m}"))
        .collect();
    if !incident.is_empty() {
        return Err(Error::precondition(
            format!("delete-node {u}"),
            format!("`{u}` is not isolated: {}", incident.join(", ")),
        ));
    }
    let mut out = g.clone();
    out.remove_node_and_edges(u);
    Ok(out)
}

/// Removes one copy of `(u, w)`.
pub fn delete_edge<S: Scalar>(g: &MultiGraph<S>, u: &NodeId, w: &NodeId) -> Result<MultiGraph<S>> {
    g.require(u)?;
    g.require(w)?;
    let m = g.multiplicity(u, w);
    if m == 0 {
        return Err(Error::precondition(
            format!("delete-edge {u} {w}"),
            format!("no edge ({u},{w})"),
        ));
    }
    let mut out = g.clone();
    out.set_multiplicity(u, w, m - 1);
    Ok(out)
}

/// Adds `k` copies of the outgoing edges of `u`.
pub fn multiply_edges<S: Scalar>(g: &MultiGraph<S>, u: &NodeId, k: u64) -> Result<MultiGraph<S>> {
    g.require(u)?;
    if k == 0 {
        return Err(Error::invalid("multiply needs k >= 1"));
    }
    let mut out = g.clone();
    for (x, m) in g.out_edges(u) {
        let scaled = m
            .checked_mul(k + 1)
            .ok_or_else(|| Error::invalid("edge multiplicity overflow"))?;
        out.set_multiplicity(u, x, scaled);
    }
    Ok(out)
}

/// Exchanges the heads of `(u,u')` and `(w,w')`.
pub fn swap_edges<S: Scalar>(
    g: &MultiGraph<S>,
    u: &NodeId,
    u2: &NodeId,
    w: &NodeId,
    w2: &NodeId,
) -> Result<MultiGraph<S>> {
    for v in [u, u2, w, w2] {
        g.require(v)?;
    }
    let op = || format!("swap {u} {u2} {w} {w2}");
    for (a, b) in [(u, u2), (w, w2)] {
        if g.multiplicity(a, b) == 0 {
            return Err(Error::precondition(op(), format!("no edge ({a},{b})")));
        }
    }
    let mut out = g.clone();
    if u == w || u2 == w2 {
        return Ok(out);
    }
    let mut bump = |a: &NodeId, b: &NodeId, delta: i64| {
        let m = out.multiplicity(a, b) as i64 + delta;
        out.set_multiplicity(a, b, m as u64);
    };
    bump(u, u2, -1);
    bump(w, w2, -1);
    bump(u, w2, 1);
    bump(w, u2, 1);
    Ok(out)
}

/// `R_{u→w}`: drops `u`, rewires its incoming edges to `w` and adds its weight to `w`.
pub fn redirect<S: Scalar>(g: &MultiGraph<S>, u: &NodeId, w: &NodeId) -> Result<MultiGraph<S>> {
    if !g.are_out_twins(u, w)? {
        return Err(Error::precondition(
            format!("redirect {u} {w}"),
            format!("`{u}` and `{w}` are not out-twins"),
        ));
    }
    let incoming: Vec<(NodeId, u64)> = g
        .edges()
        .filter(|(a, b, _)| *b == u && *a != u)
        .map(|(a, _, m)| (a.clone(), m))
        .collect();
    let merged = g.weight(u)?.clone() + g.weight(w)?.clone();
    let mut out = g.clone();
    out.remove_node_and_edges(u);
    for (v, m) in incoming {
        let m = out.multiplicity(&v, w) + m;
        out.set_multiplicity(&v, w, m);
    }
    out.set_weight(w, merged);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> NodeId {
        NodeId::new(s)
    }

    #[test]
    fn swap_moves_both_edges() {
        let g = MultiGraph::<f64>::from_parts(
            [("u", 1.0), ("v", 0.0), ("w", 0.0)],
            [("u", "w", 1), ("v", "v", 1)],
        )
        .unwrap();
        let h = swap_edges(&g, &id("u"), &id("w"), &id("v"), &id("v")).unwrap();
        let expected = MultiGraph::from_parts(
            [("u", 1.0), ("v", 0.0), ("w", 0.0)],
            [("u", "v", 1), ("v", "w", 1)],
        )
        .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn identity_swap_is_noop() {
        let g = MultiGraph::<f64>::from_parts([("u", 1.0), ("v", 0.0)], [("u", "v", 2)]).unwrap();
        assert_eq!(
            swap_edges(&g, &id("u"), &id("v"), &id("u"), &id("v")).unwrap(),
            g
        );
    }

    #[test]
    fn redirect_merges_weights() {
        let g = MultiGraph::<f64>::from_parts(
            [("u", 2.0), ("v", 0.0), ("u'", 3.0)],
            [("u", "v", 1), ("u'", "v", 1)],
        )
        .unwrap();
        let h = redirect(&g, &id("u'"), &id("u")).unwrap();
        let expected = MultiGraph::from_parts([("u", 5.0), ("v", 0.0)], [("u", "v", 1)]).unwrap();
        assert_eq!(h, expected);

        let iso = MultiGraph::<f64>::from_parts([("u", 1.5), ("w", 2.0)], []).unwrap();
        let h = redirect(&iso, &id("u"), &id("w")).unwrap();
        assert_eq!(h.node_count(), 1);
        assert_eq!(*h.weight(&id("w")).unwrap(), 3.5);
    }

    #[test]
    fn preconditions() {
        let g = MultiGraph::<f64>::from_parts([("u", 1.0), ("v", 0.0)], [("u", "v", 1)]).unwrap();
        assert!(matches!(
            delete_node(&g, &id("u")),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(matches!(
            delete_edge(&g, &id("v"), &id("u")),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(multiply_edges(&g, &id("u"), 0).is_err());
        assert_eq!(
            multiply_edges(&g, &id("u"), 2)
                .unwrap()
                .multiplicity(&id("u"), &id("v")),
            3
        );
        assert_eq!(multiply_edges(&g, &id("v"), 5).unwrap(), g);
        assert!(matches!(
            redirect(&g, &id("u"), &id("v")),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn script_round_trip() {
        for line in [
            "delete-node v3",
            "delete-edge v4 v3",
            "multiply v6 1",
            "swap v5 v2 v6 v5",
            "redirect v7 v1",
        ] {
            assert_eq!(OpInstance::parse(line).unwrap().to_string(), line);
        }
        assert!(OpInstance::parse("swap a b c").is_err());
        assert!(OpInstance::parse("teleport a").is_err());
    }
}
