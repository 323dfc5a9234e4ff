//! Node-weighted directed multigraphs.
//!
//! A [`MultiGraph`] is a node set with nonnegative weights and a table of
//! edge multiplicities. Parallel edges and self-loops are allowed; an absent
//! pair has multiplicity zero and is never stored.

pub(crate) mod format;
mod query;
mod spectral;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use format::{format_graph, parse_graph, parse_graph_as};
pub use query::{Incidence, PathCounts, Reachability};
pub(crate) use spectral::perron as spectral_perron;
pub use spectral::DEFAULT_SPECTRAL_TOL;

/// Opaque, orderable node identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(Arc<str>);

impl NodeId {
    pub fn new(name: impl AsRef<str>) -> Self {
        NodeId(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::new(s)
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(Arc::from(s))
    }
}

impl From<&NodeId> for NodeId {
    fn from(id: &NodeId) -> Self {
        id.clone()
    }
}

impl Serialize for NodeId {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.0)
    }
}

/// Graph classes on which restricted measures are defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GraphClass {
    All,
    StronglyConnected,
    /// Graphs whose adjacency spectral radius is below `1 / decay`, acyclic ones included.
    KatzAdmissible(f64),
    Acyclic,
}

impl GraphClass {
    pub fn contains<S: Scalar>(&self, g: &MultiGraph<S>) -> Result<bool> {
        if g.is_empty() {
            return Ok(matches!(self, GraphClass::All | GraphClass::Acyclic));
        }
        match *self {
            GraphClass::All => Ok(true),
            GraphClass::StronglyConnected => g.is_strongly_connected(),
            GraphClass::Acyclic => Ok(g.is_acyclic()),
            GraphClass::KatzAdmissible(a) => {
                if g.is_acyclic() {
                    return Ok(true);
                }
                Ok(g.spectral_radius(DEFAULT_SPECTRAL_TOL)? * a * (1.0 + KATZ_MARGIN) < 1.0)
            }
        }
    }

    pub fn is_restricted(&self) -> bool {
        !matches!(self, GraphClass::All)
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::All => f.write_str("all graphs"),
            GraphClass::StronglyConnected => f.write_str("strongly connected graphs"),
            GraphClass::KatzAdmissible(a) => write!(f, "Katz-admissible graphs (a = {a})"),
            GraphClass::Acyclic => f.write_str("acyclic graphs"),
        }
    }
}

/// Relative margin keeping graphs with `λ · a` numerically indistinguishable from 1 out of the Katz class.
const KATZ_MARGIN: f64 = 1e-9;

/// Directed multigraph with nonnegative node weights.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiGraph<S = f64> {
    weights: BTreeMap<NodeId, S>,
    edges: BTreeMap<(NodeId, NodeId), u64>,
}

impl<S> Default for MultiGraph<S> {
    fn default() -> Self {
        Self {
            weights: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> MultiGraph<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(id, weight)` pairs and `(src, dst, multiplicity)` triples.
    /// Repeated edge triples accumulate.
    pub fn from_parts<'a>(
        nodes: impl IntoIterator<Item = (&'a str, S)>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, u64)>,
    ) -> Result<Self> {
        let mut g = Self::new();
        for (id, w) in nodes {
            g.add_node(id, w)?;
        }
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, id: impl Into<NodeId>, weight: S) -> Result<()> {
        let id = id.into();
        if weight < S::zero() || !weight.is_finite_value() {
            return Err(Error::invalid(format!(
                "weight of `{id}` must be a finite nonnegative number, got {weight}"
            )));
        }
        if self.weights.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate node `{id}`")));
        }
        self.weights.insert(id, weight);
        Ok(())
    }

    /// Adds `multiplicity` copies of the edge `(src, dst)`.
    pub fn add_edge(
        &mut self,
        src: impl Into<NodeId>,
        dst: impl Into<NodeId>,
        multiplicity: u64,
    ) -> Result<()> {
        let (src, dst) = (src.into(), dst.into());
        self.require(&src)?;
        self.require(&dst)?;
        if multiplicity == 0 {
            return Err(Error::invalid("edge multiplicity must be positive"));
        }
        *self.edges.entry((src, dst)).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    /// Total edge multiplicity `|E|`.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn contains(&self, v: &NodeId) -> bool {
        self.weights.contains_key(v)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.weights.keys()
    }

    pub fn weights(&self) -> impl Iterator<Item = (&NodeId, &S)> + '_ {
        self.weights.iter()
    }

    pub fn weight(&self, v: &NodeId) -> Result<&S> {
        self.weights
            .get(v)
            .ok_or_else(|| Error::NodeNotFound(v.clone()))
    }

    /// `b(G)`, the sum of all node weights.
    pub fn total_weight(&self) -> S {
        self.weights
            .values()
            .fold(S::zero(), |acc, w| acc + w.clone())
    }

    /// `#_{(u,v)}(G)`.
    pub fn multiplicity(&self, u: &NodeId, v: &NodeId) -> u64 {
        self.edges
            .get(&(u.clone(), v.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Distinct edges with their multiplicities, ordered by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (&NodeId, &NodeId, u64)> + '_ {
        self.edges.iter().map(|((u, v), m)| (u, v, *m))
    }

    /// Outgoing edges of `u` as `(target, multiplicity)`.
    pub fn out_edges<'a>(&'a self, u: &'a NodeId) -> impl Iterator<Item = (&'a NodeId, u64)> + 'a {
        self.edges
            .range((u.clone(), NodeId::new(""))..)
            .take_while(move |((src, _), _)| src == u)
            .map(|((_, dst), m)| (dst, *m))
    }

    pub fn out_degree(&self, u: &NodeId) -> u64 {
        self.out_edges(u).map(|(_, m)| m).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topology().topological_order().is_some()
    }

    /// Same structure with each weight passed through `f`.
    pub fn map_weights<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> MultiGraph<T> {
        MultiGraph {
            weights: self
                .weights
                .iter()
                .map(|(k, w)| (k.clone(), f(w)))
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Converts the weights into another scalar type via their shortest decimal form.
    pub fn to_scalar<T: Scalar>(&self) -> MultiGraph<T> {
        self.map_weights(|w| crate::centrality::decimal(w.to_f64()))
    }

    /// `G + G'` for graphs on disjoint node sets.
    pub fn disjoint_union(&self, other: &MultiGraph<S>) -> Result<MultiGraph<S>> {
        if let Some(shared) = other.nodes().find(|v| self.contains(v)) {
            return Err(Error::invalid(format!(
                "graphs are not disjoint: both contain `{shared}`"
            )));
        }
        let mut g = self.clone();
        g.weights
            .extend(other.weights.iter().map(|(k, w)| (k.clone(), w.clone())));
        g.edges
            .extend(other.edges.iter().map(|(k, m)| (k.clone(), *m)));
        Ok(g)
    }

    /// Copy of the graph with every node id prefixed.
    pub fn relabeled(&self, prefix: &str) -> MultiGraph<S> {
        let rename = |v: &NodeId| NodeId::new(format!("{prefix}{v}"));
        MultiGraph {
            weights: self
                .weights
                .iter()
                .map(|(k, w)| (rename(k), w.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|((u, v), m)| ((rename(u), rename(v)), *m))
                .collect(),
        }
    }

    pub(crate) fn require(&self, v: &NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::NodeNotFound(v.clone()))
        }
    }

    pub(crate) fn set_weight(&mut self, v: &NodeId, w: S) {
        if let Some(slot) = self.weights.get_mut(v) {
            *slot = w;
        }
    }

    /// Sets a multiplicity directly; zero removes the edge.
    pub(crate) fn set_multiplicity(&mut self, u: &NodeId, v: &NodeId, m: u64) {
        let key = (u.clone(), v.clone());
        if m == 0 {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, m);
        }
    }

    /// Removes a node together with every incident edge.
    pub(crate) fn remove_node_and_edges(&mut self, v: &NodeId) {
        self.weights.remove(v);
        self.edges.retain(|(a, b), _| a != v && b != v);
    }

    /// Dense index view used by the numeric routines.
    pub fn topology(&self) -> Topology {
        let ids: Vec<NodeId> = self.weights.keys().cloned().collect();
        let pos: BTreeMap<NodeId, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let n = ids.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for ((u, v), &m) in &self.edges {
            let (i, j) = (pos[u], pos[v]);
            out[i].push((j, m));
            inc[j].push((i, m));
        }
        let out_deg = out
            .iter()
            .map(|es| es.iter().map(|&(_, m)| m).sum())
            .collect();
        Topology {
            ids,
            pos,
            out,
            inc,
            out_deg,
        }
    }

    /// Weights in [`Topology`] order.
    pub(crate) fn weight_vec(&self) -> Vec<S> {
        self.weights.values().cloned().collect()
    }
}

/// Index-based adjacency of a [`MultiGraph`]; node `i` is the `i`-th id in order.
#[derive(Debug, Clone)]
pub struct Topology {
    pub ids: Vec<NodeId>,
    pub pos: BTreeMap<NodeId, usize>,
    /// `out[i]` lists `(j, #_{(i,j)})`.
    pub out: Vec<Vec<(usize, u64)>>,
    /// `inc[j]` lists `(i, #_{(i,j)})`.
    pub inc: Vec<Vec<(usize, u64)>>,
    pub out_deg: Vec<u64>,
}

impl Topology {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, v: &NodeId) -> Result<usize> {
        self.pos
            .get(v)
            .copied()
            .ok_or_else(|| Error::NodeNotFound(v.clone()))
    }

    /// Kahn order, or `None` when the graph has a cycle (self-loops included).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.inc.iter().map(|es| es.len()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = stack.pop() {
            order.push(i);
            for &(j, _) in &self.out[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}
