use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{MultiGraph, NodeId, Topology};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Local edge structure of a single node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub out_degree: u64,
    pub in_multiplicity: BTreeMap<NodeId, u64>,
    pub direct_successors: BTreeSet<NodeId>,
    pub direct_predecessors: BTreeSet<NodeId>,
    pub is_sink: bool,
    pub is_source: bool,
    pub is_isolated: bool,
}

impl Incidence {
    pub fn in_degree(&self) -> u64 {
        self.in_multiplicity.values().sum()
    }
}

/// Nodes reachable from, and reaching, a node by paths of length at least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reachability {
    pub successors: BTreeSet<NodeId>,
    pub predecessors: BTreeSet<NodeId>,
}

/// Shortest-path counts between an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathCounts {
    pub total: u128,
    pub through_via: u128,
}

impl<S: Scalar> MultiGraph<S> {
    pub fn incidence(&self, v: &NodeId) -> Result<Incidence> {
        self.require(v)?;
        let mut out_degree = 0;
        let mut direct_successors = BTreeSet::new();
        for (dst, m) in self.out_edges(v) {
            out_degree += m;
            direct_successors.insert(dst.clone());
        }
        let in_multiplicity: BTreeMap<NodeId, u64> = self
            .edges()
            .filter(|(_, dst, _)| *dst == v)
            .map(|(src, _, m)| (src.clone(), m))
            .collect();
        let direct_predecessors = in_multiplicity.keys().cloned().collect();
        let is_sink = out_degree == 0;
        let is_source = in_multiplicity.is_empty();
        Ok(Incidence {
            out_degree,
            in_multiplicity,
            direct_successors,
            direct_predecessors,
            is_sink,
            is_source,
            is_isolated: is_sink && is_source,
        })
    }

    pub fn is_sink(&self, v: &NodeId) -> bool {
        self.out_edges(v).next().is_none()
    }

    pub fn is_isolated(&self, v: &NodeId) -> bool {
        self.is_sink(v) && !self.edges().any(|(_, dst, _)| dst == v)
    }

    pub fn reachability(&self, v: &NodeId) -> Result<Reachability> {
        let topo = self.topology();
        let i = topo.index_of(v)?;
        let collect = |mask: Vec<bool>| {
            mask.iter()
                .enumerate()
                .filter(|(_, &hit)| hit)
                .map(|(j, _)| topo.ids[j].clone())
                .collect()
        };
        Ok(Reachability {
            successors: collect(topo.reach(i, false)),
            predecessors: collect(topo.reach(i, true)),
        })
    }

    /// Shortest path length from `u` to `v`; for `u == v` the shortest cycle through `u`.
    /// `None` when there is no such path.
    pub fn distance(&self, u: &NodeId, v: &NodeId) -> Result<Option<u32>> {
        let topo = self.topology();
        let (i, j) = (topo.index_of(u)?, topo.index_of(v)?);
        Ok(topo.distances_from(i)[j])
    }

    pub fn shortest_path_counts(
        &self,
        s: &NodeId,
        t: &NodeId,
        via: Option<&NodeId>,
    ) -> Result<PathCounts> {
        let topo = self.topology();
        let (si, ti) = (topo.index_of(s)?, topo.index_of(t)?);
        if si == ti {
            return Err(Error::invalid(
                "shortest path counts need distinct endpoints",
            ));
        }
        let via = via.map(|x| topo.index_of(x)).transpose()?;
        if via == Some(si) || via == Some(ti) {
            return Err(Error::invalid("via node must be interior to the path"));
        }
        let (ds, cs) = topo.path_counts(si, false)?;
        let Some(d) = ds[ti] else {
            return Ok(PathCounts {
                total: 0,
                through_via: 0,
            });
        };
        let through_via = match via {
            None => 0,
            Some(x) => {
                let (dt, ct) = topo.path_counts(ti, true)?;
                match (ds[x], dt[x]) {
                    (Some(a), Some(b)) if a + b == d => {
                        cs[x].checked_mul(ct[x]).ok_or(Error::Overflow)?
                    }
                    _ => 0,
                }
            }
        };
        Ok(PathCounts {
            total: cs[ti],
            through_via,
        })
    }

    /// `#(u,x) = #(w,x)` for every node `x`.
    pub fn are_out_twins(&self, u: &NodeId, w: &NodeId) -> Result<bool> {
        self.require(u)?;
        self.require(w)?;
        if u == w {
            return Err(Error::invalid("out-twin check needs two distinct nodes"));
        }
        Ok(self.out_edges(u).eq(self.out_edges(w)))
    }

    /// Every node reaches every node by a path of length at least one.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::invalid("strong connectivity of the empty graph"));
        }
        let topo = self.topology();
        let fwd = topo.reach(0, false);
        let bwd = topo.reach(0, true);
        Ok(fwd.iter().all(|&x| x) && bwd.iter().all(|&x| x))
    }
}

impl Topology {
    /// Nodes hit by a path of length at least one from `start` (against edges if `reverse`).
    pub fn reach(&self, start: usize, reverse: bool) -> Vec<bool> {
        let adj = if reverse { &self.inc } else { &self.out };
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = adj[start].iter().map(|&(j, _)| j).collect();
        while let Some(i) = stack.pop() {
            if !seen[i] {
                seen[i] = true;
                stack.extend(adj[i].iter().map(|&(j, _)| j));
            }
        }
        seen
    }

    /// BFS distances from `s`; entry `s` holds the shortest cycle length through `s`.
    pub fn distances_from(&self, s: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &(j, _) in &self.out[s] {
            if dist[j].is_none() {
                dist[j] = Some(1);
                queue.push_back(j);
            }
        }
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap() + 1;
            for &(j, _) in &self.out[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d);
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// Shortest simple-path distances and multiplicity-weighted path counts from `s`,
    /// with `s` itself at distance 0 and count 1.
    pub fn path_counts(&self, s: usize, reverse: bool) -> Result<(Vec<Option<u32>>, Vec<u128>)> {
        let adj = if reverse { &self.inc } else { &self.out };
        let n = self.len();
        let mut dist = vec![None; n];
        let mut sigma = vec![0u128; n];
        dist[s] = Some(0);
        sigma[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap() + 1;
            for &(j, m) in &adj[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d);
                    queue.push_back(j);
                }
                if dist[j] == Some(d) {
                    let add = sigma[i].checked_mul(m as u128).ok_or(Error::Overflow)?;
                    sigma[j] = sigma[j].checked_add(add).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok((dist, sigma))
    }

    /// Strongly connected components in reverse topological order of the condensation.
    pub fn components(&self) -> Vec<Vec<usize>> {
        // iterative Tarjan
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut next = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut frames = vec![(root, 0usize)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&(v, k)) = frames.last() {
                if let Some(&(w, _)) = self.out[v].get(k) {
                    frames.last_mut().unwrap().1 += 1;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
        out
    }
}
