//! Centrality measures.
//!
//! PageRank, the ten comparison measures and six deliberately broken variants
//! that each violate exactly one invariance axiom. Every measure is available
//! both as a free function and through [`MeasureSpec`], which pairs an
//! identifier with its decay factor and admissible graph class.

mod counterexample;
mod feedback;
mod pagerank;
mod paths;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GraphClass, MultiGraph, NodeId, DEFAULT_SPECTRAL_TOL};
use crate::scalar::Scalar;

pub use counterexample::{
    adaptive_decay, damped_outdeg, scaled_pagerank, sink_doubled, uniform_beta, weighted_beta,
};
pub use feedback::{beta_measure, bonacich, degree, eigenvector, katz, katz_prestige};
pub use pagerank::{pagerank_direct, pagerank_power, PowerOutcome};
pub use paths::{betweenness, closeness, decay_centrality};

/// Node → score map returned by every measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector<S = f64> {
    scores: BTreeMap<NodeId, S>,
}

impl<S: Scalar> CentralityVector<S> {
    pub(crate) fn from_values(ids: &[NodeId], values: Vec<S>) -> Self {
        Self {
            scores: ids.iter().cloned().zip(values).collect(),
        }
    }

    pub fn get(&self, v: &NodeId) -> Result<&S> {
        self.scores
            .get(v)
            .ok_or_else(|| Error::NodeNotFound(v.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, &S)> + '_ {
        self.scores.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &S> + '_ {
        self.scores.values()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn sum(&self) -> S {
        self.scores
            .values()
            .fold(S::zero(), |acc, x| acc + x.clone())
    }

    pub fn map(&self, mut f: impl FnMut(&NodeId, &S) -> S) -> Self {
        Self {
            scores: self
                .scores
                .iter()
                .map(|(k, v)| (k.clone(), f(k, v)))
                .collect(),
        }
    }

    pub fn to_f64(&self) -> CentralityVector<f64> {
        CentralityVector {
            scores: self
                .scores
                .iter()
                .map(|(k, v)| (k.clone(), v.to_f64()))
                .collect(),
        }
    }

    /// Largest absolute difference over the shared nodes.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.scores
            .iter()
            .filter_map(|(k, v)| other.scores.get(k).map(|w| (v.to_f64() - w.to_f64()).abs()))
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> Serialize for CentralityVector<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_map(self.scores.iter().map(|(k, v)| (k.as_str(), v.to_f64())))
    }
}

/// Measure identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureId {
    PageRank,
    Degree,
    Eigenvector,
    Katz,
    Bonacich,
    Beta,
    KatzPrestige,
    Closeness,
    Decay,
    Betweenness,
    CxAdaptiveDecay,
    CxSinkDoubled,
    CxDampedOutdeg,
    CxWeightedBeta,
    CxUniformBeta,
    CxScaledPageRank,
}

impl MeasureId {
    pub const ALL: [MeasureId; 16] = [
        MeasureId::PageRank,
        MeasureId::Degree,
        MeasureId::Eigenvector,
        MeasureId::Katz,
        MeasureId::Bonacich,
        MeasureId::Beta,
        MeasureId::KatzPrestige,
        MeasureId::Closeness,
        MeasureId::Decay,
        MeasureId::Betweenness,
        MeasureId::CxAdaptiveDecay,
        MeasureId::CxSinkDoubled,
        MeasureId::CxDampedOutdeg,
        MeasureId::CxWeightedBeta,
        MeasureId::CxUniformBeta,
        MeasureId::CxScaledPageRank,
    ];

    /// The ten comparison measures in the row order of the satisfiability table.
    pub const COMPARISON: [MeasureId; 10] = [
        MeasureId::Degree,
        MeasureId::Eigenvector,
        MeasureId::Katz,
        MeasureId::Bonacich,
        MeasureId::Beta,
        MeasureId::KatzPrestige,
        MeasureId::PageRank,
        MeasureId::Closeness,
        MeasureId::Decay,
        MeasureId::Betweenness,
    ];

    pub const COUNTEREXAMPLES: [MeasureId; 6] = [
        MeasureId::CxAdaptiveDecay,
        MeasureId::CxSinkDoubled,
        MeasureId::CxDampedOutdeg,
        MeasureId::CxWeightedBeta,
        MeasureId::CxUniformBeta,
        MeasureId::CxScaledPageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::PageRank => "pagerank",
            MeasureId::Degree => "degree",
            MeasureId::Eigenvector => "eigenvector",
            MeasureId::Katz => "katz",
            MeasureId::Bonacich => "bonacich",
            MeasureId::Beta => "beta",
            MeasureId::KatzPrestige => "katz-prestige",
            MeasureId::Closeness => "closeness",
            MeasureId::Decay => "decay",
            MeasureId::Betweenness => "betweenness",
            MeasureId::CxAdaptiveDecay => "cx-adaptive-decay",
            MeasureId::CxSinkDoubled => "cx-sink-doubled",
            MeasureId::CxDampedOutdeg => "cx-damped-outdeg",
            MeasureId::CxWeightedBeta => "cx-weighted-beta",
            MeasureId::CxUniformBeta => "cx-uniform-beta",
            MeasureId::CxScaledPageRank => "cx-scaled-pagerank",
        }
    }

    pub fn uses_decay(self) -> bool {
        matches!(
            self,
            MeasureId::PageRank
                | MeasureId::Katz
                | MeasureId::Bonacich
                | MeasureId::Decay
                | MeasureId::CxSinkDoubled
                | MeasureId::CxDampedOutdeg
                | MeasureId::CxScaledPageRank
        )
    }

    /// Decay used when none is given.
    pub fn default_decay(self) -> Option<f64> {
        match self {
            MeasureId::PageRank
            | MeasureId::CxSinkDoubled
            | MeasureId::CxDampedOutdeg
            | MeasureId::CxScaledPageRank => Some(0.85),
            MeasureId::Katz | MeasureId::Bonacich => Some(0.25),
            MeasureId::Decay => Some(0.5),
            _ => None,
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown measure `{s}`")))
    }
}

/// Anything that scores the nodes of a graph.
pub trait Measure<S: Scalar>: Send + Sync {
    fn label(&self) -> String;

    fn class(&self) -> GraphClass {
        GraphClass::All
    }

    /// Whether `g` lies in the measure's domain; axiom checks skip graphs outside it.
    fn defined_on(&self, g: &MultiGraph<S>) -> Result<bool> {
        let class = self.class();
        Ok(!class.is_restricted() || class.contains(g)?)
    }

    /// Scores without checking class membership.
    fn evaluate(&self, g: &MultiGraph<S>) -> Result<CentralityVector<S>>;

    /// Scores `g`, rejecting graphs outside [`Measure::class`].
    fn scores(&self, g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
        let class = self.class();
        if class.is_restricted() && !class.contains(g)? {
            return Err(Error::ClassViolation {
                measure: self.label(),
                class,
            });
        }
        self.evaluate(g)
    }
}

/// Identifier, decay factor and admissible class of one measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub decay: Option<f64>,
    pub class: GraphClass,
}

impl MeasureSpec {
    /// Validates the decay factor and derives the admissible class.
    pub fn new(id: MeasureId, decay: Option<f64>) -> Result<Self> {
        let decay = match (id.uses_decay(), decay) {
            (false, None) => None,
            (false, Some(_)) => {
                return Err(Error::invalid(format!("{id} takes no decay factor")));
            }
            (true, None) => return Err(Error::invalid(format!("{id} needs a decay factor"))),
            (true, Some(a)) => {
                let strict = matches!(id, MeasureId::Katz | MeasureId::Bonacich | MeasureId::Decay);
                let ok = if strict {
                    a > 0.0 && a < 1.0
                } else {
                    (0.0..1.0).contains(&a)
                };
                if !ok {
                    return Err(Error::invalid(format!("decay {a} out of range for {id}")));
                }
                Some(a)
            }
        };
        let class = match id {
            MeasureId::Eigenvector | MeasureId::KatzPrestige | MeasureId::Closeness => {
                GraphClass::StronglyConnected
            }
            MeasureId::Katz | MeasureId::Bonacich => GraphClass::KatzAdmissible(decay.unwrap()),
            _ => GraphClass::All,
        };
        Ok(Self { id, decay, class })
    }

    /// Spec with the default decay for `id`.
    pub fn default_for(id: MeasureId) -> Self {
        Self::new(id, id.default_decay()).expect("default decay is valid")
    }

    pub fn with_decay(id: MeasureId, a: f64) -> Result<Self> {
        Self::new(id, Some(a))
    }

    fn alpha<S: Scalar>(&self) -> S {
        decimal(self.decay.expect("validated decay"))
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.decay {
            Some(a) => write!(f, "{}(a={a})", self.id),
            None => write!(f, "{}", self.id),
        }
    }
}

impl<S: Scalar> Measure<S> for MeasureSpec {
    fn label(&self) -> String {
        self.to_string()
    }

    fn class(&self) -> GraphClass {
        self.class
    }

    fn defined_on(&self, g: &MultiGraph<S>) -> Result<bool> {
        if self.id == MeasureId::Closeness && g.node_count() < 2 {
            return Ok(false);
        }
        Ok(!self.class.is_restricted() || self.class.contains(g)?)
    }

    fn evaluate(&self, g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
        match self.id {
            MeasureId::PageRank => pagerank_direct(g, self.alpha()),
            MeasureId::Degree => Ok(degree(g)),
            MeasureId::Eigenvector => eigenvector(g, DEFAULT_SPECTRAL_TOL),
            MeasureId::Katz => katz(g, self.alpha()),
            MeasureId::Bonacich => bonacich(g, self.alpha()),
            MeasureId::Beta => Ok(beta_measure(g)),
            MeasureId::KatzPrestige => katz_prestige(g),
            MeasureId::Closeness => closeness(g),
            MeasureId::Decay => Ok(decay_centrality(g, self.alpha())),
            MeasureId::Betweenness => betweenness(g),
            MeasureId::CxAdaptiveDecay => adaptive_decay(g),
            MeasureId::CxSinkDoubled => sink_doubled(g, self.alpha()),
            MeasureId::CxDampedOutdeg => damped_outdeg(g, self.alpha()),
            MeasureId::CxWeightedBeta => Ok(weighted_beta(g)),
            MeasureId::CxUniformBeta => Ok(uniform_beta(g)),
            MeasureId::CxScaledPageRank => scaled_pagerank(g, self.alpha()),
        }
    }
}

/// `c · PR^a`, the family every axiom-abiding measure belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledPageRank {
    pub c: f64,
    pub a: f64,
}

impl<S: Scalar> Measure<S> for ScaledPageRank {
    fn label(&self) -> String {
        format!("{}*pagerank(a={})", self.c, self.a)
    }

    fn evaluate(&self, g: &MultiGraph<S>) -> Result<CentralityVector<S>> {
        let c: S = decimal(self.c);
        Ok(pagerank_direct(g, decimal(self.a))?.map(|_, x| c.clone() * x.clone()))
    }
}

/// The shortest decimal that rounds to `x`, so exact types see `0.9` as 9/10.
pub(crate) fn decimal<S: Scalar>(x: f64) -> S {
    S::parse_decimal(&x.to_string()).unwrap_or_else(|| S::from_f64(x))
}

/// Validates a PageRank-style decay in `[0, 1)`.
pub(crate) fn check_decay<S: Scalar>(a: &S, strict: bool) -> Result<()> {
    let low_ok = if strict {
        *a > S::zero()
    } else {
        *a >= S::zero()
    };
    if low_ok && *a < S::one() {
        Ok(())
    } else {
        Err(Error::invalid(format!("decay factor {a} out of range")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in MeasureId::ALL {
            assert_eq!(id.name().parse::<MeasureId>().unwrap(), id);
        }
        assert!("hits".parse::<MeasureId>().is_err());
    }

    #[test]
    fn spec_validation_and_classes() {
        assert!(MeasureSpec::new(MeasureId::PageRank, None).is_err());
        assert!(MeasureSpec::new(MeasureId::Degree, Some(0.5)).is_err());
        assert!(MeasureSpec::new(MeasureId::PageRank, Some(1.0)).is_err());
        assert!(MeasureSpec::new(MeasureId::Katz, Some(0.0)).is_err());
        assert!(MeasureSpec::new(MeasureId::PageRank, Some(0.0)).is_ok());
        for id in MeasureId::ALL {
            let spec = MeasureSpec::default_for(id);
            assert_eq!(spec.decay.is_some(), id.uses_decay());
            let restricted = matches!(
                id,
                MeasureId::Eigenvector
                    | MeasureId::KatzPrestige
                    | MeasureId::Closeness
                    | MeasureId::Katz
                    | MeasureId::Bonacich
            );
            assert_eq!(spec.class.is_restricted(), restricted, "{id}");
        }
    }
}
