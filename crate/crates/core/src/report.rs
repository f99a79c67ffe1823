//! Typed report schema for machine-readable bound output.
//!
//! Everything here serializes with a fixed field order and no maps, so a
//! fixed seed yields byte-identical JSON. Infinities appear as the string
//! "inf"; vertex labels are external (1-indexed).

use crate::diameter::{ExponentRule, UpperBoundRecord};
use crate::extint::{ExtInt, ExtReal};
use crate::graph::Graph;
use crate::lower::{EdgeCountSource, LkLowerBound, LowerOutcome};
use crate::sympow::KSet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub components: usize,
}

pub fn graph_meta(g: &Graph) -> GraphMeta {
    let profile = g.degree_profile();
    GraphMeta {
        n: g.n(),
        m: g.edge_count(),
        min_degree: profile.min_degree,
        max_degree: profile.max_degree,
        components: g.components().len(),
    }
}

fn external(sets: &[KSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.external_labels()).collect()
}

/// One upper-bound evaluation, with the diameter witness that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperCell {
    pub mu: f64,
    pub set_count: u64,
    /// "1/(d-1)" (certified) or "1/d".
    pub exponent: String,
    pub certified: bool,
    pub diameter: ExtInt,
    pub trials: usize,
    pub seed: u64,
    /// Token sets pairwise at least `diameter` apart, 1-indexed labels.
    pub witness: Vec<Vec<usize>>,
    pub bound: ExtReal,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl From<&UpperBoundRecord> for UpperCell {
    fn from(rec: &UpperBoundRecord) -> Self {
        UpperCell {
            mu: rec.mu,
            set_count: rec.set_count as u64,
            exponent: match rec.rule {
                ExponentRule::DMinusOne => "1/(d-1)".to_string(),
                ExponentRule::D => "1/d".to_string(),
            },
            certified: rec.rule.is_certified(),
            diameter: rec.estimate.d,
            trials: rec.estimate.trials,
            seed: rec.estimate.seed,
            witness: external(&rec.estimate.witness),
            bound: rec.bound,
            note: rec.note.clone(),
        }
    }
}

/// One lower-bound evaluation, with the isoperimetric inputs that fed it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerCell {
    /// Base-graph fit.
    pub delta: ExtReal,
    pub c: f64,
    /// Family fit for the deleted-vertex subgraphs.
    pub delta_k: ExtReal,
    pub a_k: f64,
    /// True when the family floor came from exhaustive enumeration.
    pub certified: bool,
    pub edge_count: f64,
    /// "exact" or "degree-bound".
    pub edge_count_source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

pub fn lower_cell(rec: &LkLowerBound, certified: bool) -> LowerCell {
    let (bound, reason) = match &rec.outcome {
        LowerOutcome::Bound(v) => (Some(*v), None),
        LowerOutcome::NotApplicable(why) => (None, Some(why.clone())),
    };
    LowerCell {
        delta: ExtReal(rec.base_fit.delta),
        c: rec.base_fit.c,
        delta_k: ExtReal(rec.delta_k),
        a_k: rec.a_k,
        certified,
        edge_count: rec.edge_count,
        edge_count_source: match rec.edge_count_source {
            EdgeCountSource::Exact => "exact".to_string(),
            EdgeCountSource::DegreeBound => "degree-bound".to_string(),
        },
        bound,
        reason,
    }
}

/// One (k, j) block of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: usize,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upper: Option<UpperCell>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower: Option<LowerCell>,
    /// Oracle eigenvalue, present when the dense solve ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph: GraphMeta,
    pub seed: u64,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
