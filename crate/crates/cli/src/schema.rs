//! Serde types for the machine-readable (JSON) output of every subcommand.
//! The top-level `schema` field is versioned; all structures round-trip.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    pub d1: usize,
    pub d2: usize,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbRowJson {
    pub name: String,
    pub symbol: String,
    pub closed_form: f64,
    pub born: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbsJson {
    pub schema: u32,
    pub spec: SpecJson,
    pub family: String,
    pub noise: String,
    pub p: f64,
    pub rows: Vec<ProbRowJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdValuesJson {
    pub white_2x2: f64,
    pub colored: Option<f64>,
    pub chsh_white: Option<f64>,
    pub white_highdim: f64,
    pub tracedist_p_equivalent: f64,
    pub tracedist_eta_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub name: String,
    pub lesser: f64,
    pub greater: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdsJson {
    pub schema: u32,
    pub spec: SpecJson,
    pub thresholds: ThresholdValuesJson,
    pub orderings: Vec<OrderingJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhvCheckJson {
    pub schema: u32,
    pub spec: SpecJson,
    pub family: String,
    pub noise: String,
    pub p: f64,
    pub inequality: String,
    pub slack: f64,
    pub inequality_satisfied: bool,
    pub lp_feasible: bool,
    pub lp_max_violation: f64,
    pub agreement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRequestJson {
    pub d1: usize,
    pub d2: usize,
    pub p2: f64,
    pub grid: GridJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRowJson {
    pub p1: f64,
    pub upper_one_minus_p: f64,
    pub lower_one_minus_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedJson {
    pub p1: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepJson {
    pub schema: u32,
    pub request: SweepRequestJson,
    pub rows: Vec<SweepRowJson>,
    pub skipped: Vec<SkippedJson>,
}
