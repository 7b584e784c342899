//! Typed report documents. Every JSON report the tool prints deserializes
//! into [`ReportDocument`]; unknown fields are rejected.

use std::collections::BTreeMap;

use qlogic::cloning::{SearchStatus, WitnessFile};
use qlogic::hidden::{HiddenVariableReport, ModelFile};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    /// Arguments after the program name, verbatim.
    pub command: Vec<String>,
    /// SHA-256 of the input file bytes, lowercase hex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub exit_code: i32,
    pub result: CommandResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CommandResult {
    Validate(ValidateResult),
    Analyze(AnalyzeResult),
    CloneSearch(CloneSearchResult),
    States(StatesResult),
    Hidden(HiddenResult),
    Catalog(CatalogResult),
    Error(ErrorResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorResult {
    /// `io`, `parse`, `malformed`, `invalid-algebra`, `bound` or `resource`.
    pub category: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomViolation {
    /// Error variant name, e.g. `SupplementMissing`.
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateResult {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<AxiomViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeResult {
    pub size: usize,
    pub is_effect_algebra: bool,
    pub is_orthoalgebra: bool,
    pub is_orthomodular_poset: bool,
    pub is_coherent: bool,
    pub is_boolean: bool,
    pub is_boolean_lattice: bool,
    pub is_atomic: bool,
    pub is_archimedean: bool,
    pub sharp_elements: Vec<String>,
    pub atoms: Vec<String>,
    /// Isotropic index of every nonzero element, in carrier order.
    pub iota: Vec<(String, usize)>,
    pub incompatible_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSummary {
    pub witnesses_checked: usize,
    pub zero_iff_orthogonal_violations: Vec<(String, String)>,
    pub idempotence_violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloneSearchResult {
    pub status: SearchStatus,
    pub enumerate_all: bool,
    pub node_budget: u64,
    pub nodes_explored: u64,
    pub wall_time_ms: u64,
    pub witness_count: usize,
    pub witnesses: Vec<WitnessFile>,
    pub symmetric: Vec<bool>,
    /// Present when a witness exists on an orthoalgebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmaSummary>,
    /// `None` when the state space was too large to enumerate.
    pub separating_states: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretation_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatesResult {
    pub empty: bool,
    pub dimension: Option<usize>,
    pub vertex_count: usize,
    /// Each vertex maps labels to exact values `p/q`.
    pub vertices: Vec<BTreeMap<String, String>>,
    pub separating: bool,
    pub merged_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HiddenStatus {
    Verified,
    HypothesisUnmet,
    ConstructionFailed,
    VerificationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HiddenResult {
    pub status: HiddenStatus,
    pub interpretation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub decomposition: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<HiddenVariableReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogResult {
    pub spec: String,
    pub size: usize,
    pub output: String,
}
