//! Frozen subspace dimensions.
//!
//! The numbers in `fixtures/subspaces.json` were produced by the nullspace
//! builders in [`crate::spaces`] and confirmed against independent oracles in the
//! test suite before being frozen. Tests and the CLI `verify` command compare
//! fresh builds against them.

use serde::{Deserialize, Serialize};

use crate::error::{CurvError, Result};

const FIXTURES_JSON: &str = include_str!("../fixtures/subspaces.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFixture {
    pub n: usize,
    pub label: String,
    pub dimension: usize,
    pub constraint_cutoff: f64,
    pub seed_protocol: String,
}

pub fn subspace_fixtures() -> Result<Vec<SubspaceFixture>> {
    serde_json::from_str(FIXTURES_JSON).map_err(|e| CurvError::Format(e.to_string()))
}

pub fn fixture(label: &str, n: usize) -> Result<SubspaceFixture> {
    subspace_fixtures()?
        .into_iter()
        .find(|f| f.label == label && f.n == n)
        .ok_or_else(|| CurvError::Format(format!("no fixture for {label} at n = {n}")))
}
