use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: Some(detail.into()),
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: None,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: Some(why.into()),
            witness: None,
        }
    }

    pub fn from_outcome(name: &str, outcome: std::result::Result<String, String>) -> Self {
        match outcome {
            Ok(d) => Self::pass(name, d),
            Err(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Outcome of all verification checks for one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SCTReport {
    pub group: String,
    pub order: u64,
    pub superclasses: usize,
    pub supercharacters: usize,
    pub checks: Vec<CheckResult>,
    /// Wall-clock time; left out of serialized reports unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SCTReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

pub const P_CHECKS: &[&str] = &[
    "s1_counts",
    "s2_identity",
    "s3_constant",
    "orthogonality",
    "regular_character",
    "degrees",
    "self_inner",
    "sch0",
    "lin1",
    "sig4",
    "scl1",
    "conjugacy_refinement",
];

pub const FIXED_CHECKS: &[&str] = &[
    "s1_counts",
    "s2_identity",
    "s3_constant",
    "orthogonality",
    "regular_character",
    "degrees",
    "sigma_counts",
    "superclass_constructions",
    "fixed_members",
    "restriction",
    "conjugacy_refinement",
];

/// A selection of checks; `None` means all.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckSelection(Option<BTreeSet<String>>);

impl CheckSelection {
    pub fn all() -> Self {
        CheckSelection(None)
    }

    /// Parses a comma-separated list of check names.
    pub fn parse(list: &str) -> Result<Self> {
        Self::parse_among(list, &[P_CHECKS, FIXED_CHECKS])
    }

    /// Like [`parse`](Self::parse) with an explicit list of known names.
    pub fn parse_among(list: &str, known: &[&[&str]]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if !known.iter().any(|k| k.contains(&name)) {
                return Err(Error::Parse(format!("unknown check: {name}")));
            }
            set.insert(name.to_string());
        }
        Ok(CheckSelection(Some(set)))
    }

    pub fn wants(&self, name: &str) -> bool {
        self.0.as_ref().map_or(true, |s| s.contains(name))
    }
}
