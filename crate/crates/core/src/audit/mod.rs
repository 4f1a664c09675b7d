//! Side-by-side comparison of printed reference data with recomputed values.

mod report;

pub use report::{build_audit, AuditError, AuditOptions};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qparams::QMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    /// The printed item cannot be read unambiguously.
    Unparseable,
    /// The recomputation needs an ingredient that does not exist here.
    Unverifiable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Unparseable => "unparseable",
            Verdict::Unverifiable => "unverifiable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub section: String,
    pub quantity: String,
    pub printed: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl AuditRow {
    pub fn new(
        section: &str,
        quantity: impl Into<String>,
        printed: impl Into<String>,
        computed: impl Into<String>,
        verdict: Verdict,
    ) -> Self {
        AuditRow {
            section: section.to_string(),
            quantity: quantity.into(),
            printed: printed.into(),
            computed: computed.into(),
            verdict,
            details: Vec::new(),
        }
    }

    /// `Match` when `ok`, otherwise `Mismatch`.
    pub fn check(
        section: &str,
        quantity: impl Into<String>,
        printed: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        let v = if ok {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        Self::new(section, quantity, printed, computed, v)
    }

    pub fn with_details(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub q: QMode,
    pub fixture_origin: String,
    pub assumptions: Vec<String>,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    pub fn find(&self, quantity: &str) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.quantity == quantity)
    }

    pub fn sections(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.section.as_str()) {
                out.push(&r.section);
            }
        }
        out
    }
}
