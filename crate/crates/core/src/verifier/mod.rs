//! Theorem-level verification suites.
//!
//! Every suite replays one batch of algebraic identities as engine
//! certificates (or syntactic equalities where the identity holds
//! termwise) and returns a [`VerificationReport`]. A `Certified` verdict
//! is only issued after the certificate has been replayed from scratch;
//! `Violated` can only arise from syntactic comparisons.

mod action;
mod candidate;
mod comult;
mod degenerations;
pub(crate) mod hybrid;
mod unitarity;

pub use action::verify_action;
pub use candidate::verify_candidate_hom;
pub use comult::{verify_coassociativity, verify_comult_welldefined};
pub use degenerations::verify_degenerations;
pub use unitarity::verify_unitarity;

pub(crate) use action::certify_residues;

use std::time::Duration;

use crate::engine::certify::{Certificate, CertifySetup, Outcome};
use crate::engine::TensorElement;
use crate::scalars::ZetaMode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// Backed by a replayed certificate.
    Certified,
    /// Exact syntactic equality (no quotient reasoning needed).
    Passed,
    /// Search exhausted at the stated cap; not a refutation.
    Inconclusive { cap: u32 },
    /// A syntactic comparison failed (this would be an engine bug, never
    /// an outcome of the certificate search).
    Violated,
}

impl CheckStatus {
    pub fn is_good(&self) -> bool {
        matches!(self, CheckStatus::Certified | CheckStatus::Passed)
    }

    pub fn as_str(&self) -> String {
        match self {
            CheckStatus::Certified => "certified".to_string(),
            CheckStatus::Passed => "passed".to_string(),
            CheckStatus::Inconclusive { cap } => format!("inconclusive(cap {cap})"),
            CheckStatus::Violated => "violated".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    /// Cap at which the certificate was found, when one exists.
    pub cap_used: Option<u32>,
    pub certificate: Option<Certificate>,
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(id: impl Into<String>) -> CheckResult {
        CheckResult {
            id: id.into(),
            status: CheckStatus::Passed,
            cap_used: None,
            certificate: None,
            note: None,
        }
    }

    pub fn violated(id: impl Into<String>, note: impl Into<String>) -> CheckResult {
        CheckResult {
            id: id.into(),
            status: CheckStatus::Violated,
            cap_used: None,
            certificate: None,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub grading: String,
    pub mode: ZetaMode,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    /// Wall time; informational only, never serialized into report files.
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, grading: String, mode: ZetaMode) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            grading,
            mode,
            checks: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn all_good(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_good())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, CheckStatus::Inconclusive { .. }))
    }

    pub fn any_violated(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, CheckStatus::Violated))
    }

    /// Deterministic human-readable rendering (no timing).
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {}\n", self.suite));
        out.push_str(&format!("grading {}\n", self.grading));
        out.push_str(&format!("zeta {}\n", self.mode));
        for note in &self.notes {
            out.push_str(&format!("note {note}\n"));
        }
        for check in &self.checks {
            out.push_str(&format!("check {} {}", check.id, check.status.as_str()));
            if let Some(cap) = check.cap_used {
                out.push_str(&format!(" cap={cap}"));
            }
            if let Some(note) = &check.note {
                out.push_str(&format!(" ({note})"));
            }
            out.push('\n');
        }
        let good = self.checks.iter().filter(|c| c.status.is_good()).count();
        out.push_str(&format!(
            "summary {}/{} checks good\n",
            good,
            self.checks.len()
        ));
        out
    }
}

/// Certify a target, replay the certificate, and fold the outcome into a
/// check result. Replay failure downgrades to Violated with a note.
pub(crate) fn certified_check(
    setup: &CertifySetup,
    id: String,
    target: &TensorElement,
    cap: u32,
) -> CheckResult {
    // A target longer than the requested cap could never certify; the
    // effective cap is at least the target's own word length.
    let need = crate::engine::normal_order(&setup.ctx, target).max_slot_letters() as u32;
    let cap = cap.max(need);
    match setup.certify_zero_with_retry(target, cap) {
        Err(e) => CheckResult::violated(id, format!("certify error: {e}")),
        Ok(Outcome::Inconclusive { cap }) => CheckResult {
            id,
            status: CheckStatus::Inconclusive { cap },
            cap_used: None,
            certificate: None,
            note: None,
        },
        Ok(Outcome::Certified(cert)) => {
            if !setup.replay(&cert, target) {
                return CheckResult::violated(id, "certificate replay mismatch");
            }
            CheckResult {
                id,
                status: CheckStatus::Certified,
                cap_used: Some(cert.cap),
                certificate: Some(cert),
                note: None,
            }
        }
    }
}

/// Syntactic-zero fast path, falling back to certification.
pub(crate) fn syntactic_or_certified(
    setup: &CertifySetup,
    id: String,
    target: &TensorElement,
    cap: u32,
) -> CheckResult {
    let normal = crate::engine::normal_order(&setup.ctx, target);
    if normal.is_zero() {
        return CheckResult::passed(id);
    }
    certified_check(setup, id, target, cap)
}
