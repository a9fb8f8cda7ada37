//! The proof report and its JSON and text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::certify::sign::SignCertificate;
use crate::certify::TaylorCertificate;
use crate::error::{Error, Result};
use crate::quadrature::CertifiedValue;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PROVED")]
    Proved,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "PROVED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Certified,
    Failed,
}

/// A recomputed quantity that disagrees with its published value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Warning {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub published: f64,
    pub recomputed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageReport {
    pub name: String,
    pub status: StageStatus,
    pub estimate: Option<f64>,
    pub error_bound: Option<f64>,
    /// `estimate - error_bound` in the direction of the claimed sign.
    pub margin: Option<f64>,
    pub warnings: Vec<Warning>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<CertifiedValue<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<TaylorCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sign_checks: Vec<SignCertificate>,
}

impl StageReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: StageStatus::Failed,
            estimate: None,
            error_bound: None,
            margin: None,
            warnings: Vec::new(),
            diagnostic: None,
            value: None,
            certificate: None,
            sign_checks: Vec::new(),
        }
    }

    pub fn fail(mut self, why: impl Into<String>) -> Self {
        self.status = StageStatus::Failed;
        self.diagnostic = Some(why.into());
        self
    }

    pub fn is_certified(&self) -> bool {
        self.status == StageStatus::Certified
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofReport {
    pub version: u32,
    pub case: String,
    pub verdict: Verdict,
    pub stages: Vec<StageReport>,
    pub environment: String,
    pub config_hash: String,
}

impl ProofReport {
    pub fn failing_stages(&self) -> impl Iterator<Item = &StageReport> {
        self.stages.iter().filter(|s| !s.is_certified())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            other => Err(Error::InvalidInput(format!("unknown report format `{other}`"))),
        }
    }
}

pub fn emit_report(report: &ProofReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Text => Ok(render_text(report)),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.10}"))
}

fn render_text(report: &ProofReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {} (schema v{})", report.case, report.version);
    let _ = writeln!(out, "config sha256 {}", report.config_hash);
    let _ = writeln!(out, "{}", report.environment);
    for (i, st) in report.stages.iter().enumerate() {
        let status = if st.is_certified() { "ok" } else { "FAILED" };
        let _ = writeln!(out, "\n[{}] {}: {}", i + 1, st.name, status);
        let _ = writeln!(
            out,
            "    estimate {}  error {}  margin {}",
            opt(st.estimate),
            opt(st.error_bound),
            opt(st.margin)
        );
        if let Some(v) = &st.value {
            let _ = writeln!(out, "    {} quadrature, N = {}", v.method, v.steps);
        }
        if let Some(c) = &st.certificate {
            let _ = writeln!(
                out,
                "    Taylor expansion of d^({}) at {} radius {}, degree {}, N = {} ({})",
                c.base_order, c.center, c.radius, c.degree, c.steps, c.mode
            );
            for (j, coeff) in c.coeffs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "      j={j}: {coeff:.10}  term error {:.3e} <= {:.3e}",
                    c.termwise_errors[j], c.termwise_budget[j]
                );
            }
            let _ = writeln!(
                out,
                "      remainder {:.6e} <= {:.6e}; total delta {}",
                c.remainder_bound, c.remainder_budget, c.total_delta
            );
        }
        for s in &st.sign_checks {
            let _ = writeln!(
                out,
                "    {:?} on [{}, {}] by {:?}: {:?} ({})",
                s.claimed_sign, s.interval.0, s.interval.1, s.method, s.outcome, s.note
            );
            for step in &s.cascade {
                let _ = writeln!(
                    out,
                    "      order {}: mean >= {:.9}, endpoint max {:.9}, monotone {}",
                    step.order, step.integral_mean, step.endpoint_max, step.monotone
                );
            }
        }
        for w in &st.warnings {
            let _ = writeln!(out, "    warning {}: {}", w.code, w.message);
        }
        if let Some(d) = &st.diagnostic {
            let _ = writeln!(out, "    diagnostic: {d}");
        }
    }
    let _ = writeln!(out, "\nverdict: {}", report.verdict);
    out
}
