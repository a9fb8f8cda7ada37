//! Proof configuration, loaded from TOML.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::reference as r;
use crate::certify::sign::SignTarget;
use crate::certify::CertificateSpec;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureMode;

/// A certified value of `d^(order)(t)` that must be positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointStage {
    pub name: String,
    pub order: u32,
    pub t: f64,
    pub steps: u32,
    pub mode: QuadratureMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMethod {
    Chain,
    Cascade,
    Auto,
}

/// A sign claim for the certificate's polynomial on `[a, b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignCheck {
    pub a: f64,
    pub b: f64,
    pub target: SignTarget,
    pub method: CheckMethod,
}

/// A Taylor certificate plus the sign claims made with it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorStage {
    pub name: String,
    pub certificate: CertificateSpec,
    pub checks: Vec<SignCheck>,
    /// Published step requirements, compared against recomputed ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_steps: Option<Vec<u64>>,
    /// Published remainder bound, compared against the recomputed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_remainder: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofConfig {
    pub k: u32,
    /// The open interval on which `d > 0` is claimed.
    pub interval: [f64; 2],
    pub endpoint: Vec<EndpointStage>,
    pub taylor: Vec<TaylorStage>,
}

fn endpoint(name: &str, order: u32, steps: u32, mode: QuadratureMode) -> EndpointStage {
    EndpointStage {
        name: name.into(),
        order,
        t: 5.0,
        steps,
        mode,
    }
}

fn check(a: f64, b: f64, target: SignTarget, method: CheckMethod) -> SignCheck {
    SignCheck { a, b, target, method }
}

#[allow(clippy::too_many_arguments)]
fn taylor(
    name: &str,
    center: f64,
    radius: f64,
    base_order: u32,
    budgets: &[f64],
    remainder_budget: f64,
    total_delta: f64,
    steps: u32,
    mode: QuadratureMode,
    checks: Vec<SignCheck>,
) -> TaylorStage {
    TaylorStage {
        name: name.into(),
        certificate: CertificateSpec {
            center,
            radius,
            base_order,
            degree: budgets.len() as u32 - 1,
            budgets: budgets.to_vec(),
            remainder_budget,
            total_delta,
            steps,
            mode,
        },
        checks,
        reference_steps: None,
        reference_remainder: None,
    }
}

impl Default for ProofConfig {
    fn default() -> Self {
        use CheckMethod::*;
        use QuadratureMode::*;
        use SignTarget::*;

        let mut t1 = taylor(
            "d'''' > 0 on [5, 5.13]",
            5.065,
            0.065,
            4,
            &r::T1_BUDGETS,
            0.0009,
            0.187,
            700,
            Plain,
            vec![check(5.0, 5.13, Positive, Chain)],
        );
        t1.reference_steps = Some(r::T1_STEPS.to_vec());

        // the sign argument on [5.13, 5.33] uses δ = 0.0048
        let t2 = taylor(
            "d' > 0 on [5.13, 5.33]",
            5.23,
            0.1,
            1,
            &r::T2_BUDGETS,
            0.000002,
            0.0048,
            500,
            Refined,
            vec![check(5.13, 5.33, Positive, Cascade)],
        );
        let t4 = taylor(
            "d' > 0 on [5.33, 5.72]",
            5.525,
            0.195,
            1,
            &r::T4_BUDGETS,
            0.000073,
            r::T4_DELTA,
            500,
            Refined,
            vec![
                check(5.33, 5.56, Positive, Cascade),
                check(5.56, 5.72, Positive, Cascade),
            ],
        );
        let mut t6 = taylor(
            "d'' < 0 on [5.72, 6]",
            5.86,
            0.14,
            2,
            &r::T6_BUDGETS,
            r::T6_REMAINDER_BUDGET,
            0.2494,
            700,
            Plain,
            vec![check(5.72, 6.0, Negative, Chain)],
        );
        t6.reference_steps = Some(r::T6_STEPS.to_vec());
        t6.reference_remainder = Some(r::T6_REMAINDER_PRINTED);

        Self {
            k: 5,
            interval: [5.0, 6.0],
            endpoint: vec![
                endpoint("d'(5) > 0", 1, 500, Refined),
                endpoint("d''(5) > 0", 2, 400, Refined),
                endpoint("d'''(5) > 0", 3, 500, Plain),
            ],
            taylor: vec![t1, t2, t4, t6],
        }
    }
}

impl ProofConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// SHA-256 of the canonical TOML form, hex encoded.
    pub fn hash(&self) -> Result<String> {
        let digest = Sha256::digest(self.to_toml()?.as_bytes());
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Same configuration with every step count replaced by `steps`.
    pub fn with_steps(mut self, steps: u32) -> Self {
        for e in &mut self.endpoint {
            e.steps = steps;
        }
        for t in &mut self.taylor {
            t.certificate.steps = steps;
        }
        self
    }

    /// Checks that the stages, if all certified, imply `d > 0` on the open interval.
    ///
    /// Required shape: `d(k) = d(k+1) = 0`; sign pieces tile `[k, k+1]`;
    /// a positive piece for `d^(j0)` with `j0 >= 2` starts at `k` and is backed by
    /// positive endpoint values `d^(i)(k)`, `1 <= i < j0`; the other positive
    /// pieces are for `d'`; the last piece is `d'' < 0` ending at `k+1`.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.interval[0], self.interval[1]);
        if self.k != 5 || lo != 5.0 || hi != 6.0 {
            return Err(Error::InvalidInput(format!(
                "only the case k = 5 on [5, 6] is implemented, got k = {} on [{lo}, {hi}]",
                self.k
            )));
        }
        let kf = f64::from(self.k);
        for e in &self.endpoint {
            if e.t != kf || e.order == 0 {
                return Err(Error::InvalidInput(format!(
                    "endpoint stage `{}` must bound a derivative at t = {kf}",
                    e.name
                )));
            }
        }
        let mut pieces: Vec<(f64, f64, SignTarget, u32)> = Vec::new();
        for stage in &self.taylor {
            let c = &stage.certificate;
            if c.budgets.len() != c.degree as usize + 1 {
                return Err(Error::InvalidInput(format!("stage `{}`: budget count mismatch", stage.name)));
            }
            if stage.checks.is_empty() {
                return Err(Error::InvalidInput(format!("stage `{}` makes no sign claim", stage.name)));
            }
            for ch in &stage.checks {
                if !(ch.a < ch.b) || ch.a < c.center - c.radius - 1e-12 || ch.b > c.center + c.radius + 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "stage `{}`: [{}, {}] is outside the certificate interval",
                        stage.name, ch.a, ch.b
                    )));
                }
                pieces.push((ch.a, ch.b, ch.target, c.base_order));
            }
        }
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        let tol = 1e-12;
        let mut at = lo;
        for (i, &(a, b, target, order)) in pieces.iter().enumerate() {
            if (a - at).abs() > tol {
                return Err(Error::InvalidInput(format!("sign pieces leave a gap or overlap at {at}")));
            }
            let last = i + 1 == pieces.len();
            match target {
                SignTarget::Positive => {
                    if order == 0 {
                        return Err(Error::InvalidInput("a sign piece must concern a derivative of d".into()));
                    }
                    if order >= 2 {
                        if (a - lo).abs() > tol {
                            return Err(Error::InvalidInput(format!(
                                "d^({order}) > 0 only helps on a piece starting at {lo}"
                            )));
                        }
                        for i in 1..order {
                            if !self.endpoint.iter().any(|e| e.order == i) {
                                return Err(Error::InvalidInput(format!("missing endpoint stage for d^({i})({lo})")));
                            }
                        }
                    }
                }
                SignTarget::Negative => {
                    if order != 2 || !last || (b - hi).abs() > tol {
                        return Err(Error::InvalidInput(
                            "a negative piece must be d'' < 0 on the final piece ending at k+1".into(),
                        ));
                    }
                }
            }
            at = b;
        }
        if (at - hi).abs() > tol {
            return Err(Error::InvalidInput(format!("sign pieces stop at {at}, not {hi}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_validates_and_round_trips() {
        let c = ProofConfig::default();
        c.validate().unwrap();
        let text = c.to_toml().unwrap();
        let back = ProofConfig::from_toml(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.hash().unwrap(), back.hash().unwrap());
        assert_eq!(c.hash().unwrap().len(), 64);
    }

    #[test]
    fn other_interval_rejected() {
        let c = ProofConfig { interval: [6.0, 7.0], ..ProofConfig::default() };
        assert!(matches!(c.validate(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn gap_rejected() {
        let mut c = ProofConfig::default();
        c.taylor[1].checks[0].a = 5.15;
        assert!(c.validate().is_err());
    }

    #[test]
    fn missing_endpoint_rejected() {
        let mut c = ProofConfig::default();
        c.endpoint.pop();
        assert!(c.validate().is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut text = ProofConfig::default().to_toml().unwrap();
        text.insert_str(0, "bogus = 1\n");
        assert!(matches!(ProofConfig::from_toml(&text), Err(Error::Config(_))));
    }
}
