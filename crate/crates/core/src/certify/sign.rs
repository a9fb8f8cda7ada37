//! Sign certification for `P_n ∓ δ` on a subinterval.
//!
//! Write `q = s·P_n - δ` with `s = +1` for a positive claim and `s = -1` for a
//! negative one; the claim is `q > 0` on `[a, b]`, which gives the sign of
//! the true function since `|d^(j0) - P_n| <= δ`.
//!
//! The derivative chain walks down from the constant top derivative: if
//! `q^(m+1)` has constant sign then `q^(m)` is monotone, so it has constant
//! sign exactly when its endpoint values share a strict sign.
//!
//! The variation cascade argues by contradiction. If `q` vanished in `(a, b)`
//! then `Var(q) >= q(a) + q(b)`, hence the mean of `|q'|` is at least
//! `Var(q)/(b-a)`; `|q'|` reaches its mean somewhere, which forces
//! `Var(q') >= 2 I - |q'(a) + q'(b)|`, and so on. Once an order is reached
//! where `q^(m)` is monotone yet the forced mean of `|q^(m)|` exceeds both
//! endpoint values, the assumed zero is impossible.

use serde::{Deserialize, Serialize};

use super::TaylorCertificate;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignTarget {
    Positive,
    Negative,
}

impl SignTarget {
    fn factor(self) -> f64 {
        match self {
            SignTarget::Positive => 1.0,
            SignTarget::Negative => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMethod {
    DerivativeChain,
    VariationCascade,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignOutcome {
    Certified,
    Inconclusive,
}

/// Values of `p^(m)` at both ends, where `p = P_n - δ` for a positive claim
/// and `p = P_n + δ` for a negative one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EndpointValues {
    pub order: u32,
    pub at_a: f64,
    pub at_b: f64,
    /// Whether the chain has shown this derivative to have constant sign.
    pub constant_sign: bool,
}

/// One order of the variation cascade.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CascadeStep {
    pub order: u32,
    /// Lower bound on `Var(q^(order-1))` under the zero hypothesis.
    pub prev_variation: f64,
    /// Lower bound on the mean of `|q^(order)|`.
    pub integral_mean: f64,
    pub endpoint_max: f64,
    pub monotone: bool,
    pub contradiction: bool,
    /// Lower bound on `Var(q^(order))`.
    pub variation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignCertificate {
    pub interval: (f64, f64),
    pub claimed_sign: SignTarget,
    pub method: SignMethod,
    pub delta: f64,
    pub outcome: SignOutcome,
    pub evidence: Vec<EndpointValues>,
    pub cascade: Vec<CascadeStep>,
    pub contradiction_order: Option<u32>,
    pub note: String,
}

impl SignCertificate {
    pub fn is_certified(&self) -> bool {
        self.outcome == SignOutcome::Certified
    }
}

fn check_interval(cert: &TaylorCertificate, a: f64, b: f64) -> Result<()> {
    if !(a < b) || !cert.contains(a) || !cert.contains(b) {
        let (lo, hi) = cert.interval();
        return invalid(format!("[{a}, {b}] is not a subinterval of [{lo}, {hi}]"));
    }
    Ok(())
}

/// `(q^(m)(a), q^(m)(b))` for `m = 0..=n`.
fn q_values(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64) -> Vec<(f64, f64)> {
    let s = target.factor();
    (0..=cert.degree)
        .map(|m| {
            let shift = if m == 0 { cert.total_delta } else { 0.0 };
            (
                s * cert.eval_unchecked(m, a) - shift,
                s * cert.eval_unchecked(m, b) - shift,
            )
        })
        .collect()
}

/// For each order, `Some(±1)` when `q^(m)` is shown to have that constant
/// sign, `Some(0)` for an identically vanishing top coefficient.
fn constant_signs(q: &[(f64, f64)]) -> Vec<Option<i8>> {
    let n = q.len() - 1;
    let mut out = vec![None; n + 1];
    let top = q[n].0;
    out[n] = Some(if top > 0.0 {
        1
    } else if top < 0.0 {
        -1
    } else {
        0
    });
    for m in (0..n).rev() {
        if out[m + 1].is_none() {
            break;
        }
        let (qa, qb) = q[m];
        out[m] = if qa > 0.0 && qb > 0.0 {
            Some(1)
        } else if qa < 0.0 && qb < 0.0 {
            Some(-1)
        } else {
            None
        };
    }
    out
}

fn evidence(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64, signs: &[Option<i8>]) -> Vec<EndpointValues> {
    let shift = -target.factor() * cert.total_delta;
    (0..=cert.degree)
        .map(|m| {
            let off = if m == 0 { shift } else { 0.0 };
            EndpointValues {
                order: m,
                at_a: cert.eval_unchecked(m, a) + off,
                at_b: cert.eval_unchecked(m, b) + off,
                constant_sign: signs[m as usize].is_some_and(|s| s != 0),
            }
        })
        .collect()
}

/// Derivative-chain check of `s·P_n - δ > 0` on `[a, b]`.
pub fn check_sign_chain(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64) -> Result<SignCertificate> {
    check_interval(cert, a, b)?;
    let q = q_values(cert, target, a, b);
    let signs = constant_signs(&q);
    let ok = signs[0] == Some(1);
    let note = if ok {
        "sign fixed by the derivative chain".to_string()
    } else {
        let broken = (0..signs.len()).rev().find(|&m| signs[m].is_none()).unwrap_or(0);
        format!("chain inconclusive: derivative of order {broken} changes sign or has mixed endpoints")
    };
    Ok(SignCertificate {
        interval: (a, b),
        claimed_sign: target,
        method: SignMethod::DerivativeChain,
        delta: cert.total_delta,
        outcome: if ok { SignOutcome::Certified } else { SignOutcome::Inconclusive },
        evidence: evidence(cert, target, a, b, &signs),
        cascade: Vec::new(),
        contradiction_order: None,
        note,
    })
}

/// The cascade of lower bounds up to order `depth` (at most the degree).
///
/// Stops early only if a variation bound stops being positive.
pub fn variation_cascade(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64, depth: u32) -> Result<Vec<CascadeStep>> {
    check_interval(cert, a, b)?;
    let q = q_values(cert, target, a, b);
    let signs = constant_signs(&q);
    let n = cert.degree;
    let width = b - a;
    let mut steps = Vec::new();
    let mut prev = q[0].0 + q[0].1;
    for m in 1..=depth.min(n) {
        if !(prev > 0.0) {
            break;
        }
        let (qa, qb) = q[m as usize];
        let mean = prev / width;
        let endpoint_max = qa.abs().max(qb.abs());
        let monotone = m == n || signs[m as usize + 1].is_some();
        let variation = 2.0 * mean - (qa + qb).abs();
        steps.push(CascadeStep {
            order: m,
            prev_variation: prev,
            integral_mean: mean,
            endpoint_max,
            monotone,
            contradiction: monotone && mean > endpoint_max,
            variation,
        });
        prev = variation;
    }
    Ok(steps)
}

/// Variation-cascade check of `s·P_n - δ > 0` on `[a, b]`.
pub fn check_sign_variation(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64) -> Result<SignCertificate> {
    check_interval(cert, a, b)?;
    let q = q_values(cert, target, a, b);
    let signs = constant_signs(&q);
    let mut out = SignCertificate {
        interval: (a, b),
        claimed_sign: target,
        method: SignMethod::VariationCascade,
        delta: cert.total_delta,
        outcome: SignOutcome::Inconclusive,
        evidence: evidence(cert, target, a, b, &signs),
        cascade: Vec::new(),
        contradiction_order: None,
        note: String::new(),
    };
    let (qa, qb) = q[0];
    if !(qa > 0.0 && qb > 0.0) {
        out.note = "cascade inconclusive: endpoint values do not have the claimed sign".into();
        return Ok(out);
    }
    out.cascade = variation_cascade(cert, target, a, b, cert.degree)?;
    out.contradiction_order = out.cascade.iter().find(|s| s.contradiction).map(|s| s.order);
    match out.contradiction_order {
        Some(m) => {
            out.outcome = SignOutcome::Certified;
            out.note = format!("a zero would force the mean of |p^({m})| above its endpoint values");
        }
        None => out.note = "cascade inconclusive: no order yields a contradiction".into(),
    }
    Ok(out)
}

/// Tries the chain first and falls back to the cascade.
pub fn certify_sign(cert: &TaylorCertificate, target: SignTarget, a: f64, b: f64) -> Result<SignCertificate> {
    let chain = check_sign_chain(cert, target, a, b)?;
    if chain.is_certified() {
        return Ok(chain);
    }
    check_sign_variation(cert, target, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_polynomial() {
        let c = TaylorCertificate::from_coeffs(0.5, 0.5, vec![1.0], 0.5);
        let s = check_sign_chain(&c, SignTarget::Positive, 0.0, 1.0).unwrap();
        assert!(s.is_certified());
        let s = check_sign_chain(&c, SignTarget::Negative, 0.0, 1.0).unwrap();
        assert!(!s.is_certified());
    }

    #[test]
    fn chain_with_decreasing_polynomial() {
        // 1 - h on [-0.5, 0.5], δ = 0.1: positive, minimum 0.4 at the right end
        let c = TaylorCertificate::from_coeffs(0.0, 0.5, vec![1.0, -1.0], 0.1);
        let s = check_sign_chain(&c, SignTarget::Positive, -0.5, 0.5).unwrap();
        assert!(s.is_certified());
        assert_eq!(s.evidence[1].at_a, -1.0);
        assert!((s.evidence[0].at_b - 0.4).abs() < 1e-15);
    }

    #[test]
    fn chain_fails_on_interior_minimum_but_cascade_succeeds() {
        // h^2 + 0.05 on [-0.5, 0.5], δ = 0.01: derivative changes sign
        let c = TaylorCertificate::from_coeffs(0.0, 0.5, vec![0.05, 0.0, 2.0], 0.01);
        let chain = check_sign_chain(&c, SignTarget::Positive, -0.5, 0.5).unwrap();
        assert!(!chain.is_certified());
        let cas = check_sign_variation(&c, SignTarget::Positive, -0.5, 0.5).unwrap();
        // q(±0.5) = 0.29, so the forced mean of |q'| is 0.58 < 1 = max |q'(±0.5)|
        assert!(!cas.is_certified());

        // with q = h^2 + 0.3 the forced mean is 1.1 > 1
        let c = TaylorCertificate::from_coeffs(0.0, 0.5, vec![0.3, 0.0, 2.0], 0.0);
        assert!(!check_sign_chain(&c, SignTarget::Positive, -0.5, 0.5).unwrap().is_certified());
        let cas = check_sign_variation(&c, SignTarget::Positive, -0.5, 0.5).unwrap();
        assert!(cas.is_certified());
        assert_eq!(cas.contradiction_order, Some(1));
        assert!((cas.cascade[0].integral_mean - 1.1).abs() < 1e-12);
    }

    #[test]
    fn genuine_zero_is_never_certified() {
        // h^2 - 0.01 has zeros at ±0.1
        let c = TaylorCertificate::from_coeffs(0.0, 0.5, vec![-0.01, 0.0, 2.0], 0.0);
        assert!(!certify_sign(&c, SignTarget::Positive, -0.5, 0.5).unwrap().is_certified());
    }

    #[test]
    fn interval_must_lie_inside() {
        let c = TaylorCertificate::from_coeffs(0.0, 0.5, vec![1.0], 0.0);
        assert!(check_sign_chain(&c, SignTarget::Positive, -1.0, 0.0).is_err());
    }
}
