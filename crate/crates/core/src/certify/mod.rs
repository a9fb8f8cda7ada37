//! Taylor certificates for derivatives of `d` and sign checks of the resulting polynomials.
//!
//! A certificate expands `d^(j0)` around `t0`. Each Taylor coefficient
//! `d^(j0+j)(t0)` is computed by certified quadrature, and its error, scaled by
//! `r^j / j!`, must fit a per-term budget. A Lagrange remainder bound closes
//! the account, so `|d^(j0)(t) - P_n(t)| <= δ` on `[t0 - r, t0 + r]`.

pub mod sign;

use serde::{Deserialize, Serialize};

use crate::envelope::envelope_max;
use crate::error::{invalid, Error, Result};
use crate::quadrature::{QuadratureContext, QuadratureMode, ERROR_DENOMINATOR};
use crate::scalar::factorial;

/// Relative slack allowed when comparing sums of decimal budgets.
const BUDGET_TOLERANCE: f64 = 1e-12;

/// Bound on `|d^(j0)(t) - P_n(t)|` from the Lagrange remainder, `|t - t0| <= r`.
///
/// `|d^(m)(ξ)| <= 2 max_ξ sup_v v^ξ |log v|^m` over both signs; the sup over
/// `ξ ∈ [t0-r, t0+r]` is attained at one of the two ends.
pub fn remainder_bound(t0: f64, r: f64, j0: u32, n: u32) -> Result<f64> {
    if !(r > 0.0) {
        return invalid("radius must be positive");
    }
    if t0 - r < 5.0 - 1e-12 || t0 + r > 6.0 + 1e-12 {
        return invalid(format!("[{}, {}] leaves [5, 6]", t0 - r, t0 + r));
    }
    let m = n + 1 + j0;
    let hi = envelope_max(t0 + r, m, 0.0, 9.0)?;
    let lo = envelope_max(t0 - r, m, 0.0, 9.0)?;
    Ok(2.0 * hi.max(lo) * r.powi((n + 1) as i32) / factorial::<f64>(n + 1))
}

/// `⌈(sup4 · 2 r^j / (60·2^10 · j! · δ_j))^{1/4}⌉`: steps making the
/// `j`-th term's scaled error, summed over both signs, at most `δ_j`.
pub fn required_steps(sup4: f64, delta_j: f64, r: f64, j: u32) -> Result<u64> {
    if !(sup4 > 0.0 && delta_j > 0.0 && r > 0.0) {
        return invalid("required_steps needs positive arguments");
    }
    let q = sup4 * 2.0 * r.powi(j as i32) / (ERROR_DENOMINATOR * factorial::<f64>(j) * delta_j);
    Ok(q.powf(0.25).ceil() as u64)
}

/// `⌈(sup4 / (60·2^10 · η))^{1/4}⌉`: steps for a single integral with error `η`.
pub fn required_steps_per_integral(sup4: f64, eta: f64) -> Result<u64> {
    if !(sup4 > 0.0 && eta > 0.0) {
        return invalid("required_steps_per_integral needs positive arguments");
    }
    Ok((sup4 / (ERROR_DENOMINATOR * eta)).powf(0.25).ceil() as u64)
}

/// Inputs for one certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateSpec {
    pub center: f64,
    pub radius: f64,
    pub base_order: u32,
    pub degree: u32,
    /// `δ_0 .. δ_n`.
    pub budgets: Vec<f64>,
    pub remainder_budget: f64,
    pub total_delta: f64,
    pub steps: u32,
    pub mode: QuadratureMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaylorCertificate {
    pub center: f64,
    pub radius: f64,
    pub base_order: u32,
    pub degree: u32,
    /// `d̄_j ≈ d^(j0+j)(t0)`.
    pub coeffs: Vec<f64>,
    /// Certified quadrature error of each `d̄_j`.
    pub quadrature_errors: Vec<f64>,
    /// `quadrature_errors[j] · r^j / j!`.
    pub termwise_errors: Vec<f64>,
    pub termwise_budget: Vec<f64>,
    /// `sup |H^(4)|` (plain) or `W` (refined) behind each coefficient.
    pub weights: Vec<f64>,
    pub remainder_bound: f64,
    pub remainder_budget: f64,
    pub total_delta: f64,
    pub steps: u32,
    pub mode: QuadratureMode,
}

impl TaylorCertificate {
    /// A certificate around given coefficients with no quadrature behind them.
    pub fn from_coeffs(center: f64, radius: f64, coeffs: Vec<f64>, total_delta: f64) -> Self {
        let len = coeffs.len();
        Self {
            center,
            radius,
            base_order: 0,
            degree: len.saturating_sub(1) as u32,
            coeffs,
            quadrature_errors: vec![0.0; len],
            termwise_errors: vec![0.0; len],
            termwise_budget: vec![0.0; len],
            weights: vec![0.0; len],
            remainder_bound: 0.0,
            remainder_budget: 0.0,
            total_delta,
            steps: 0,
            mode: QuadratureMode::Plain,
        }
    }

    pub fn with_total_delta(mut self, total_delta: f64) -> Self {
        self.total_delta = total_delta;
        self
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }

    pub fn contains(&self, t: f64) -> bool {
        let (a, b) = self.interval();
        let eps = 1e-12 * (1.0 + self.center.abs());
        t >= a - eps && t <= b + eps
    }

    /// `Σ δ_j + remainder_budget`.
    pub fn budget_sum(&self) -> f64 {
        self.termwise_budget.iter().sum::<f64>() + self.remainder_budget
    }

    /// `Σ e_j r^j/j! + remainder_bound`: the error actually certified.
    pub fn certified_error(&self) -> f64 {
        self.termwise_errors.iter().sum::<f64>() + self.remainder_bound
    }

    /// `P_n^(m)(t)` without the interval check.
    pub fn eval_unchecked(&self, m: u32, t: f64) -> f64 {
        let m = m as usize;
        if m >= self.coeffs.len() {
            return 0.0;
        }
        let h = t - self.center;
        // Horner on Σ_{i>=0} c_{m+i} h^i / i!
        let tail = &self.coeffs[m..];
        let mut acc = 0.0;
        for i in (0..tail.len()).rev() {
            acc = acc * h / (i as f64 + 1.0) + tail[i];
        }
        acc
    }

    /// `P_n^(m)(t)` for `t` in the certified interval.
    pub fn eval(&self, m: u32, t: f64) -> Result<f64> {
        if !self.contains(t) {
            let (a, b) = self.interval();
            return invalid(format!("t = {t} outside [{a}, {b}]"));
        }
        if m > self.degree {
            return invalid(format!("derivative order {m} above degree {}", self.degree));
        }
        Ok(self.eval_unchecked(m, t))
    }
}

/// Computes the coefficients and checks every budget.
pub fn build_certificate(ctx: &QuadratureContext<f64>, spec: &CertificateSpec) -> Result<TaylorCertificate> {
    let n = spec.degree as usize;
    if spec.budgets.len() != n + 1 {
        return invalid(format!("expected {} budgets, got {}", n + 1, spec.budgets.len()));
    }
    let declared = spec.budgets.iter().sum::<f64>() + spec.remainder_budget;
    if declared > spec.total_delta * (1.0 + BUDGET_TOLERANCE) {
        return invalid(format!(
            "budgets sum to {declared}, above the requested total {}",
            spec.total_delta
        ));
    }
    let remainder = remainder_bound(spec.center, spec.radius, spec.base_order, spec.degree)?;

    let mut cert = TaylorCertificate::from_coeffs(spec.center, spec.radius, Vec::new(), spec.total_delta);
    cert.base_order = spec.base_order;
    cert.degree = spec.degree;
    cert.termwise_budget = spec.budgets.clone();
    cert.remainder_bound = remainder;
    cert.remainder_budget = spec.remainder_budget;
    cert.steps = spec.steps;
    cert.mode = spec.mode;
    cert.quadrature_errors.clear();
    cert.termwise_errors.clear();
    cert.weights.clear();

    for (j, &budget) in spec.budgets.iter().enumerate() {
        let v = ctx.d_derivative(spec.base_order + j as u32, spec.center, spec.steps, spec.mode)?;
        let scaled = v.error_bound * spec.radius.powi(j as i32) / factorial::<f64>(j as u32);
        if scaled > budget {
            return Err(Error::BudgetExceeded {
                index: j,
                error: scaled,
                budget,
            });
        }
        cert.coeffs.push(v.estimate);
        cert.quadrature_errors.push(v.error_bound);
        cert.termwise_errors.push(scaled);
        cert.weights.push(v.weight);
    }
    if remainder > spec.remainder_budget {
        return Err(Error::BudgetExceeded {
            index: n + 1,
            error: remainder,
            budget: spec.remainder_budget,
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_values() {
        let v = remainder_bound(5.065, 0.065, 4, 6).unwrap();
        assert!(v <= 0.0008808 * (1.0 + 1e-4), "{v}");
        assert!(v > 0.00088);
        let v = remainder_bound(5.23, 0.1, 1, 8).unwrap();
        assert!((v - 1.76248e-6).abs() < 1e-10, "{v}");
        let v = remainder_bound(5.86, 0.14, 2, 8).unwrap();
        assert!(v < 0.00035 && v > 0.00034, "{v}");
        assert!(remainder_bound(5.0, 0.1, 1, 3).is_err());
    }

    #[test]
    fn step_requirements() {
        assert_eq!(required_steps_per_integral(2.83e14, 0.091).unwrap(), 475);
        let base = required_steps(1e15, 0.01, 0.1, 2).unwrap() as f64;
        let scaled = required_steps(16e15, 0.01, 0.1, 2).unwrap() as f64;
        assert!((scaled / base - 2.0).abs() < 0.01);
        assert!(required_steps(0.0, 0.1, 0.1, 0).is_err());
    }

    #[test]
    fn horner_and_top_derivative() {
        let c = TaylorCertificate::from_coeffs(1.0, 0.5, vec![1.0, 2.0, 6.0], 0.0);
        // P(t) = 1 + 2h + 3h^2
        assert!((c.eval(0, 1.5).unwrap() - (1.0 + 1.0 + 0.75)).abs() < 1e-15);
        assert!((c.eval(1, 1.5).unwrap() - (2.0 + 3.0)).abs() < 1e-15);
        assert_eq!(c.eval(2, 0.6).unwrap(), 6.0);
        assert!(c.eval(0, 2.0).is_err());
        assert!(c.eval(3, 1.0).is_err());
    }
}
