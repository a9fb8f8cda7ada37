//! Exact Fourier-side arithmetic for `F_±^ρ` and `∫ G^ρ`.
//!
//! `F_± = 1 + e(x) ± e((k+2)x)` has integer coefficients, so every integer
//! power does too, and Parseval turns `∫_T G^ρ = ‖F^ρ‖_2^2` into a finite sum
//! of squares. All of that is done in big integers. The real-exponent bounds
//! at the end are the only floating-point part.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::{int, lit, Scalar};
use crate::trigpoly::SignVariant;

/// Coefficients `a(ν)`, `ν = 0..=ρ(k+2)`, of `F_±^ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientVector {
    pub rho: u32,
    pub k: u32,
    pub sign: SignVariant,
    #[serde(serialize_with = "serialize_bigints")]
    pub coeffs: Vec<BigInt>,
    /// Set when `ρ > k+1`: exponents of different monomials may coincide, so
    /// the single-binomial description of `a(ν)` no longer applies (the
    /// vector still holds the true coefficients).
    pub collisions_possible: bool,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl CoefficientVector {
    /// `Σ a(ν)^2 = ∫_T G^ρ`.
    pub fn square_sum(&self) -> BigInt {
        self.coeffs.iter().map(|a| a * a).sum()
    }
}

/// Coefficients of `F_±^ρ`.
///
/// The monomial `e(x)^λ e((k+2)x)^μ` appears with multiplicity
/// `C(ρ,μ)·C(ρ-μ,λ)` and sign `(±1)^μ` at frequency `λ + μ(k+2)`.
pub fn fourier_coeffs_pow(sign: SignVariant, rho: u32, k: u32) -> CoefficientVector {
    let step = (k + 2) as usize;
    let len = rho as usize * step + 1;
    let mut coeffs = vec![BigInt::zero(); len];
    let rho_b = BigInt::from(rho);
    for mu in 0..=rho {
        let c_mu = binomial(rho_b.clone(), BigInt::from(mu));
        let signed = if sign == SignVariant::Minus && mu % 2 == 1 { -c_mu } else { c_mu };
        let rest = BigInt::from(rho - mu);
        for lambda in 0..=(rho - mu) {
            let nu = lambda as usize + mu as usize * step;
            coeffs[nu] += &signed * binomial(rest.clone(), BigInt::from(lambda));
        }
    }
    CoefficientVector {
        rho,
        k,
        sign,
        coeffs,
        collisions_possible: rho > k + 1,
    }
}

/// `A(ρ) = Σ_μ C(ρ,μ)^2 C(2ρ-2μ, ρ-μ)`; equals `∫_T G_±^ρ` for `ρ <= k+1`.
pub fn a_rho(rho: u32) -> BigInt {
    let r = BigInt::from(rho);
    (0..=rho)
        .map(|mu| {
            let c = binomial(r.clone(), BigInt::from(mu));
            let free = rho - mu;
            &c * &c * binomial(BigInt::from(2 * free), BigInt::from(free))
        })
        .sum()
}

/// `∫_T G_±^ρ` as an exact integer, via Parseval on the true coefficients.
pub fn torus_integral_exact(sign: SignVariant, rho: u32, k: u32) -> BigInt {
    fourier_coeffs_pow(sign, rho, k).square_sum()
}

/// `∫_0^{1/2} G^ρ = A(ρ)/2`, exact. Requires `ρ <= k+1`, where the value does
/// not depend on the sign.
pub fn parseval_integral(rho: u32, k: u32) -> Result<BigRational> {
    if rho > k + 1 {
        return invalid(format!("rho = {rho} exceeds k + 1 = {}", k + 1));
    }
    let a = torus_integral_exact(SignVariant::Plus, rho, k);
    Ok(BigRational::new(a, BigInt::from(2)))
}

/// Whether `∫ G_+^ρ = ∫ G_-^ρ` holds exactly at `ρ = k` and `ρ = k+1`,
/// i.e. `d(k) = d(k+1) = 0`.
pub fn endpoint_difference_zero(k: u32) -> bool {
    [k, k + 1].into_iter().all(|rho| {
        torus_integral_exact(SignVariant::Plus, rho, k)
            == torus_integral_exact(SignVariant::Minus, rho, k)
    })
}

fn a_scalar<T: Scalar>(rho: u32) -> T {
    let a = a_rho(rho);
    match a.to_u64() {
        Some(v) => int(v),
        None => lit(a.to_f64().unwrap_or(f64::INFINITY)),
    }
}

/// Upper bound on `∫_0^{1/2} G^τ` from the single exact moment `A(ρ)`.
///
/// For `τ >= ρ` this uses `G <= 9`; for `τ < ρ` it uses Jensen's inequality
/// for the concave map `u ↦ u^{τ/ρ}` on the probability space `[0,1/2]`
/// with measure `2dx`.
pub fn power_integral_bound<T: Scalar>(tau: T, rho: u32, k: u32) -> Result<T> {
    if !(tau > T::zero()) {
        return invalid("tau must be positive");
    }
    if rho == 0 || rho > k + 1 {
        return invalid(format!("rho must lie in 1..={}", k + 1));
    }
    let a = a_scalar::<T>(rho);
    let rho_t = int::<T>(rho.into());
    let half = lit::<T>(0.5);
    Ok(if tau == rho_t {
        half * a
    } else if tau > rho_t {
        half * lit::<T>(9.0).powf(tau - rho_t) * a
    } else {
        half * a.powf(tau / rho_t)
    })
}

/// Best available upper bound on `∫_T G_±^τ` for real `τ >= 0`.
///
/// Integer `τ <= k+1` gives the exact value. Otherwise the minimum over
/// the single-moment bounds of [`power_integral_bound`] and the log-convex
/// interpolation `A(⌊τ⌋)^{1-θ} A(⌈τ⌉)^θ` between neighbouring moments.
pub fn torus_power_bound<T: Scalar>(tau: T, k: u32) -> Result<T> {
    if tau < T::zero() {
        return invalid("tau must be non-negative");
    }
    let top = k + 1;
    let fl = tau.floor();
    if tau == fl {
        if let Some(r) = fl.to_u32() {
            if r <= top {
                return Ok(a_scalar(r));
            }
        }
    }
    let two = lit::<T>(2.0);
    let mut best = T::infinity();
    for rho in 1..=top {
        best = best.min(two * power_integral_bound(tau, rho, k)?);
    }
    if tau < int::<T>(top.into()) {
        let lo = fl.to_u32().unwrap_or(0);
        let theta = tau - fl;
        let interp = a_scalar::<T>(lo).powf(T::one() - theta) * a_scalar::<T>(lo + 1).powf(theta);
        best = best.min(interp);
    }
    Ok(best)
}

/// `A(0..=rho_max)` as exact integers.
pub fn power_integral_table(rho_max: u32) -> Vec<BigInt> {
    (0..=rho_max).map(a_rho).collect()
}
