//! Fourth-order midpoint quadrature on `[0, 1/2]` with certified error.
//!
//! With `N` nodes `x_n = (2n-1)/(4N)` the rule
//! `Σ f(x_n)/(2N) + f''(x_n)/(192 N^3)` has error at most
//! `(60·2^10 N^5)^{-1} Σ_n max_{|x-x_n| <= h/2} |f^(4)|`. Bounding every local
//! maximum by `sup |f^(4)|` gives the plain bound. The refined bound instead
//! dominates `|f^(4)|` by a [`BoundTermSum`] and bounds the Riemann sums of its
//! terms through integrals and total variations of powers of `G`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envelope::envelope_max;
use crate::error::{invalid, Result};
use crate::integrand::{
    eval_h, h4_sup_bound, h4_term_bounds, h_of_g, h_second_from_jet, BoundTermSum, IntegrandSpec,
};
use crate::scalar::{int, lit, NeumaierSum, Scalar};
use crate::spectral::torus_power_bound;
use crate::trigpoly::{
    default_maxima, second_deriv_l2_ceiling, sup_norm_ceiling, LocalMaxTable, SignVariant, TrigSquare,
};

/// Largest step count accepted by the integrators.
pub const MAX_STEPS: u32 = 1_000_000;

/// `60 · 2^10`.
pub const ERROR_DENOMINATOR: f64 = 61_440.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureMode {
    Plain,
    Refined,
}

impl std::str::FromStr for QuadratureMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "refined" => Ok(Self::Refined),
            other => invalid(format!("unknown quadrature mode `{other}`")),
        }
    }
}

impl std::fmt::Display for QuadratureMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Refined => "refined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedValue<T> {
    pub estimate: T,
    pub error_bound: T,
    pub steps: u32,
    pub method: QuadratureMode,
    /// `sup |f^(4)|` for plain mode, the weight `W` for refined mode
    /// (largest over the two signs for a difference).
    pub weight: T,
}

impl<T: Scalar> CertifiedValue<T> {
    pub fn lower(&self) -> T {
        self.estimate - self.error_bound
    }

    pub fn upper(&self) -> T {
        self.estimate + self.error_bound
    }

    pub fn contains(&self, v: T) -> bool {
        self.lower() <= v && v <= self.upper()
    }
}

fn check_steps(n: u32) -> Result<()> {
    if n == 0 || n > MAX_STEPS {
        return invalid(format!("step count {n} outside 1..={MAX_STEPS}"));
    }
    Ok(())
}

/// Node `x_n = (2n-1)/(4N)` for `n = 1..=N`.
pub fn node<T: Scalar>(n: u32, steps: u32) -> T {
    int::<T>(2 * u64::from(n) - 1) / int::<T>(4 * u64::from(steps))
}

/// The un-certified part of the rule: sums of `f` and `f''` over the nodes.
///
/// Nodes are evaluated in parallel; the reduction runs sequentially over the
/// collected values, so the result does not depend on the thread count.
pub fn midpoint4_estimate<T, F>(pair: F, steps: u32) -> T
where
    T: Scalar,
    F: Fn(T) -> (T, T) + Sync,
{
    let values: Vec<(T, T)> = (1..=steps).into_par_iter().map(|n| pair(node(n, steps))).collect();
    let mut s0 = NeumaierSum::new();
    let mut s2 = NeumaierSum::new();
    for (f, f2) in values {
        s0 += f;
        s2 += f2;
    }
    let n = int::<T>(steps.into());
    s0.sum() / (lit::<T>(2.0) * n) + s2.sum() / (lit::<T>(192.0) * n * n * n)
}

/// Plain certified error `sup4 / (60·2^10 N^4)`.
pub fn plain_error<T: Scalar>(sup4: T, steps: u32) -> T {
    sup4 / (lit::<T>(ERROR_DENOMINATOR) * int::<T>(steps.into()).powi(4))
}

/// Integrates `f` over `[0, 1/2]` given `f''` and a bound on `sup |f^(4)|`.
pub fn midpoint4_integrate<T, F, F2>(f: F, f2: F2, steps: u32, sup4: T) -> Result<CertifiedValue<T>>
where
    T: Scalar,
    F: Fn(T) -> T + Sync,
    F2: Fn(T) -> T + Sync,
{
    check_steps(steps)?;
    if sup4 < T::zero() {
        return invalid("sup4 must be non-negative");
    }
    Ok(CertifiedValue {
        estimate: midpoint4_estimate(|x| (f(x), f2(x)), steps),
        error_bound: plain_error(sup4, steps),
        steps,
        method: QuadratureMode::Plain,
        weight: sup4,
    })
}

/// Constants of the refined bound derived from the derivative ceilings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RefinedConstants<T> {
    /// `M1 / 2`: 88 at `k = 5`.
    pub half_m1: T,
    /// `‖G''‖_2 / 2` rounded up: 1700.
    pub half_l2: T,
    /// `2(k+2)/9`: monotone pieces of `G` times the width of `[0, 1/9]`, halved.
    pub low_variation: T,
}

impl<T: Scalar> RefinedConstants<T> {
    pub fn new(k: u32) -> Self {
        let half = lit::<T>(0.5);
        Self {
            half_m1: half * sup_norm_ceiling::<T>(k, 1),
            half_l2: half * second_deriv_l2_ceiling::<T>(k),
            low_variation: int::<T>(2 * u64::from(k + 2)) / lit(9.0),
        }
    }
}

fn low_range_peak<T: Scalar>(t: T, j: u32) -> Result<T> {
    if j == 0 {
        return Ok(T::zero());
    }
    envelope_max(t, j, T::zero(), T::one() / lit(9.0))
}

fn check_exponent<T: Scalar>(t: T) -> Result<()> {
    if !(t >= T::one()) {
        return invalid(format!("exponent t_r = {t} below 1"));
    }
    Ok(())
}

/// `Q_N(G, t, j)`, bounding `Σ_n G^t |log G|^j` over the refined sampling points.
///
/// `∫_T G^t` is exact for integer `t <= k+1` and otherwise bounded through
/// [`torus_power_bound`].
pub fn q_plain<T: Scalar>(spec: TrigSquare, t: T, j: u32, steps: u32, table: &LocalMaxTable<T>) -> Result<T> {
    check_exponent(t)?;
    debug_assert_eq!(table.spec, spec);
    let n = int::<T>(steps.into());
    let log9 = lit::<T>(9.0).ln();
    let chi = low_range_peak(t, j)? * n;
    let main = n * torus_power_bound(t, spec.k)? + lit::<T>(0.5) * table.variation_bound(t);
    Ok(chi + log9.powi(j as i32) * main)
}

/// `Q*_N(G, t, j)`, the analogue of [`q_plain`] for terms carrying `|G'|`.
pub fn q_star<T: Scalar>(spec: TrigSquare, t: T, j: u32, steps: u32, table: &LocalMaxTable<T>) -> Result<T> {
    check_exponent(t)?;
    debug_assert_eq!(table.spec, spec);
    let c = RefinedConstants::<T>::new(spec.k);
    let n = int::<T>(steps.into());
    let log9 = lit::<T>(9.0).ln();
    let chi = low_range_peak(t, j)? * (c.low_variation * n + c.half_l2);
    let two_t_moment = torus_power_bound(lit::<T>(2.0) * t, spec.k)?;
    let main = n / (t + T::one()) * table.variation_bound(t + T::one())
        + c.half_m1 * table.variation_bound(t)
        + c.half_l2 * two_t_moment.sqrt();
    Ok(chi + log9.powi(j as i32) * main)
}

/// `W = Σ_r c_r · (Q*_N if the term carries |G'| else Q_N)`.
pub fn refined_weight<T: Scalar>(
    terms: &BoundTermSum<T>,
    spec: TrigSquare,
    steps: u32,
    table: &LocalMaxTable<T>,
) -> Result<T> {
    let mut w = NeumaierSum::new();
    for term in &terms.terms {
        let q = if term.has_gprime {
            q_star(spec, term.t_r, term.j_r, steps, table)?
        } else {
            q_plain(spec, term.t_r, term.j_r, steps, table)?
        };
        w += term.coefficient * q;
    }
    Ok(w.sum())
}

/// Refined certified error `W / (60·2^10 N^5)`.
pub fn refined_error_bound<T: Scalar>(
    terms: &BoundTermSum<T>,
    spec: TrigSquare,
    steps: u32,
    table: &LocalMaxTable<T>,
) -> Result<T> {
    check_steps(steps)?;
    let w = refined_weight(terms, spec, steps, table)?;
    Ok(w / (lit::<T>(ERROR_DENOMINATOR) * int::<T>(steps.into()).powi(5)))
}

/// Maxima tables for both signs, reused across integrations.
#[derive(Clone, Debug)]
pub struct QuadratureContext<T> {
    pub k: u32,
    pub plus: LocalMaxTable<T>,
    pub minus: LocalMaxTable<T>,
}

impl<T: Scalar> QuadratureContext<T> {
    pub fn new(k: u32) -> Result<Self> {
        Ok(Self {
            k,
            plus: default_maxima(TrigSquare::new(k, SignVariant::Plus))?,
            minus: default_maxima(TrigSquare::new(k, SignVariant::Minus))?,
        })
    }

    pub fn k5() -> Result<Self> {
        Self::new(5)
    }

    pub fn table(&self, sign: SignVariant) -> &LocalMaxTable<T> {
        match sign {
            SignVariant::Plus => &self.plus,
            SignVariant::Minus => &self.minus,
        }
    }

    /// Certified `∫_0^{1/2} H_{t,j,±}`.
    pub fn integrate_h(&self, spec: &IntegrandSpec<T>, steps: u32, mode: QuadratureMode) -> Result<CertifiedValue<T>> {
        check_steps(steps)?;
        if spec.k != self.k {
            return invalid("integrand and context disagree on k");
        }
        let trig = spec.trig();
        let (t, j) = (spec.t, spec.j);
        let estimate = midpoint4_estimate(
            |x| {
                let (g, g1, g2) = trig.jet2(x);
                (h_of_g(t, j, g), h_second_from_jet(t, j, g, g1, g2))
            },
            steps,
        );
        let (error_bound, weight) = match mode {
            QuadratureMode::Plain => {
                let sup4 = h4_sup_bound(spec)?;
                (plain_error(sup4, steps), sup4)
            }
            QuadratureMode::Refined => {
                let terms = h4_term_bounds(spec)?;
                let table = self.table(spec.sign);
                let w = refined_weight(&terms, trig, steps, table)?;
                (w / (lit::<T>(ERROR_DENOMINATOR) * int::<T>(steps.into()).powi(5)), w)
            }
        };
        Ok(CertifiedValue {
            estimate,
            error_bound,
            steps,
            method: mode,
            weight,
        })
    }

    /// Certified `d^(j)(t) = ∫ H_{t,j,-} - ∫ H_{t,j,+}`; the error bounds add.
    pub fn d_derivative(&self, j: u32, t: T, steps: u32, mode: QuadratureMode) -> Result<CertifiedValue<T>> {
        let mut minus = IntegrandSpec::new(t, j, SignVariant::Minus);
        minus.k = self.k;
        let mut plus = minus;
        plus.sign = SignVariant::Plus;
        let m = self.integrate_h(&minus, steps, mode)?;
        let p = self.integrate_h(&plus, steps, mode)?;
        Ok(CertifiedValue {
            estimate: m.estimate - p.estimate,
            error_bound: m.error_bound + p.error_bound,
            steps,
            method: mode,
            weight: m.weight.max(p.weight),
        })
    }
}

/// `∫_0^{1/2} H` by the plain midpoint rule with many nodes and no error claim.
pub fn midpoint_oracle<T: Scalar>(spec: &IntegrandSpec<T>, steps: u32) -> T {
    let values: Vec<T> = (1..=steps)
        .into_par_iter()
        .map(|n| eval_h(spec, node::<T>(n, steps)))
        .collect();
    let mut s = NeumaierSum::new();
    for v in values {
        s += v;
    }
    s.sum() / (lit::<T>(2.0) * int::<T>(steps.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigpoly::default_maxima;

    fn ctx() -> QuadratureContext<f64> {
        QuadratureContext::k5().unwrap()
    }

    #[test]
    fn constants_match_round_values() {
        let c = RefinedConstants::<f64>::new(5);
        assert_eq!(c.half_m1, 88.0);
        assert_eq!(c.half_l2, 1700.0);
        assert!((c.low_variation - 14.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn constant_function_is_exact() {
        let v = midpoint4_integrate(|_| 1.0_f64, |_| 0.0, 37, 0.0).unwrap();
        assert!((v.estimate - 0.5).abs() < 1e-15);
        assert_eq!(v.error_bound, 0.0);
    }

    #[test]
    fn cube_of_g_hits_parseval_value() {
        let trig = TrigSquare::k5(SignVariant::Plus);
        // degree 21, absolute coefficient sum at most 9^3
        let sup4 = (2.0 * std::f64::consts::PI * 21.0).powi(4) * 729.0;
        let v = midpoint4_integrate(
            |x| trig.eval(x).powi(3),
            |x| {
                let (g, g1, g2) = trig.jet2(x);
                h_second_from_jet(3.0, 0, g, g1, g2)
            },
            500,
            sup4,
        )
        .unwrap();
        assert!(v.contains(46.5), "{v:?}");
    }

    #[test]
    fn plain_error_for_d3() {
        let e = plain_error(2.82932e14_f64, 500);
        assert!((e - 0.0736).abs() < 1e-3 && e < 0.091);
    }

    #[test]
    fn q_values_under_printed() {
        let plus = default_maxima::<f64>(TrigSquare::k5(SignVariant::Plus)).unwrap();
        let spec = plus.spec;
        assert!(q_plain(spec, 3.0, 0, 500, &plus).unwrap() <= 48_351.0);
        assert!(q_plain(spec, 4.0, 1, 500, &plus).unwrap() <= 733_944.0);
        assert!(q_star(spec, 1.0, 0, 500, &plus).unwrap() <= 137_081.0);
        assert!(q_star(spec, 3.0, 1, 500, &plus).unwrap() <= 9_398_487.0);
        assert!(q_star(spec, 2.0, 1, 400, &plus).unwrap() <= 1_274_463.0);
        let only_var = q_plain(spec, 3.0, 0, 0, &plus).unwrap();
        assert!((only_var - 0.5 * plus.variation_bound(3.0)).abs() < 1e-9);
        assert!(q_plain(spec, 0.5, 0, 10, &plus).is_err());
    }

    #[test]
    fn empty_terms_give_zero() {
        let plus = default_maxima::<f64>(TrigSquare::k5(SignVariant::Plus)).unwrap();
        let e = refined_error_bound(&BoundTermSum::default(), plus.spec, 500, &plus).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn refined_bounds_for_first_two_derivatives() {
        let c = ctx();
        for sign in SignVariant::BOTH {
            let v = c.integrate_h(&IntegrandSpec::new(5.0, 1, sign), 500, QuadratureMode::Refined).unwrap();
            assert!(v.error_bound <= 0.0009745, "{sign:?} {}", v.error_bound);
            let v = c.integrate_h(&IntegrandSpec::new(5.0, 2, sign), 400, QuadratureMode::Refined).unwrap();
            assert!(v.error_bound <= 0.0071, "{sign:?} {}", v.error_bound);
        }
    }

    #[test]
    fn steps_are_validated() {
        let c = ctx();
        let s = IntegrandSpec::new(5.0, 0, SignVariant::Plus);
        assert!(c.integrate_h(&s, 0, QuadratureMode::Plain).is_err());
        assert!(c.integrate_h(&s, MAX_STEPS + 1, QuadratureMode::Plain).is_err());
    }
}
