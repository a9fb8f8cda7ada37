//! The squared three-term polynomial `G(x) = |1 + e(x) ± e((k+2)x)|^2`.
//!
//! Expanding the square gives the real cosine polynomial
//! `3 + 2cos(2πx) ± 2cos(2π(k+1)x) ± 2cos(2π(k+2)x)`, which is what gets
//! evaluated here. Besides point evaluation this module provides sup-norm
//! bounds for the derivatives, a tabulation-based bound on every local
//! maximum, and the total-variation bound for powers `G^t` built from it.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::{int, lit, round_up_3sig, round_up_to_grid, Scalar};

/// Which of the two polynomials `1 + e(x) ± e((k+2)x)` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignVariant {
    Plus,
    Minus,
}

impl SignVariant {
    pub const BOTH: [SignVariant; 2] = [SignVariant::Plus, SignVariant::Minus];

    pub fn factor<T: Scalar>(self) -> T {
        match self {
            SignVariant::Plus => T::one(),
            SignVariant::Minus => -T::one(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignVariant::Plus => "plus",
            SignVariant::Minus => "minus",
        }
    }
}

impl std::str::FromStr for SignVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(SignVariant::Plus),
            "minus" | "-" => Ok(SignVariant::Minus),
            other => invalid(format!("unknown sign variant `{other}`")),
        }
    }
}

/// `G_±` for a given `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrigSquare {
    pub k: u32,
    pub sign: SignVariant,
}

impl TrigSquare {
    pub const fn new(k: u32, sign: SignVariant) -> Self {
        Self { k, sign }
    }

    pub const fn k5(sign: SignVariant) -> Self {
        Self { k: 5, sign }
    }

    /// Frequencies of the three cosines, lowest first.
    pub fn frequencies(&self) -> [u32; 3] {
        [1, self.k + 1, self.k + 2]
    }

    /// Number of local maxima a degree-`k+2` trigonometric polynomial can have.
    pub fn max_local_maxima(&self) -> usize {
        (self.k + 2) as usize
    }

    fn weights<T: Scalar>(&self) -> [T; 3] {
        let s = self.sign.factor::<T>();
        [T::one(), s, s]
    }

    pub fn eval<T: Scalar>(&self, x: T) -> T {
        let two_pi_x = T::TAU() * x;
        let w = self.weights::<T>();
        let mut acc = T::zero();
        for (nu, wi) in self.frequencies().into_iter().zip(w) {
            acc = acc + wi * (int::<T>(u64::from(nu)) * two_pi_x).cos();
        }
        (lit::<T>(3.0) + lit::<T>(2.0) * acc).max(T::zero())
    }

    /// The `m`-th derivative in `x`; `m = 0` is [`TrigSquare::eval`].
    pub fn derivative<T: Scalar>(&self, m: u32, x: T) -> T {
        if m == 0 {
            return self.eval(x);
        }
        let two_pi = T::TAU();
        let w = self.weights::<T>();
        let mut acc = T::zero();
        for (nu, wi) in self.frequencies().into_iter().zip(w) {
            let nu_t = int::<T>(u64::from(nu));
            let theta = nu_t * two_pi * x;
            // d^m/dx^m cos(θ) picks up cos, -sin, -cos, sin cyclically.
            let phase = match m % 4 {
                0 => theta.cos(),
                1 => -theta.sin(),
                2 => -theta.cos(),
                _ => theta.sin(),
            };
            acc = acc + wi * nu_t.powi(m as i32) * phase;
        }
        lit::<T>(2.0) * two_pi.powi(m as i32) * acc
    }

    /// `(G, G', G'')` at `x`, sharing the trigonometric evaluations.
    pub fn jet2<T: Scalar>(&self, x: T) -> (T, T, T) {
        let two_pi = T::TAU();
        let w = self.weights::<T>();
        let (mut c0, mut c1, mut c2) = (T::zero(), T::zero(), T::zero());
        for (nu, wi) in self.frequencies().into_iter().zip(w) {
            let nu_t = int::<T>(u64::from(nu));
            let (s, c) = (nu_t * two_pi * x).sin_cos();
            c0 = c0 + wi * c;
            c1 = c1 - wi * nu_t * s;
            c2 = c2 - wi * nu_t * nu_t * c;
        }
        let two = lit::<T>(2.0);
        let g = (lit::<T>(3.0) + two * c0).max(T::zero());
        (g, two * two_pi * c1, two * two_pi * two_pi * c2)
    }
}

/// Analytic bound `M_m` on `sup |G^(m)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivSupBound<T> {
    pub order: u32,
    pub value: T,
}

/// `M_0 = 9`, and `M_m = 2^{m+1} π^m (1 + (k+1)^m + (k+2)^m)` for `m >= 1`.
pub fn sup_norm_bound<T: Scalar>(k: u32, m: u32) -> DerivSupBound<T> {
    let value = if m == 0 {
        lit(9.0)
    } else {
        let spec = TrigSquare::new(k, SignVariant::Plus);
        let freq_sum = spec
            .frequencies()
            .into_iter()
            .fold(T::zero(), |acc, nu| acc + int::<T>(u64::from(nu)).powi(m as i32));
        lit::<T>(2.0) * T::TAU().powi(m as i32) * freq_sum
    };
    DerivSupBound { order: m, value }
}

const K5_DERIV_CEILINGS: [f64; 5] = [9.0, 176.0, 6_800.0, 280_000.0, 11_600_000.0];

/// Rounded-up version of `M_m` used to build the printed-style constants.
///
/// For `k = 5` and `m <= 4` these are the round ceilings `9, 176, 6800, 280000,
/// 11600000`; elsewhere `M_m` rounded up to three significant digits.
pub fn sup_norm_ceiling<T: Scalar>(k: u32, m: u32) -> T {
    if k == 5 && (m as usize) < K5_DERIV_CEILINGS.len() {
        return lit(K5_DERIV_CEILINGS[m as usize]);
    }
    round_up_3sig(sup_norm_bound::<T>(k, m).value)
}

/// `‖G''‖_{L²(T)} = 8π² sqrt((1 + (k+1)^4 + (k+2)^4) / 2)`; equals `8π²·43` at `k = 5`.
pub fn second_deriv_l2<T: Scalar>(k: u32) -> T {
    let a = int::<T>(u64::from(k + 1)).powi(4);
    let b = int::<T>(u64::from(k + 2)).powi(4);
    lit::<T>(8.0) * T::PI() * T::PI() * ((T::one() + a + b) / lit(2.0)).sqrt()
}

/// Round ceiling of [`second_deriv_l2`]: 3400 at `k = 5`.
pub fn second_deriv_l2_ceiling<T: Scalar>(k: u32) -> T {
    if k == 5 {
        return lit(3400.0);
    }
    round_up_3sig(second_deriv_l2::<T>(k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalMaximum<T> {
    /// Tabulation node where the turn was seen; the true place is within one step.
    pub location: T,
    /// Certified upper bound on `G` at the true local maximum.
    pub value_upper: T,
    /// 2 for a `±ζ` pair, 1 for a maximum sitting at `0` or `1/2`.
    pub multiplicity: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalMaxTable<T> {
    pub spec: TrigSquare,
    pub step: T,
    pub bump: T,
    pub entries: Vec<LocalMaximum<T>>,
}

impl<T: Scalar> LocalMaxTable<T> {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity as usize).sum()
    }

    /// Upper bound `2 Σ_ζ G^t(ζ)` on the total variation of `G^t` over the torus.
    pub fn variation_bound(&self, t: T) -> T {
        let two = lit::<T>(2.0);
        two * self
            .entries
            .iter()
            .fold(T::zero(), |acc, e| acc + int::<T>(e.multiplicity.into()) * e.value_upper.powf(t))
    }
}

/// Slack `½ M₂ (h/2)²` separating a local maximum from its nearest node.
pub fn taylor_slack<T: Scalar>(k: u32, h: T) -> T {
    let half = lit::<T>(0.5);
    half * sup_norm_ceiling::<T>(k, 2) * (h * half).powi(2)
}

/// Tabulates `G` on `[0, 1/2]` with step `h` and bounds every local maximum.
///
/// A turn from increase to decrease at node `i` brackets a maximum in
/// `[x_{i-1}, x_{i+1}]`; its value is at most the largest of the three samples
/// plus `bump`, provided `bump >= ½ M₂ (h/2)²`. Bounds are reported rounded up
/// to the grid of `bump`. All `k + 2` maxima must be found, otherwise an
/// unseen maximum could escape the bound.
///
/// When the turn sits at the symmetric point `0` or `1/2`, the derivative
/// vanishes there exactly; if `G''` is negative the bracket's single maximum
/// is that point and its exact value is used.
pub fn locate_maxima<T: Scalar>(spec: TrigSquare, h: T, bump: T) -> Result<LocalMaxTable<T>> {
    if !(h > T::zero()) || !(bump > T::zero()) {
        return invalid("step and bump must be positive");
    }
    let slack = taylor_slack(spec.k, h);
    if bump < slack {
        return invalid(format!(
            "bump {bump} is below the certified Taylor slack {slack} for step {h}"
        ));
    }
    let half = lit::<T>(0.5);
    let n_f = (half / h).round();
    if (n_f * h - half).abs() > h * lit(1e-9) {
        return invalid("step must divide 1/2");
    }
    let n = n_f.to_usize().ok_or_else(|| Error::InvalidInput("step too small".into()))?;
    let samples: Vec<T> = (0..=n).map(|i| spec.eval(int::<T>(i as u64) * h)).collect();
    // Evenness and period 1 reflect the table at both ends.
    let at = |i: isize| -> T {
        if i < 0 {
            samples[(-i) as usize]
        } else if i as usize > n {
            samples[2 * n - i as usize]
        } else {
            samples[i as usize]
        }
    };

    let mut turns = Vec::new();
    for i in 0..=n as isize {
        let (prev, cur, next) = (at(i - 1), at(i), at(i + 1));
        if cur > prev && cur >= next {
            turns.push(i as usize);
        }
    }
    let count: usize = turns.iter().map(|&i| if i == 0 || i == n { 1 } else { 2 }).sum();
    if count != spec.max_local_maxima() {
        return invalid(format!(
            "found {count} local maxima, expected {}; tabulation too coarse",
            spec.max_local_maxima()
        ));
    }

    let nine = sup_norm_bound::<T>(spec.k, 0).value;
    let entries = turns
        .into_iter()
        .map(|i| {
            let location = int::<T>(i as u64) * h;
            let symmetric = i == 0 || i == n;
            let value_upper = if symmetric && spec.derivative(2, location) < T::zero() {
                spec.eval(location)
            } else {
                let ii = i as isize;
                let top = at(ii - 1).max(at(ii)).max(at(ii + 1));
                round_up_to_grid(top + bump, bump)
            };
            LocalMaximum {
                location,
                value_upper: value_upper.min(nine),
                multiplicity: if symmetric { 1 } else { 2 },
            }
        })
        .collect();
    Ok(LocalMaxTable {
        spec,
        step: h,
        bump,
        entries,
    })
}

/// [`locate_maxima`] with the default step and bump of `0.001`.
pub fn default_maxima<T: Scalar>(spec: TrigSquare) -> Result<LocalMaxTable<T>> {
    locate_maxima(spec, lit(0.001), lit(0.001))
}
