//! Maxima of `α_{s,m}(v) = v^s |log v|^m` on subintervals of `[0, 9]`.
//!
//! On `(0,1)` the function rises from 0 to a single peak at `v₀ = e^{-m/s}`
//! with height `(m/(e s))^m` and falls back to 0 at `v = 1`; on `[1, ∞)` it
//! increases. So the maximum over `[a,b]` is one of `α(a)`, `α(b)` and
//! `α(v₀)` when `v₀ ∈ [a,b]`.

use crate::error::{invalid, Result};
use crate::scalar::{int, lit, Scalar};

/// `v^s |log v|^m` with the continuous value 0 at `v = 0`.
pub fn alpha<T: Scalar>(s: T, m: u32, v: T) -> T {
    if v <= T::zero() {
        return if s == T::zero() && m == 0 { T::one() } else { T::zero() };
    }
    v.powf(s) * v.ln().abs().powi(m as i32)
}

/// Interior critical point `e^{-m/s}` of `α` on `(0,1)`.
pub fn interior_peak<T: Scalar>(s: T, m: u32) -> T {
    (-(int::<T>(m.into())) / s).exp()
}

/// Height of the interior peak, `(m/(e s))^m`.
pub fn interior_peak_value<T: Scalar>(s: T, m: u32) -> T {
    (int::<T>(m.into()) / (T::E() * s)).powi(m as i32)
}

/// Exact maximum of `v^s |log v|^m` over `[a, b] ⊆ [0, 9]`.
///
/// `s = 0` is allowed as long as the interval stays away from 0 or `m = 0`.
pub fn envelope_max<T: Scalar>(s: T, m: u32, a: T, b: T) -> Result<T> {
    if !(a >= T::zero() && a < b && b <= lit(9.0)) {
        return invalid(format!("interval [{a}, {b}] not inside [0, 9]"));
    }
    if s < T::zero() {
        return invalid("negative exponent s");
    }
    if m == 0 {
        return Ok(b.powf(s));
    }
    if s == T::zero() {
        if a == T::zero() {
            return invalid("|log v|^m is unbounded near 0");
        }
        return Ok(alpha(s, m, a).max(alpha(s, m, b)));
    }
    let mut best = alpha(s, m, a).max(alpha(s, m, b));
    let v0 = interior_peak(s, m);
    if v0 >= a && v0 <= b {
        best = best.max(interior_peak_value(s, m));
    }
    Ok(best)
}

/// Whether the maximum of `α_{s,m}` over `[0, 9]` sits at `v = 9`.
pub fn right_endpoint_dominates<T: Scalar>(s: T, m: u32) -> bool {
    let nine = lit::<T>(9.0);
    m == 0 || alpha(s, m, nine) >= interior_peak_value(s, m)
}
