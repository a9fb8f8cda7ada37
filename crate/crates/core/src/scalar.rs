//! Scalar abstraction shared by the floating-point kernels.
//!
//! Every kernel in this crate (trigonometric evaluation, envelopes, quadrature,
//! Taylor polynomials) is written against [`Scalar`] so it can be instantiated
//! at `f64` (the certified path) or `f32` (quick exploration). Exact Fourier-side
//! arithmetic lives in [`crate::spectral`] and does not go through this trait.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the numeric kernels.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}

/// Converts an integer into the working scalar.
#[inline]
pub fn int<T: Scalar>(v: u64) -> T {
    T::from_u64(v).expect("integer representable in scalar type")
}

/// Lossy view of a scalar as `f64`, for diagnostics and serialization.
#[inline]
pub fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Running sum with Neumaier compensation.
///
/// Additions are applied in call order, so a fixed iteration order gives
/// bit-identical results across runs.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum<T> {
    s: T,
    c: T,
}

impl<T: Scalar> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            s: T::zero(),
            c: T::zero(),
        }
    }

    pub fn sum(&self) -> T {
        self.s + self.c
    }
}

impl<T: Scalar> AddAssign<T> for NeumaierSum<T> {
    fn add_assign(&mut self, rhs: T) {
        let s = self.s + rhs;
        if self.s.abs() >= rhs.abs() {
            self.c = self.c + ((self.s - s) + rhs);
        } else {
            self.c = self.c + ((rhs - s) + self.s);
        }
        self.s = s;
    }
}

impl<T: Scalar> Add<T> for NeumaierSum<T> {
    type Output = Self;

    fn add(mut self, rhs: T) -> Self {
        self += rhs;
        self
    }
}

/// Compensated left-to-right sum of an iterator.
pub fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(items: I) -> T {
    items
        .into_iter()
        .fold(NeumaierSum::new(), |acc, v| acc + v)
        .sum()
}

/// Smallest multiple of `grid` that is `>= v`.
pub fn round_up_to_grid<T: Scalar>(v: T, grid: T) -> T {
    let k = (v / grid).ceil();
    // divide by an integral reciprocal so that decimal grids land on their literals
    let inv = grid.recip().round();
    let exact_inv = (inv * grid - T::one()).abs() <= T::epsilon() * lit(4.0);
    let at = |k: T| if exact_inv { k / inv } else { k * grid };
    let mut r = at(k);
    if r < v {
        r = at(k + T::one());
    }
    r
}

/// Rounds `v > 0` upward to three significant decimal digits.
pub fn round_up_3sig<T: Scalar>(v: T) -> T {
    if v <= T::zero() {
        return v;
    }
    let exp = v.log10().floor() - lit(2.0);
    round_up_to_grid(v, lit::<T>(10.0).powf(exp))
}

/// Falling factorial `j (j-1) ... (j-n+1)` as a scalar; zero once `n > j`.
pub fn falling<T: Scalar>(j: u32, n: u32) -> T {
    if n > j {
        return T::zero();
    }
    (0..n).fold(T::one(), |acc, i| acc * int::<T>(u64::from(j - i)))
}

pub fn factorial<T: Scalar>(n: u32) -> T {
    falling(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_small_terms() {
        let mut s = NeumaierSum::<f64>::new();
        s += 1e100;
        s += 1.0;
        s += -1e100;
        assert_eq!(s.sum(), 1.0);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let xs: Vec<f64> = (0..10_000).map(|_| 0.1).collect();
        let naive: f64 = xs.iter().sum();
        let comp = compensated_sum(xs.iter().copied());
        assert!((comp - 1000.0).abs() <= (naive - 1000.0).abs());
        assert!((comp - 1000.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rounding_never_goes_below() {
        for &v in &[7.700672531225162, 9.001, 1.0, 0.0001234, 4.6271737329] {
            let r = round_up_to_grid(v, 0.001);
            assert!(r >= v);
            assert!(r - v < 0.001 + 1e-15);
        }
        assert_eq!(round_up_to_grid(7.700672531225162, 0.001), 7.701);
    }

    #[test]
    fn three_significant_digits() {
        assert_eq!(round_up_3sig(175.929_f64), 176.0);
        assert!((round_up_3sig(6790.287_f64) - 6800.0).abs() < 1e-9);
        assert!((round_up_3sig(11_527_002.2_f64) - 11_600_000.0).abs() < 1e-6);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling::<f64>(5, 3), 60.0);
        assert_eq!(falling::<f64>(2, 3), 0.0);
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f32>(6), 720.0);
    }
}
