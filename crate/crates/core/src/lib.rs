//! Certified numerics for comparing the `L^p` norms of `1 + e(x) + e(7x)` and
//! `1 + e(x) - e(7x)` for `10 < p < 12`.
//!
//! With `G_± = |1 + e(x) ± e(7x)|^2` and
//! `d(t) = ∫_0^{1/2} (G_-^t - G_+^t)`, the claim is `d > 0` on `(5, 6)`.
//! The crate provides the pieces of a computer-assisted argument for it:
//!
//! * [`trigpoly`]: evaluation of `G_±`, derivative bounds, maxima, variation;
//! * [`spectral`]: exact Parseval integrals of integer powers of `G`;
//! * [`envelope`]: maxima of `v^s |log v|^m` on intervals;
//! * [`integrand`]: `G^t log^j G`, its second derivative and fourth-derivative envelopes;
//! * [`quadrature`]: the fourth-order midpoint rule with two kinds of certified error;
//! * [`certify`]: Taylor certificates for `d^(j)` and sign certification of polynomials;
//! * [`pipeline`]: the full proof run, report emission and table reproduction.
//!
//! Floating-point kernels are generic over [`Scalar`]; the aliases below fix
//! them at `f64` (used by the proof) or `f32`.

// `!(x > 0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod envelope;
pub mod error;
pub mod integrand;
pub mod pipeline;
pub mod quadrature;
pub mod scalar;
pub mod spectral;
pub mod trigpoly;

pub use error::{Error, Result};
pub use scalar::{NeumaierSum, Scalar};
pub use trigpoly::{SignVariant, TrigSquare};

pub type LocalMaxTable = trigpoly::LocalMaxTable<f64>;
pub type LocalMaxTableF32 = trigpoly::LocalMaxTable<f32>;
pub type LocalMaximum = trigpoly::LocalMaximum<f64>;
pub type DerivSupBound = trigpoly::DerivSupBound<f64>;
pub type IntegrandSpec = integrand::IntegrandSpec<f64>;
pub type IntegrandSpecF32 = integrand::IntegrandSpec<f32>;
pub type BoundTermSum = integrand::BoundTermSum<f64>;
pub type BoundTermSumF32 = integrand::BoundTermSum<f32>;
pub type CertifiedValue = quadrature::CertifiedValue<f64>;
pub type CertifiedValueF32 = quadrature::CertifiedValue<f32>;
pub type QuadratureContext = quadrature::QuadratureContext<f64>;
pub type QuadratureContextF32 = quadrature::QuadratureContext<f32>;

pub use certify::sign::{SignCertificate, SignMethod, SignOutcome, SignTarget};
pub use certify::TaylorCertificate;
pub use pipeline::{ProofConfig, ProofReport, Verdict};
pub use spectral::CoefficientVector;
