//! The integrands `H_{t,j,±} = G^t log^j G` and bounds on their fourth derivative.
//!
//! `d^(j)(t) = ∫_0^{1/2} (H_{t,j,-} - H_{t,j,+})`, so everything the quadrature
//! needs is here: `H`, its exact second derivative, and two majorants of
//! `|H^(4)|` built from the derivative bounds of [`crate::trigpoly`]. Both
//! majorants are polynomials in `ℓ = |log G|` multiplied by powers of `G`.

use serde::Serialize;

use crate::envelope::envelope_max;
use crate::error::{invalid, Error, Result};
use crate::scalar::{falling, int, lit, Scalar};
use crate::trigpoly::{sup_norm_bound, sup_norm_ceiling, SignVariant, TrigSquare};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegrandSpec<T> {
    pub t: T,
    pub j: u32,
    pub sign: SignVariant,
    pub k: u32,
}

impl<T: Scalar> IntegrandSpec<T> {
    pub fn new(t: T, j: u32, sign: SignVariant) -> Self {
        Self { t, j, sign, k: 5 }
    }

    pub fn trig(&self) -> TrigSquare {
        TrigSquare::new(self.k, self.sign)
    }

    fn require_fourth_order(&self) -> Result<()> {
        if self.t < lit(4.0) {
            return invalid(format!("fourth-derivative bounds need t >= 4, got {}", self.t));
        }
        Ok(())
    }
}

/// `G^t log^j G`, with the value 0 at `G = 0`.
pub fn h_of_g<T: Scalar>(t: T, j: u32, g: T) -> T {
    if g <= T::zero() {
        return T::zero();
    }
    g.powf(t) * g.ln().powi(j as i32)
}

pub fn eval_h<T: Scalar>(spec: &IntegrandSpec<T>, x: T) -> T {
    h_of_g(spec.t, spec.j, spec.trig().eval(x))
}

/// `H''` from the jet `(G, G', G'')`.
///
/// `H'' = G'' G^{t-1}(t L^j + j L^{j-1})
///      + G'^2 G^{t-2}(t(t-1) L^j + j(2t-1) L^{j-1} + j(j-1) L^{j-2})`
/// with `L = log G`. Terms whose integer factor vanishes are skipped, so no
/// negative power of `L` is ever formed.
pub fn h_second_from_jet<T: Scalar>(t: T, j: u32, g: T, g1: T, g2: T) -> T {
    if g <= T::zero() {
        return T::zero();
    }
    let l = g.ln();
    let jt = int::<T>(j.into());
    let lp = |p: u32| l.powi(p as i32);
    let one = T::one();
    let two = lit::<T>(2.0);

    let mut first = t * lp(j);
    if j >= 1 {
        first = first + jt * lp(j - 1);
    }
    let mut second = t * (t - one) * lp(j);
    if j >= 1 {
        second = second + jt * (two * t - one) * lp(j - 1);
    }
    if j >= 2 {
        second = second + falling::<T>(j, 2) * lp(j - 2);
    }
    g2 * g.powf(t - one) * first + g1 * g1 * g.powf(t - two) * second
}

pub fn eval_h_second<T: Scalar>(spec: &IntegrandSpec<T>, x: T) -> T {
    let (g, g1, g2) = spec.trig().jet2(x);
    h_second_from_jet(spec.t, spec.j, g, g1, g2)
}

/// One summand `c · G^{t_r} |log G|^{j_r}`, times `|G'|` when `has_gprime`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundTerm<T> {
    pub coefficient: T,
    pub t_r: T,
    pub j_r: u32,
    pub has_gprime: bool,
}

/// A pointwise majorant of `|H^(4)|` as a sum of [`BoundTerm`]s.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundTermSum<T> {
    pub terms: Vec<BoundTerm<T>>,
}

impl<T: Scalar> BoundTermSum<T> {
    pub fn eval_at(&self, g: T, g1_abs: T) -> T {
        if g <= T::zero() {
            return T::zero();
        }
        let ell = g.ln().abs();
        self.terms.iter().fold(T::zero(), |acc, term| {
            let mut v = term.coefficient * g.powf(term.t_r) * ell.powi(term.j_r as i32);
            if term.has_gprime {
                v = v * g1_abs;
            }
            acc + v
        })
    }

    pub fn eval(&self, spec: TrigSquare, x: T) -> T {
        let (g, g1, _) = spec.jet2(x);
        self.eval_at(g, g1.abs())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Multipliers of the `G`-power groups in the two `|H^(4)|` majorants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct H4Constants<T> {
    /// `M1^4, 6 M1^2 M2, M4, 3 M2^2 + 4 M1 M3` for `v^{t-4}, v^{t-3}, v^{t-1}, v^{t-2}`.
    pub scalar: [T; 4],
    /// `M1^3, 6 M1 M2, 4 M3` (with `|G'|`), then `3 M2^2, M4` (without).
    pub refined: [T; 5],
}

/// Published values of [`H4Constants`] at `k = 5`.
pub const H4_PRINTED_SCALAR: [f64; 4] = [959_512_576.0, 1_263_820_800.0, 11_600_000.0, 335_840_000.0];
pub const H4_PRINTED_REFINED: [f64; 5] = [5_451_776.0, 7_180_800.0, 1_120_000.0, 138_720_000.0, 11_600_000.0];

impl<T: Scalar> H4Constants<T> {
    fn from_m(m: [T; 5]) -> Self {
        let [_, m1, m2, m3, m4] = m;
        let (three, four, six) = (lit::<T>(3.0), lit::<T>(4.0), lit::<T>(6.0));
        Self {
            scalar: [
                m1.powi(4),
                six * m1 * m1 * m2,
                m4,
                three * m2 * m2 + four * m1 * m3,
            ],
            refined: [m1.powi(3), six * m1 * m2, four * m3, three * m2 * m2, m4],
        }
    }

    /// Built from the rounded ceilings `176, 6800, 280000, 11600000`.
    pub fn from_ceilings(k: u32) -> Self {
        Self::from_m(std::array::from_fn(|m| sup_norm_ceiling::<T>(k, m as u32)))
    }

    /// Built from the unrounded `M_m`.
    pub fn from_exact_bounds(k: u32) -> Self {
        Self::from_m(std::array::from_fn(|m| sup_norm_bound::<T>(k, m as u32).value))
    }

    /// Fails unless every constant is at most its published counterpart.
    pub fn check_against_printed(&self) -> Result<()> {
        let pairs = self
            .scalar
            .iter()
            .zip(H4_PRINTED_SCALAR)
            .chain(self.refined.iter().zip(H4_PRINTED_REFINED));
        for (&ours, printed) in pairs {
            let v = ours.to_f64().unwrap_or(f64::NAN);
            if !(v <= printed) {
                return Err(Error::Internal(format!("constant {v} exceeds printed {printed}")));
            }
        }
        Ok(())
    }
}

/// Polynomial groups in `ℓ` shared by both majorants, as `(factor, ℓ power)`.
/// Order: the `G^{t-4}`, `G^{t-3}`, `G^{t-2}` and `G^{t-1}` braces.
fn ell_groups<T: Scalar>(t: T, j: u32) -> [Vec<(T, u32)>; 4] {
    let ff = |n: u32| falling::<T>(j, n);
    let jt = int::<T>(j.into());
    let c = |v: f64| lit::<T>(v);
    let one = T::one();
    let t2 = t * t;
    let t3 = t2 * t;
    let pw = |n: u32| j.checked_sub(n);

    let raw: [Vec<(T, Option<u32>)>; 4] = [
        vec![
            (ff(4), pw(4)),
            ((c(4.0) * t - c(6.0)) * ff(3), pw(3)),
            ((c(6.0) * t2 - c(18.0) * t + c(11.0)) * ff(2), pw(2)),
            (c(2.0) * (c(2.0) * t3 - c(9.0) * t2 + c(11.0) * t - c(3.0)) * jt, pw(1)),
            (t * (t - one) * (t - c(2.0)) * (t - c(3.0)), Some(j)),
        ],
        vec![
            (ff(3), pw(3)),
            (c(3.0) * (t - one) * ff(2), pw(2)),
            ((c(3.0) * t2 - c(6.0) * t + c(2.0)) * jt, pw(1)),
            (t * (t - one) * (t - c(2.0)), Some(j)),
        ],
        vec![
            (ff(2), pw(2)),
            ((c(2.0) * t - one) * jt, pw(1)),
            (t * (t - one), Some(j)),
        ],
        vec![(jt, pw(1)), (t, Some(j))],
    ];
    raw.map(|g| {
        g.into_iter()
            .filter_map(|(f, p)| match p {
                Some(p) if f != T::zero() => Some((f.abs(), p)),
                _ => None,
            })
            .collect()
    })
}

/// `sup |H^(4)|` via the scalar majorant, each `v^s ℓ^m` term maximized over
/// `[0, 9]` separately and the maxima summed.
pub fn h4_sup_bound<T: Scalar>(spec: &IntegrandSpec<T>) -> Result<T> {
    h4_sup_bound_with(spec, &H4Constants::from_ceilings(spec.k))
}

pub fn h4_sup_bound_with<T: Scalar>(spec: &IntegrandSpec<T>, consts: &H4Constants<T>) -> Result<T> {
    spec.require_fourth_order()?;
    let groups = ell_groups(spec.t, spec.j);
    let offsets = [4.0, 3.0, 2.0, 1.0];
    // group order in `scalar` is t-4, t-3, t-1, t-2
    let mult = [consts.scalar[0], consts.scalar[1], consts.scalar[3], consts.scalar[2]];
    let nine = lit::<T>(9.0);
    let mut total = T::zero();
    for ((group, off), c) in groups.iter().zip(offsets).zip(mult) {
        let s = spec.t - lit(off);
        for &(f, p) in group {
            total = total + c * f * envelope_max(s, p, T::zero(), nine)?;
        }
    }
    Ok(total)
}

/// The refined majorant with one factor `|G'|` kept unestimated, expanded into terms.
pub fn h4_term_bounds<T: Scalar>(spec: &IntegrandSpec<T>) -> Result<BoundTermSum<T>> {
    h4_term_bounds_with(spec, &H4Constants::from_ceilings(spec.k))
}

/// Group of `(factor, log power)` terms, its constant, exponent offset, and whether it carries `G'`.
type PlanRow<'a, T> = (&'a [(T, u32)], T, f64, bool);

/// [`h4_term_bounds`] with explicit constants.
pub fn h4_term_bounds_with<T: Scalar>(
    spec: &IntegrandSpec<T>,
    consts: &H4Constants<T>,
) -> Result<BoundTermSum<T>> {
    spec.require_fourth_order()?;
    let [a, b, c, d] = ell_groups(spec.t, spec.j);
    let [r0, r1, r2, r3, r4] = consts.refined;
    let t = spec.t;
    let plan: [PlanRow<'_, T>; 5] = [
        (&a[..], r0, 4.0, true),
        (&b[..], r1, 3.0, true),
        (&c[..], r2, 2.0, true),
        (&c[..], r3, 2.0, false),
        (&d[..], r4, 1.0, false),
    ];
    let mut terms = Vec::new();
    for (group, mult, off, has_gprime) in plan {
        for &(f, p) in group {
            terms.push(BoundTerm {
                coefficient: mult * f,
                t_r: t - lit(off),
                j_r: p,
                has_gprime,
            });
        }
    }
    Ok(BoundTermSum { terms })
}
