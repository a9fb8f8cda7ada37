use majorant_core::integrand::{
    eval_h, eval_h_second, h4_sup_bound, h4_term_bounds, H4Constants, IntegrandSpec, H4_PRINTED_REFINED,
    H4_PRINTED_SCALAR,
};
use majorant_core::SignVariant;
use proptest::prelude::*;

/// Second-order jet `(f, f', f'')` for forward-mode differentiation.
#[derive(Clone, Copy)]
struct Jet(f64, f64, f64);

impl Jet {
    fn add(self, o: Jet) -> Jet {
        Jet(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
    fn scale(self, c: f64) -> Jet {
        Jet(c * self.0, c * self.1, c * self.2)
    }
    fn mul(self, o: Jet) -> Jet {
        Jet(self.0 * o.0, self.1 * o.0 + self.0 * o.1, self.2 * o.0 + 2.0 * self.1 * o.1 + self.0 * o.2)
    }
    /// `φ ∘ self` given `φ, φ', φ''` at the value.
    fn compose(self, p0: f64, p1: f64, p2: f64) -> Jet {
        Jet(p0, p1 * self.1, p2 * self.1 * self.1 + p1 * self.2)
    }
}

/// `H = G^t log^j G` differentiated through the trinomial `|1 + e(x) ± e(7x)|^2`.
fn jet_h_second(sign: SignVariant, t: f64, j: u32, x: f64) -> f64 {
    let s = sign.factor::<f64>();
    let tau = 2.0 * std::f64::consts::PI;
    let cos = |a: f64| Jet((a * x).cos(), -a * (a * x).sin(), -a * a * (a * x).cos());
    let sin = |a: f64| Jet((a * x).sin(), a * (a * x).cos(), -a * a * (a * x).sin());
    let re = Jet(1.0, 0.0, 0.0).add(cos(tau)).add(cos(7.0 * tau).scale(s));
    let im = sin(tau).add(sin(7.0 * tau).scale(s));
    let g = re.mul(re).add(im.mul(im));
    let v = g.0;
    let pow = g.compose(v.powf(t), t * v.powf(t - 1.0), t * (t - 1.0) * v.powf(t - 2.0));
    let log = g.compose(v.ln(), 1.0 / v, -1.0 / (v * v));
    let mut out = pow;
    for _ in 0..j {
        out = out.mul(log);
    }
    out.2
}

fn sign_strategy() -> impl Strategy<Value = SignVariant> {
    prop_oneof![Just(SignVariant::Plus), Just(SignVariant::Minus)]
}

/// Second difference with one Richardson step.
fn second_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Exponents and log orders that occur in the proof.
fn pipeline_specs() -> Vec<(f64, u32)> {
    let mut v = vec![(5.0, 1), (5.0, 2), (5.0, 3)];
    v.extend((4..=10).map(|j| (5.065, j)));
    v.extend((1..=9).map(|j| (5.23, j)));
    v.extend((1..=10).map(|j| (5.525, j)));
    v.extend((2..=10).map(|j| (5.86, j)));
    v
}

#[test]
fn ceiling_constants_equal_published() {
    let c = H4Constants::<f64>::from_ceilings(5);
    assert_eq!(c.scalar, H4_PRINTED_SCALAR);
    assert_eq!(c.refined, H4_PRINTED_REFINED);
}

#[test]
fn fourth_derivative_dominated_pointwise_and_globally() {
    for (t, j) in pipeline_specs() {
        for sign in SignVariant::BOTH {
            let spec = IntegrandSpec::new(t, j, sign);
            let sup4 = h4_sup_bound(&spec).unwrap();
            let terms = h4_term_bounds(&spec).unwrap();
            for i in 1..2000 {
                let x = f64::from(i) / 4000.0;
                let h = 1e-4;
                let fd4 = second_difference(|y| eval_h_second(&spec, y), x, h);
                let pointwise = terms.eval(spec.trig(), x);
                let slack = 1e-6 * sup4;
                assert!(fd4.abs() <= pointwise + slack, "t={t} j={j} {sign:?} x={x}: {fd4} > {pointwise}");
                assert!(pointwise <= sup4 * (1.0 + 1e-12));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn second_derivative_matches_finite_differences(
        sign in sign_strategy(),
        t in 4.0f64..7.0,
        j in 0u32..=10,
        x in 0.0f64..0.5,
    ) {
        let spec = IntegrandSpec::new(t, j, sign);
        // well-conditioned: G away from 0 and from 1 (where log G vanishes)
        let g = spec.trig().eval(x);
        prop_assume!(g > 0.2 && g.ln().abs() > 0.3);
        let exact = eval_h_second(&spec, x);
        // the difference quotient must be self-consistent across step sizes
        let coarse = second_difference(|y| eval_h(&spec, y), x, 4e-4);
        let fd = second_difference(|y| eval_h(&spec, y), x, 2e-4);
        prop_assume!((coarse - fd).abs() <= 1e-7 * fd.abs());
        prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs(), "{} vs {}", fd, exact);
    }

    #[test]
    fn second_derivative_matches_jet_oracle(
        sign in sign_strategy(),
        t in 4.0f64..7.0,
        j in 0u32..=10,
        x in 0.0f64..0.5,
    ) {
        let spec = IntegrandSpec::new(t, j, sign);
        prop_assume!(spec.trig().eval(x) > 1e-3);
        let exact = eval_h_second(&spec, x);
        let jet = jet_h_second(sign, t, j, x);
        let scale = jet.abs().max(eval_h(&spec, x).abs() * 1e3).max(1e-300);
        prop_assert!((exact - jet).abs() <= 1e-9 * scale, "{} vs {}", exact, jet);
    }

    #[test]
    fn scalar_bound_dominates_term_sum(sign in sign_strategy(), t in 4.0f64..7.0, j in 0u32..=12) {
        let spec = IntegrandSpec::new(t, j, sign);
        let sup4 = h4_sup_bound(&spec).unwrap();
        let terms = h4_term_bounds(&spec).unwrap();
        for i in 0..=200 {
            let x = f64::from(i) / 400.0;
            prop_assert!(terms.eval(spec.trig(), x) <= sup4 * (1.0 + 1e-12));
        }
    }
}

#[test]
fn low_exponents_rejected() {
    let spec = IntegrandSpec::new(3.5, 1, SignVariant::Plus);
    assert!(h4_sup_bound(&spec).is_err());
    assert!(h4_term_bounds(&spec).is_err());
}
