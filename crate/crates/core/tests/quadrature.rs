use majorant_core::integrand::IntegrandSpec;
use majorant_core::quadrature::{midpoint4_integrate, midpoint_oracle, QuadratureContext, QuadratureMode};
use majorant_core::SignVariant;

const ORACLE_STEPS: u32 = 1_000_000;

/// `(t, j, steps, mode)` for every integral the default proof computes.
fn pipeline_integrals() -> Vec<(f64, u32, u32, QuadratureMode)> {
    use QuadratureMode::*;
    let mut v = vec![(5.0, 1, 500, Refined), (5.0, 2, 400, Refined), (5.0, 3, 500, Plain)];
    v.extend((4..=10).map(|j| (5.065, j, 700, Plain)));
    v.extend((1..=9).map(|j| (5.23, j, 500, Refined)));
    v.extend((1..=10).map(|j| (5.525, j, 500, Refined)));
    v.extend((2..=10).map(|j| (5.86, j, 700, Plain)));
    v
}

#[test]
fn certified_integrals_contain_the_dense_oracle() {
    let ctx = QuadratureContext::<f64>::k5().unwrap();
    for (t, j, steps, mode) in pipeline_integrals() {
        for sign in SignVariant::BOTH {
            let spec = IntegrandSpec::new(t, j, sign);
            let v = ctx.integrate_h(&spec, steps, mode).unwrap();
            let oracle = midpoint_oracle(&spec, ORACLE_STEPS);
            let gap = (v.estimate - oracle).abs();
            assert!(
                gap <= v.error_bound + 1e-12 * oracle.abs(),
                "t={t} j={j} {sign:?} N={steps} {mode}: |{} - {oracle}| = {gap} > {}",
                v.estimate,
                v.error_bound
            );
        }
    }
}

#[test]
fn fourth_order_rule_exact_on_low_trig_polynomials() {
    // ∫_0^{1/2} cos^2(2π x) = 1/4
    let f = |x: f64| (2.0 * std::f64::consts::PI * x).cos().powi(2);
    let f2 = |x: f64| -8.0 * std::f64::consts::PI.powi(2) * (4.0 * std::f64::consts::PI * x).cos();
    let v = midpoint4_integrate(f, f2, 10, 0.0).unwrap();
    assert!((v.estimate - 0.25).abs() < 1e-14);
}

#[test]
fn error_decays_at_the_advertised_rate() {
    let ctx = QuadratureContext::<f64>::k5().unwrap();
    let spec = IntegrandSpec::new(5.3, 2, SignVariant::Minus);
    let e = |n, m| ctx.integrate_h(&spec, n, m).unwrap().error_bound;
    let plain = e(200, QuadratureMode::Plain) / e(400, QuadratureMode::Plain);
    assert!((plain - 16.0).abs() < 1e-9);
    // W grows linearly in N, so the refined bound drops by about 2^4
    let refined = e(200, QuadratureMode::Refined) / e(400, QuadratureMode::Refined);
    assert!(refined > 15.0 && refined < 33.0, "{refined}");
    assert!(e(500, QuadratureMode::Refined) < e(500, QuadratureMode::Plain));
}

#[test]
fn reduction_is_independent_of_thread_count() {
    let ctx = QuadratureContext::<f64>::k5().unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ctx.d_derivative(2, 5.5, 997, QuadratureMode::Refined).unwrap())
    };
    let a = run(1);
    for threads in [2, 3, 8] {
        let b = run(threads);
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.error_bound.to_bits(), b.error_bound.to_bits());
    }
}

#[test]
fn step_bounds_enforced() {
    let ctx = QuadratureContext::<f64>::k5().unwrap();
    let spec = IntegrandSpec::new(5.0, 1, SignVariant::Plus);
    assert!(ctx.integrate_h(&spec, 0, QuadratureMode::Plain).is_err());
    assert!(ctx.integrate_h(&spec, 2_000_000, QuadratureMode::Plain).is_err());
}
