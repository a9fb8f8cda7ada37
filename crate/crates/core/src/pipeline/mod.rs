//! The full run for `k = 5`: identities at the ends, signs of `d', d'', d'''`
//! at 5, and four Taylor certificates covering `[5, 6]`.

pub mod config;
pub mod reference;
pub mod report;
pub mod tables;

use crate::certify::sign::{certify_sign, check_sign_chain, check_sign_variation, SignTarget};
use crate::certify::{build_certificate, remainder_bound, required_steps};
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureContext, QuadratureMode};
use crate::spectral::endpoint_difference_zero;

pub use config::{CheckMethod, EndpointStage, ProofConfig, SignCheck, TaylorStage};
pub use report::{emit_report, ProofReport, ReportFormat, StageReport, StageStatus, Verdict, Warning};
pub use tables::{reproduce_table, TableId};

/// Relative gap above which a recomputed remainder is reported against the published one.
const REMAINDER_REPORT_TOLERANCE: f64 = 1e-3;

fn environment() -> String {
    format!(
        "majorant-core {}; IEEE-754 binary64 with compensated sums; {}-{}",
        env!("CARGO_PKG_VERSION"),
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

fn identity_stage(k: u32) -> StageReport {
    let mut st = StageReport::new(format!("d({k}) = d({}) = 0", k + 1));
    if endpoint_difference_zero(k) {
        st.status = StageStatus::Certified;
        st.estimate = Some(0.0);
        st.error_bound = Some(0.0);
        st
    } else {
        st.fail("Parseval integrals of the two powers differ")
    }
}

fn endpoint_stage(ctx: &QuadratureContext<f64>, stage: &EndpointStage) -> StageReport {
    let st = StageReport::new(stage.name.clone());
    match ctx.d_derivative(stage.order, stage.t, stage.steps, stage.mode) {
        Ok(v) => {
            let margin = v.estimate - v.error_bound;
            let mut st = StageReport {
                estimate: Some(v.estimate),
                error_bound: Some(v.error_bound),
                margin: Some(margin),
                value: Some(v),
                ..st
            };
            if margin > 0.0 {
                st.status = StageStatus::Certified;
                st
            } else {
                st.fail(format!("certified error {} swamps the estimate", v.error_bound))
            }
        }
        Err(e) => st.fail(e.to_string()),
    }
}

fn step_warnings(stage: &TaylorStage, weights: &[f64]) -> Result<Vec<Warning>> {
    let mut out = Vec::new();
    let c = &stage.certificate;
    if let Some(published) = &stage.reference_steps {
        // the step formula is stated for the plain fourth-derivative bound
        if c.mode == QuadratureMode::Plain {
            for (j, (&w, &p)) in weights.iter().zip(published).enumerate() {
                let need = required_steps(w, c.budgets[j], c.radius, j as u32)?;
                if need != p {
                    out.push(Warning {
                        code: "required_steps".into(),
                        message: format!("term {j}: published N* = {p}, the step formula gives {need}"),
                        index: Some(j),
                        published: p as f64,
                        recomputed: need as f64,
                    });
                }
            }
        }
    }
    if let Some(published) = stage.reference_remainder {
        let rem = remainder_bound(c.center, c.radius, c.base_order, c.degree)?;
        if (rem - published).abs() > REMAINDER_REPORT_TOLERANCE * published.abs() {
            out.push(Warning {
                code: "remainder".into(),
                message: format!("published remainder bound {published}, recomputed {rem}"),
                index: None,
                published,
                recomputed: rem,
            });
        }
    }
    Ok(out)
}

fn taylor_stage(ctx: &QuadratureContext<f64>, stage: &TaylorStage) -> Result<StageReport> {
    let st = StageReport::new(stage.name.clone());
    let cert = match build_certificate(ctx, &stage.certificate) {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => return Ok(st.fail(e.to_string())),
        Err(Error::InvalidInput(msg)) => return Ok(st.fail(msg)),
        Err(e) => return Err(e),
    };
    let mut st = StageReport {
        warnings: step_warnings(stage, &cert.weights)?,
        ..st
    };
    let mut ok = true;
    let mut margin = f64::INFINITY;
    let mut estimate = f64::INFINITY;
    for ch in &stage.checks {
        let sc = match ch.method {
            CheckMethod::Chain => check_sign_chain(&cert, ch.target, ch.a, ch.b)?,
            CheckMethod::Cascade => check_sign_variation(&cert, ch.target, ch.a, ch.b)?,
            CheckMethod::Auto => certify_sign(&cert, ch.target, ch.a, ch.b)?,
        };
        ok &= sc.is_certified();
        // signed value of the polynomial at the nearer-to-zero end
        let s = match ch.target {
            SignTarget::Positive => 1.0,
            SignTarget::Negative => -1.0,
        };
        let ends = (s * cert.eval_unchecked(0, ch.a)).min(s * cert.eval_unchecked(0, ch.b));
        estimate = estimate.min(ends);
        margin = margin.min(ends - cert.total_delta);
        st.sign_checks.push(sc);
    }
    st.estimate = Some(estimate);
    st.error_bound = Some(cert.total_delta);
    st.margin = Some(margin);
    st.certificate = Some(cert);
    if ok {
        st.status = StageStatus::Certified;
        Ok(st)
    } else {
        Ok(st.fail("sign of the polynomial not certified on every subinterval"))
    }
}

/// Runs every stage of the configuration; the verdict is PROVED iff all are certified.
pub fn prove_k5(config: &ProofConfig) -> Result<ProofReport> {
    config.validate()?;
    let ctx = QuadratureContext::<f64>::new(config.k)?;
    let mut stages = vec![identity_stage(config.k)];
    for e in &config.endpoint {
        stages.push(endpoint_stage(&ctx, e));
    }
    for t in &config.taylor {
        stages.push(taylor_stage(&ctx, t)?);
    }
    let verdict = if stages.iter().all(StageReport::is_certified) {
        Verdict::Proved
    } else {
        Verdict::Inconclusive
    };
    Ok(ProofReport {
        version: report::SCHEMA_VERSION,
        case: format!("k={}", config.k),
        verdict,
        stages,
        environment: environment(),
        config_hash: config.hash()?,
    })
}
