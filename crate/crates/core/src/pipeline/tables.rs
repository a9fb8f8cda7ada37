//! Recomputation of the published tables, emitted as CSV next to the printed values.

use std::fmt::Write as _;
use std::str::FromStr;

use super::reference as r;
use crate::certify::sign::{variation_cascade, CascadeStep, SignTarget};
use crate::certify::TaylorCertificate;
use crate::error::{Error, Result};
use crate::quadrature::{q_plain, q_star, QuadratureContext, QuadratureMode};
use crate::spectral::a_rho;
use crate::trigpoly::{SignVariant, TrigSquare};

/// Step count at which the published coefficient columns were computed.
pub const TABLE_STEPS: u32 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    Maxima,
    ARho,
    Q500,
    Q400,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl TableId {
    pub const ALL: [TableId; 10] = [
        TableId::Maxima,
        TableId::ARho,
        TableId::Q500,
        TableId::Q400,
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Maxima => "maxima",
            TableId::ARho => "A_rho",
            TableId::Q500 => "Q500",
            TableId::Q400 => "Q400",
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = TableId::ALL.iter().map(|t| t.name()).collect();
                Error::InvalidInput(format!("unknown table `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A table of already formatted cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|row| row[i].as_str()).collect())
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn diff(v: f64, reference: Option<f64>) -> String {
    reference.map(|p| num((v - p).abs())).unwrap_or_default()
}

/// Coefficients `d^(j0+j)(t0)`, `j = 0..=n`, without any budget check.
#[allow(clippy::too_many_arguments)]
pub fn coefficient_certificate(
    ctx: &QuadratureContext<f64>,
    center: f64,
    radius: f64,
    base_order: u32,
    degree: u32,
    steps: u32,
    mode: QuadratureMode,
    total_delta: f64,
) -> Result<TaylorCertificate> {
    let mut coeffs = Vec::new();
    let mut errors = Vec::new();
    let mut weights = Vec::new();
    for j in 0..=degree {
        let v = ctx.d_derivative(base_order + j, center, steps, mode)?;
        coeffs.push(v.estimate);
        errors.push(v.error_bound);
        weights.push(v.weight);
    }
    let mut cert = TaylorCertificate::from_coeffs(center, radius, coeffs, total_delta);
    cert.base_order = base_order;
    cert.steps = steps;
    cert.mode = mode;
    cert.termwise_errors = errors
        .iter()
        .enumerate()
        .map(|(j, e)| e * radius.powi(j as i32) / crate::scalar::factorial::<f64>(j as u32))
        .collect();
    cert.quadrature_errors = errors;
    cert.weights = weights;
    Ok(cert)
}

/// Published certificate set-ups at the published step count.
pub fn published_certificate(ctx: &QuadratureContext<f64>, id: TableId) -> Result<TaylorCertificate> {
    use QuadratureMode::*;
    match id {
        TableId::T1 => coefficient_certificate(ctx, 5.065, 0.065, 4, 6, TABLE_STEPS, Plain, 0.187),
        TableId::T2 | TableId::T3 => coefficient_certificate(ctx, 5.23, 0.1, 1, 8, TABLE_STEPS, Refined, 0.0048),
        TableId::T4 | TableId::T5 => coefficient_certificate(ctx, 5.525, 0.195, 1, 9, TABLE_STEPS, Refined, r::T4_DELTA),
        TableId::T6 => coefficient_certificate(ctx, 5.86, 0.14, 2, 8, TABLE_STEPS, Plain, 0.2494),
        other => Err(Error::InvalidInput(format!("table {other} has no certificate"))),
    }
}

fn maxima_table(ctx: &QuadratureContext<f64>) -> Table {
    let mut t = Table::new(&["sign", "location", "value_upper", "multiplicity", "reference", "abs_diff"]);
    for (sign, published) in [(SignVariant::Plus, r::MAXIMA_PLUS), (SignVariant::Minus, r::MAXIMA_MINUS)] {
        for (i, m) in ctx.table(sign).entries.iter().enumerate() {
            let p = published.get(i).map(|e| e.1);
            t.rows.push(vec![
                sign.name().to_string(),
                num(m.location),
                num(m.value_upper),
                m.multiplicity.to_string(),
                opt(p),
                diff(m.value_upper, p),
            ]);
        }
    }
    t
}

fn a_rho_table() -> Table {
    let mut t = Table::new(&["rho", "A_rho", "reference", "abs_diff"]);
    for (rho, &p) in r::A_RHO.iter().enumerate() {
        let a = a_rho(rho as u32);
        let d = (&a - num_bigint::BigInt::from(p)).magnitude().clone();
        t.rows.push(vec![rho.to_string(), a.to_string(), p.to_string(), d.to_string()]);
    }
    t
}

fn q_table(ctx: &QuadratureContext<f64>, rows: &[(bool, u32, u32, f64)], steps: u32) -> Result<Table> {
    let mut t = Table::new(&["kind", "t", "j", "N", "value", "reference", "abs_diff"]);
    for &(star, te, j, p) in rows {
        let mut v = f64::NEG_INFINITY;
        for sign in SignVariant::BOTH {
            let spec = TrigSquare::new(ctx.k, sign);
            let q = if star {
                q_star(spec, f64::from(te), j, steps, ctx.table(sign))?
            } else {
                q_plain(spec, f64::from(te), j, steps, ctx.table(sign))?
            };
            v = v.max(q);
        }
        t.rows.push(vec![
            if star { "Q*" } else { "Q" }.to_string(),
            te.to_string(),
            j.to_string(),
            steps.to_string(),
            num(v),
            num(p),
            diff(v, Some(p)),
        ]);
    }
    Ok(t)
}

fn coefficient_table(cert: &TaylorCertificate, coeffs: &[f64], weights: &[f64]) -> Table {
    let mut t = Table::new(&[
        "j",
        "coefficient",
        "reference",
        "abs_diff",
        "weight",
        "weight_reference",
        "term_error",
    ]);
    for (j, &c) in cert.coeffs.iter().enumerate() {
        let p = coeffs.get(j).copied();
        t.rows.push(vec![
            j.to_string(),
            num(c),
            opt(p),
            diff(c, p),
            num(cert.weights[j]),
            opt(weights.get(j).copied()),
            num(cert.termwise_errors[j]),
        ]);
    }
    t
}

/// `(Var(q^(j)), I_{q^(j)})` lower bounds for `j = 0..=depth`.
fn cascade_columns(steps: &[CascadeStep], j: usize) -> (Option<f64>, Option<f64>) {
    if j == 0 {
        (steps.first().map(|s| s.prev_variation), None)
    } else {
        let s = steps.get(j - 1);
        (s.map(|s| s.variation), s.map(|s| s.integral_mean))
    }
}

fn t3_table(cert: &TaylorCertificate) -> Result<Table> {
    let steps = variation_cascade(cert, SignTarget::Positive, 5.13, 5.33, 4)?;
    let mut t = Table::new(&[
        "j", "p_5.13", "ref_5.13", "p_5.33", "ref_5.33", "var", "ref_var", "mean", "ref_mean", "abs_diff_mean",
    ]);
    for (j, row) in r::T3.iter().enumerate() {
        let pa = cert.eval_unchecked(j as u32, 5.13);
        let pb = cert.eval_unchecked(j as u32, 5.33);
        let (var, mean) = cascade_columns(&steps, j);
        t.rows.push(vec![
            j.to_string(),
            num(pa),
            num(row.0),
            num(pb),
            num(row.1),
            opt(var),
            opt(row.2),
            opt(mean),
            opt(row.3),
            mean.map(|m| diff(m, row.3)).unwrap_or_default(),
        ]);
    }
    Ok(t)
}

fn t5_table(cert: &TaylorCertificate) -> Result<Table> {
    let left = variation_cascade(cert, SignTarget::Positive, 5.33, 5.56, 2)?;
    let right = variation_cascade(cert, SignTarget::Positive, 5.56, 5.72, 1)?;
    let mut t = Table::new(&[
        "j",
        "p_5.33",
        "ref_5.33",
        "p_5.56",
        "ref_5.56",
        "p_5.72",
        "ref_5.72",
        "var_left",
        "ref_var_left",
        "mean_left",
        "ref_mean_left",
        "var_right",
        "ref_var_right",
        "mean_right",
        "ref_mean_right",
    ]);
    for (j, row) in r::T5.iter().enumerate() {
        let m = j as u32;
        let (vl, il) = cascade_columns(&left, j);
        let (vr, ir) = cascade_columns(&right, j);
        t.rows.push(vec![
            j.to_string(),
            num(cert.eval_unchecked(m, 5.33)),
            num(row.0),
            num(cert.eval_unchecked(m, 5.56)),
            num(row.1),
            num(cert.eval_unchecked(m, 5.72)),
            num(row.2),
            opt(vl),
            opt(row.3),
            opt(il),
            opt(row.4),
            opt(vr),
            opt(row.5),
            opt(ir),
            opt(row.6),
        ]);
    }
    Ok(t)
}

/// Recomputes one table.
pub fn table(id: TableId) -> Result<Table> {
    let ctx = QuadratureContext::<f64>::k5()?;
    match id {
        TableId::Maxima => Ok(maxima_table(&ctx)),
        TableId::ARho => Ok(a_rho_table()),
        TableId::Q500 => q_table(&ctx, &r::Q500, 500),
        TableId::Q400 => q_table(&ctx, &r::Q400, 400),
        TableId::T1 => Ok(coefficient_table(&published_certificate(&ctx, id)?, &r::T1_COEFFS, &r::T1_SUP4)),
        TableId::T2 => Ok(coefficient_table(&published_certificate(&ctx, id)?, &r::T2_COEFFS, &r::T2_WEIGHTS)),
        TableId::T3 => t3_table(&published_certificate(&ctx, id)?),
        TableId::T4 => Ok(coefficient_table(&published_certificate(&ctx, id)?, &r::T4_COEFFS, &r::T4_WEIGHTS)),
        TableId::T5 => t5_table(&published_certificate(&ctx, id)?),
        TableId::T6 => Ok(coefficient_table(&published_certificate(&ctx, id)?, &r::T6_COEFFS, &r::T6_SUP4)),
    }
}

/// Recomputes one table as CSV.
pub fn reproduce_table(id: TableId) -> Result<String> {
    Ok(table(id)?.to_csv())
}
