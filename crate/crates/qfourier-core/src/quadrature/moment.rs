use std::f64::consts::PI;

use super::{integrate, pair_ratio};
use crate::error::QResult;
use crate::qcore::{poch_inf_real, QContext};

/// `2π(q^{2n+2};q)_∞ / (q, −q^{n+1/2}, q^{n+1}, −q^{n+1}, q^{n+1}, −q^{n+1}, −q^{n+3/2};q)_∞`.
pub fn askey_wilson_moment(n: usize, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let nf = n as f64;
    let p = |a: f64| poch_inf_real(a, q, ctx);
    let qn1 = ctx.qp(nf + 1.0);
    let den = p(q)? * p(-ctx.qp(nf + 0.5))? * p(qn1)?.powi(2) * p(-qn1)?.powi(2) * p(-ctx.qp(nf + 1.5))?;
    Ok(2.0 * PI * p(ctx.qp(2.0 * nf + 2.0))? / den)
}

/// `(e^{2iθ}, e^{−2iθ};q)_∞/(q^{n+1/2}e^{2iθ}, q^{n+1/2}e^{−2iθ};q)_∞`.
pub fn askey_wilson_integrand(theta: f64, n: usize, ctx: &QContext) -> QResult<f64> {
    let s = theta.sin();
    if s == 0.0 {
        return Ok(0.0);
    }
    let b = ctx.qp(n as f64 + 0.5);
    let head = 4.0 * s * s / (1.0 - 2.0 * b * (2.0 * theta).cos() + b * b);
    Ok(head * pair_ratio(theta, ctx.q, b * ctx.q, ctx)?)
}

/// The moment by quadrature of [`askey_wilson_integrand`].
pub fn askey_wilson_moment_numeric(n: usize, ctx: &QContext) -> QResult<f64> {
    Ok(integrate(|t| askey_wilson_integrand(t, n, ctx), ctx)?.value)
}

/// `n,closed,numeric` rows for `n = 0..=n_max`, 17 significant digits.
pub fn moment_table_csv(n_max: usize, ctx: &QContext) -> QResult<String> {
    let mut out = String::from("n,closed,numeric\n");
    for n in 0..=n_max {
        let c = askey_wilson_moment(n, ctx)?;
        let v = askey_wilson_moment_numeric(n, ctx)?;
        out.push_str(&format!("{n},{c:.16e},{v:.16e}\n"));
    }
    Ok(out)
}
