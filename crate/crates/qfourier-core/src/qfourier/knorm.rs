use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{QError, QResult};
use crate::qcore::{poch_inf_log, poch_inf_real, QContext, ScaledReal};
use crate::quadrature::{integrate_with_floor, order_floor, weight};
use crate::qtrig::cs_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KMethod {
    /// Product form times a `₂φ₁` at argument `q`.
    ClosedForm,
    /// `(∫C²w + ∫S²w)/2` by quadrature.
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KNorm {
    pub omega: f64,
    pub value: f64,
    pub method: KMethod,
}

/// `k(ω) = ½∫₀^π (C(cosθ;ω)² + S(cosθ;ω)²) w(θ) dθ`.
pub fn k_norm(omega: f64, method: KMethod, ctx: &QContext) -> QResult<KNorm> {
    let value = match method {
        KMethod::ClosedForm => k_closed(omega, ctx)?,
        KMethod::Integral => k_integral(omega, ctx)?,
    };
    Ok(KNorm { omega, value, method })
}

// π(q^{1/2};q)/(q;q) · (−q^{1/2}ω²;q)/(−qω²;q²)² · ₂φ₁(q^{1/2}, −ω²; −q^{1/2}ω²; q, q),
// using (−ω²;q)_∞ = (−ω²;q²)_∞(−qω²;q²)_∞.
fn k_closed(omega: f64, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let h = ctx.qp(0.5);
    let w2 = omega * omega;
    let lead = PI * poch_inf_real(h, q, ctx)? / poch_inf_real(q, q, ctx)?;
    let d = poch_inf_log(-q * w2, q * q, ctx)?;
    let ratio = poch_inf_log(-h * w2, q, ctx)? / (d * d);

    // positive terms; ratio of successive terms stays below q^{1/2}
    let (mut t, mut sum, mut qn) = (1.0f64, 1.0f64, 1.0f64);
    let mut n = 0;
    loop {
        t *= (1.0 - h * qn) * (1.0 + w2 * qn) / ((1.0 - q * qn) * (1.0 + h * w2 * qn)) * q;
        sum += t;
        qn *= q;
        n += 1;
        if t / (1.0 - h) < 1e-2 * ctx.tol * sum {
            break;
        }
        if n > ctx.max_terms {
            return Err(QError::Convergence { what: "k(ω) series".into(), terms: n, last: t });
        }
    }
    Ok((ratio * ScaledReal::from_real(lead * sum)).to_real())
}

/// Number of modes a frequency corresponds to: `ω ≈ q^{−n}`.
pub(crate) fn mode_index(omega: f64, ctx: &QContext) -> usize {
    if omega.abs() <= 1.0 {
        1
    } else {
        (omega.abs().ln() / -ctx.q.ln()).ceil() as usize + 1
    }
}

fn k_integral(omega: f64, ctx: &QContext) -> QResult<f64> {
    let f = |t: f64| {
        let (c, s) = cs_real(t, omega, ctx)?;
        Ok((c * c + s * s) * weight(t, ctx)?)
    };
    Ok(0.5 * integrate_with_floor(f, order_floor(mode_index(omega, ctx)), ctx)?.value)
}

/// Large-ω limit `2π(−q;q)_∞²/(−q^{1/2};q)_∞²` of `k(ω_n)`.
pub fn k_limit(ctx: &QContext) -> QResult<f64> {
    let r = poch_inf_real(-ctx.q, ctx.q, ctx)? / poch_inf_real(-ctx.qp(0.5), ctx.q, ctx)?;
    Ok(2.0 * PI * r * r)
}
