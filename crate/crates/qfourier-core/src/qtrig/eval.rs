use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dd;
use super::hermite::{cs_numerators, hermite_parts};
use super::LatticePoint;
use crate::error::{domain, QResult};
use crate::qcore::{basic_hyper, poch_inf_log, poch_inf_real, qpochhammer, HyperSeriesSpec, Order, ScaledReal};
use crate::QContext;

/// How `C_q`, `S_q` are summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrigRepresentation {
    /// `₂φ₁` in base `q²` with argument `−ω²`; needs `|ω| < 1`.
    SeriesPhi21,
    /// `₂φ₂` continuation, entire in `ω` but cancellation-prone for large `ω`.
    ContinuedPhi22,
    /// q-Hermite generating series.
    HermiteSeries,
    /// `SeriesPhi21` below [`AUTO_SERIES_LIMIT`], `HermiteSeries` above.
    Auto,
}

pub const AUTO_SERIES_LIMIT: f64 = 0.9;

#[derive(Clone, Copy)]
enum Which {
    Cos,
    Sin,
}

fn c1(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn resolve(rep: TrigRepresentation, omega: Complex64) -> TrigRepresentation {
    match rep {
        TrigRepresentation::Auto if omega.norm() < AUTO_SERIES_LIMIT => TrigRepresentation::SeriesPhi21,
        TrigRepresentation::Auto => TrigRepresentation::HermiteSeries,
        r => r,
    }
}

fn phi21(p: &LatticePoint, w: Complex64, which: Which, ctx: &QContext) -> QResult<Complex64> {
    if w.norm() >= 1.0 {
        return domain(format!("the 2phi1 form needs |omega| < 1, got {}", w.norm()));
    }
    if let (Some(theta), true) = (p.theta(), w.im == 0.0) {
        let (c, s) = cs_real(theta, w.re, ctx)?;
        return Ok(c1(match which {
            Which::Cos => c,
            Which::Sin => s,
        }));
    }
    let (q, u2) = (ctx.q, p.u() * p.u());
    let w2 = w * w;
    let pre = qpochhammer(-w2, q * q, Order::Infinite, ctx)? / qpochhammer(-q * w2, q * q, Order::Infinite, ctx)?;
    let spec = |a: f64, b: f64| {
        HyperSeriesSpec::new(vec![-a * u2, -a / u2], vec![c1(b)], q * q, -w2)
    };
    Ok(match which {
        Which::Cos => pre * basic_hyper(&spec(q, q), ctx)?.value,
        Which::Sin => {
            let lead = 2.0 * q.powf(0.25) * w / (1.0 - q) * p.x();
            pre * lead * basic_hyper(&spec(q * q, q * q * q), ctx)?.value
        }
    })
}

fn phi22(p: &LatticePoint, w: Complex64, which: Which, ctx: &QContext) -> QResult<Complex64> {
    if let (Some(theta), true) = (p.theta(), w.im == 0.0) {
        let (c, s) = phi22_real(theta.cos(), w.re, ctx)?;
        return Ok(c1(match which {
            Which::Cos => c,
            Which::Sin => s,
        }));
    }
    let (q, u2) = (ctx.q, p.u() * p.u());
    let w2 = w * w;
    let b2 = q * q;
    let poch = |a: Complex64| qpochhammer(a, b2, Order::Infinite, ctx);
    // shift = 1 for C, 2 for S
    let (k, lead, z) = match which {
        Which::Cos => (q, c1(1.0), q),
        Which::Sin => (q * q, 2.0 * q.powf(0.25) * w / (1.0 - q) * p.x(), q * q * q),
    };
    let (d1, d2) = (k * w2 * u2, k * w2 / u2);
    let pre = poch(d1)? * poch(d2)? / (poch(c1(z))? * poch(-q * w2)?);
    let spec = HyperSeriesSpec::new(vec![-w2, -q * w2], vec![d1, d2], b2, c1(z));
    Ok(pre * lead * basic_hyper(&spec, ctx)?.value)
}

fn hermite(p: &LatticePoint, w: Complex64, which: Which, ctx: &QContext) -> QResult<Complex64> {
    let i = Complex64::i();
    if let (Some(theta), true) = (p.theta(), w.im == 0.0) {
        let (c, s) = hermite_cs(theta.cos(), w.re, ctx)?;
        return Ok(c1(match which {
            Which::Cos => c,
            Which::Sin => s,
        }));
    }
    let (even, odd) = hermite_parts(p.x(), i * w, ctx)?;
    let den = qpochhammer(-ctx.q * w * w, ctx.q * ctx.q, Order::Infinite, ctx)?;
    Ok(match which {
        Which::Cos => even / den,
        Which::Sin => odd / (i * den),
    })
}

fn eval(p: &LatticePoint, w: Complex64, rep: TrigRepresentation, which: Which, ctx: &QContext) -> QResult<Complex64> {
    if w.norm() == 0.0 {
        return Ok(c1(match which {
            Which::Cos => 1.0,
            Which::Sin => 0.0,
        }));
    }
    match resolve(rep, w) {
        TrigRepresentation::SeriesPhi21 => phi21(p, w, which, ctx),
        TrigRepresentation::ContinuedPhi22 => phi22(p, w, which, ctx),
        _ => hermite(p, w, which, ctx),
    }
}

/// `C_q(x;ω)`.
pub fn eval_c(p: &LatticePoint, omega: Complex64, rep: TrigRepresentation, ctx: &QContext) -> QResult<Complex64> {
    eval(p, omega, rep, Which::Cos, ctx)
}

/// `S_q(x;ω)`.
pub fn eval_s(p: &LatticePoint, omega: Complex64, rep: TrigRepresentation, ctx: &QContext) -> QResult<Complex64> {
    eval(p, omega, rep, Which::Sin, ctx)
}

/// `𝓔_q(x;α)`. With `ω = −iα` this is `C_q(x;ω) + i S_q(x;ω)`; the
/// Hermite representation sums `e(x,α)/(qα²;q²)_∞` directly.
pub fn eval_e(p: &LatticePoint, alpha: Complex64, rep: TrigRepresentation, ctx: &QContext) -> QResult<Complex64> {
    let i = Complex64::i();
    let w = -i * alpha;
    if rep == TrigRepresentation::HermiteSeries {
        let (even, odd) = hermite_parts(p.x(), alpha, ctx)?;
        let den = qpochhammer(ctx.q * alpha * alpha, ctx.q * ctx.q, Order::Infinite, ctx)?;
        return Ok((even + odd) / den);
    }
    Ok(eval_c(p, w, rep, ctx)? + i * eval_s(p, w, rep, ctx)?)
}

/// `(C_q(cosθ;ω), S_q(cosθ;ω))` for real `θ`, `ω`: the hot path used by
/// quadrature. `|ω| < 0.9` goes through `₂φ₁`, larger `ω` through the
/// scaled Hermite series, both summed in double-double.
pub fn cs_real(theta: f64, omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    if omega == 0.0 {
        return Ok((1.0, 0.0));
    }
    let x = theta.cos();
    if omega.abs() < AUTO_SERIES_LIMIT {
        let q = ctx.q;
        let w2 = omega * omega;
        let pre = poch_inf_real(-w2, q * q, ctx)? / poch_inf_real(-q * w2, q * q, ctx)?;
        let (c, s) = dd::phi21_real(dd::dd(x), omega, ctx)?;
        let lead = 2.0 * q.powf(0.25) * omega / (1.0 - q) * x;
        return Ok((pre * c, pre * lead * s));
    }
    hermite_cs(x, omega, ctx)
}

// real θ: |(kω²u²;q²)_∞|² is a product of positive reals
fn phi22_real(x: f64, omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    let q = ctx.q;
    let (q2, w2, s2) = (q * q, omega * omega, 4.0 * x * x - 2.0);
    let pair = |k: f64| -> QResult<ScaledReal> {
        let mut p = ScaledReal::ONE;
        let mut a = k * w2;
        let mut n = 0;
        while a >= 1e-2 * ctx.tol {
            p = p * ScaledReal::from_real(1.0 - a * s2 + a * a);
            a *= q2;
            n += 1;
            if n > ctx.max_terms {
                return Err(crate::QError::Convergence { what: "2phi2 prefactor".into(), terms: n, last: a });
            }
        }
        Ok(p)
    };
    let den = poch_inf_log(-q * w2, q2, ctx)?;
    let pc = pair(q)? / (den * ScaledReal::from_real(poch_inf_real(q, q2, ctx)?));
    let ps = pair(q2)? / (den * ScaledReal::from_real(poch_inf_real(q * q2, q2, ctx)?));
    let (c, s) = dd::phi22_real(dd::dd(x), omega, ctx)?;
    let lead = 2.0 * q.powf(0.25) * omega / (1.0 - q) * x;
    Ok(((pc * ScaledReal::from_real(c)).to_real(), (ps * ScaledReal::from_real(lead * s)).to_real()))
}

fn hermite_cs(x: f64, omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    if omega == 0.0 {
        return Ok((1.0, 0.0));
    }
    let num = cs_numerators(x, omega, ctx)?;
    let den = poch_inf_log(-ctx.q * omega * omega, ctx.q * ctx.q, ctx)?;
    let scale = ScaledReal::from_log(1, num.log_scale) / den;
    Ok(((scale * ScaledReal::from_real(num.c_mant)).to_real(), (scale * ScaledReal::from_real(num.s_mant)).to_real()))
}

fn check_unit(x: f64) -> QResult<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("two-variable functions need x in [-1,1], got {x}"));
    }
    Ok(x.acos())
}

/// `C_q(x,y;ω) = C(x)C(y) − S(x)S(y)`.
pub fn eval_c2(x: f64, y: f64, omega: f64, ctx: &QContext) -> QResult<f64> {
    let (cx, sx) = cs_real(check_unit(x)?, omega, ctx)?;
    let (cy, sy) = cs_real(check_unit(y)?, omega, ctx)?;
    Ok(cx * cy - sx * sy)
}

/// `S_q(x,y;ω) = S(x)C(y) + C(x)S(y)`.
pub fn eval_s2(x: f64, y: f64, omega: f64, ctx: &QContext) -> QResult<f64> {
    let (cx, sx) = cs_real(check_unit(x)?, omega, ctx)?;
    let (cy, sy) = cs_real(check_unit(y)?, omega, ctx)?;
    Ok(sx * cy + cx * sy)
}

/// `𝓔_q(x,y;α) = 𝓔(x;α)𝓔(y;α)`.
pub fn eval_e2(x: f64, y: f64, alpha: Complex64, ctx: &QContext) -> QResult<Complex64> {
    let px = LatticePoint::real_point(check_unit(x)?);
    let py = LatticePoint::real_point(check_unit(y)?);
    let rep = TrigRepresentation::Auto;
    Ok(eval_e(&px, alpha, rep, ctx)? * eval_e(&py, alpha, rep, ctx)?)
}
