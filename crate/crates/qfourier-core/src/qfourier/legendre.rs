use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coeffs::{CoefficientForm, CoefficientValues, FourierCoefficients};
use super::function::signed_zero;
use super::knorm::{k_norm, KMethod};
use crate::error::{domain, QResult};
use crate::qcore::{poch_inf_log, poch_inf_real, q_bessel2_detail, q_ultraspherical, QContext};
use crate::qtrig::cs_numerators_at_eta;
use crate::zeros::{ZeroKind, ZeroTable};

/// The direct series is trusted while `Σ|t|/|Σt|` stays below this.
pub const BESSEL_CANCELLATION_LIMIT: f64 = 1e3;

// (C(η;ω), S(η;ω)) as plain reals
fn eta_cs(omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    let num = cs_numerators_at_eta(omega, ctx)?;
    let den = poch_inf_log(-ctx.q * omega * omega, ctx.q * ctx.q, ctx)?;
    Ok(((num.c() / den).to_real(), (num.s() / den).to_real()))
}

/// `ρ_m(ω) = ω^{−1/2} J⁽²⁾_{m+1/2}(2ω;q)/(−qω²;q²)_∞`, an entire function of
/// `ω` with parity `(−1)^m`. Direct series while it keeps its digits,
/// otherwise the upward recurrence in the order started from
/// `ρ_{−1} = c₀C(η;ω)/ω`, `ρ_0 = c₀S(η;ω)/ω`, `c₀ = (q^{1/2};q)_∞/(q;q)_∞`.
pub fn bessel_reduced(m: usize, omega: f64, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    if omega == 0.0 {
        // ω^m (q^{m+3/2};q)_∞/(q;q)_∞ at ω = 0
        return if m == 0 {
            Ok(poch_inf_real(ctx.qp(1.5), q, ctx)? / poch_inf_real(q, q, ctx)?)
        } else {
            Ok(0.0)
        };
    }
    let sign = if omega < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    let w = omega.abs();
    let den = poch_inf_log(-q * w * w, q * q, ctx)?;
    let d = q_bessel2_detail(m as f64 + 0.5, 2.0 * w, ctx)?;
    if d.cancellation < BESSEL_CANCELLATION_LIMIT {
        return Ok(sign * (crate::qcore::ScaledReal::from_real(d.value / w.sqrt()) / den).to_real());
    }
    let c0 = poch_inf_real(ctx.qp(0.5), q, ctx)? / poch_inf_real(q, q, ctx)?;
    let (c, s) = eta_cs(w, ctx)?;
    let (mut prev, mut cur) = (c0 * c / w, c0 * s / w);
    let mut nu = 0.5;
    for _ in 0..m {
        let qn = ctx.qp(nu);
        let next = ((1.0 - qn) / w * cur - prev) / qn;
        prev = cur;
        cur = next;
        nu += 1.0;
    }
    Ok(sign * cur)
}

/// Closed-form coefficient `c_n` of `C_m(x;q^{1/2}|q)` on `𝓔(x;iω_n)`:
/// `π(q^{1/2};q)_∞/(q;q)_∞·(−i)^m q^{m²/4}·ρ_m(ω_n)/k(ω_n)`.
pub fn legendre_coefficient(m: usize, n: i64, table: &ZeroTable, ctx: &QContext) -> QResult<Complex64> {
    let w = signed_zero(n, table)?;
    let k = k_norm(w, KMethod::ClosedForm, ctx)?.value;
    let lead = PI * poch_inf_real(ctx.qp(0.5), ctx.q, ctx)? / poch_inf_real(ctx.q, ctx.q, ctx)?;
    let phase = Complex64::new(0.0, -1.0).powu(m as u32);
    Ok(phase * lead * ctx.qp((m * m) as f64 / 4.0) * bessel_reduced(m, w, ctx)? / k)
}

/// Expansion of `C_m(x;q^{1/2}|q)` in `𝓔(x;iω_n)`, `|n| ≤ N`, closed form.
pub fn legendre_expansion(m: usize, n: usize, table: &ZeroTable, ctx: &QContext) -> QResult<FourierCoefficients> {
    if table.kind != ZeroKind::SineZeros || n > table.len() || table.q != ctx.q {
        return domain("legendre expansion needs a sine-zero table for this q covering N");
    }
    let c = (-(n as i64)..=n as i64).map(|j| legendre_coefficient(m, j, table, ctx)).collect::<QResult<_>>()?;
    let k_values = (0..=n)
        .map(|i| Ok(k_norm(table.zero(i).unwrap(), KMethod::ClosedForm, ctx)?.value))
        .collect::<QResult<_>>()?;
    Ok(FourierCoefficients {
        form: CoefficientForm::Complex,
        values: CoefficientValues::Complex { c },
        spectrum: table.clone(),
        k_values,
        f_descriptor: format!("legendre:{m}"),
    })
}

/// Least-squares fit `ln|c_n| ≈ a + n·exponent·ln q` over `n_from..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub exponent: f64,
    pub intercept: f64,
    pub points: usize,
}

pub fn decay_fit(coeffs: &FourierCoefficients, n_from: usize, ctx: &QContext) -> QResult<DecayFit> {
    let n_max = coeffs.n_max();
    if n_from == 0 || n_from + 1 > n_max {
        return domain("decay fit needs at least two modes with n >= 1");
    }
    let pts: Vec<(f64, f64)> = (n_from..=n_max).map(|n| (n as f64, coeffs.c(n as i64).unwrap().norm().ln())).collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    Ok(DecayFit { exponent: slope / ctx.q.ln(), intercept: my - slope * mx, points: pts.len() })
}

/// Partial sum over `m ≤ M` of the expansion of `𝓔(x;iω)` in
/// `C_m(x;q^{1/2}|q)`:
/// `(q;q)_∞/(q^{1/2};q)_∞·Σ i^m(1−q^{m+1/2})q^{m²/4}ρ_m(ω)C_m(x;q^{1/2}|q)`.
pub fn eq_in_ultraspherical(omega: f64, m_max: usize, x: f64, ctx: &QContext) -> QResult<Complex64> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("x must lie in [-1,1], got {x}"));
    }
    let q = ctx.q;
    let beta = ctx.qp(0.5);
    let mut s = Complex64::new(0.0, 0.0);
    let mut im = Complex64::new(1.0, 0.0);
    for m in 0..=m_max {
        let t = (1.0 - ctx.qp(m as f64 + 0.5)) * ctx.qp((m * m) as f64 / 4.0) * bessel_reduced(m, omega, ctx)?;
        s += im * t * q_ultraspherical(m, x, beta, ctx)?;
        im *= Complex64::i();
    }
    Ok(s * poch_inf_real(q, q, ctx)? / poch_inf_real(beta, q, ctx)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BesselSumKind {
    /// Sum over the order `m ≤ m_max` at fixed zeros `ω_n`, `ω_l`.
    SumOverM { n: usize, l: usize, m_max: usize },
    /// Sum over zeros `|n| ≤ n_max` at fixed orders `m`, `p`.
    SumOverN { m: usize, p: usize, n_max: usize },
}

/// A truncated discrete orthogonality sum, its limit and a tail estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselSum {
    pub value: f64,
    pub expected: f64,
    /// Size of the omitted tail, from the last retained terms.
    pub tail_estimate: f64,
}

impl BesselSum {
    pub fn gap(&self) -> f64 {
        (self.value - self.expected).abs()
    }
}

/// Discrete orthogonality of `J⁽²⁾_{m+1/2}(2ω_n;q)` over orders or over zeros.
pub fn qbessel_orthogonality_sum(kind: BesselSumKind, table: &ZeroTable, ctx: &QContext) -> QResult<BesselSum> {
    if table.kind != ZeroKind::SineZeros || table.q != ctx.q {
        return domain("orthogonality sums need the sine zeros for this q");
    }
    let q = ctx.q;
    let qh = |m: usize| (1.0 - ctx.qp(m as f64 + 0.5)) * ctx.qp((m * m) as f64 / 2.0);
    match kind {
        BesselSumKind::SumOverM { n, l, m_max } => {
            if n == 0 || l == 0 {
                return domain("SumOverM uses positive zeros");
            }
            let wn = signed_zero(n as i64, table)?;
            let wl = signed_zero(l as i64, table)?;
            let k = k_norm(wn, KMethod::ClosedForm, ctx)?.value;
            let ratio = (poch_inf_log(-q * wl * wl, q * q, ctx)? / poch_inf_log(-q * wn * wn, q * q, ctx)?).to_real();
            let pre = PI * (wl / wn).sqrt() * ratio / k;
            let mut value = 0.0;
            let mut last = 0.0;
            for m in 0..=m_max {
                last = pre * qh(m) * bessel_reduced(m, wn, ctx)? * bessel_reduced(m, wl, ctx)?;
                value += last;
            }
            Ok(BesselSum { value, expected: if n == l { 1.0 } else { 0.0 }, tail_estimate: 2.0 * last.abs() })
        }
        BesselSumKind::SumOverN { m, p, n_max } => {
            let mut value = 0.0;
            let mut last = 0.0;
            for j in -(n_max as i64)..=n_max as i64 {
                let w = signed_zero(j, table)?;
                let k = k_norm(w, KMethod::ClosedForm, ctx)?.value;
                // ω J_m J_p /(ω (−qω²;q²)²) = ρ_m ρ_p
                last = PI * qh(m) / k * bessel_reduced(m, w, ctx)? * bessel_reduced(p, w, ctx)?;
                value += last;
            }
            // pairs ±n shrink by about q per step
            let tail = 2.0 * last.abs() * q / (1.0 - q);
            Ok(BesselSum { value, expected: if m == p { 1.0 } else { 0.0 }, tail_estimate: tail })
        }
    }
}

/// `S(η;ω)` and `C(η;ω)` directly and through `J⁽²⁾_{±1/2}(2ω;q)`:
/// `(q;q)_∞/(q^{1/2};q)_∞·ω^{1/2}/(−qω²;q²)_∞·J⁽²⁾_{±1/2}(2ω;q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselBridge {
    pub s_direct: f64,
    pub s_bessel: f64,
    pub c_direct: f64,
    pub c_bessel: f64,
}

pub fn qbessel_bridge(omega: f64, ctx: &QContext) -> QResult<BesselBridge> {
    if !(omega > 0.0) {
        return domain("the bridge is checked at ω > 0");
    }
    let q = ctx.q;
    let (c, s) = eta_cs(omega, ctx)?;
    let lead = poch_inf_real(q, q, ctx)? / poch_inf_real(ctx.qp(0.5), q, ctx)? * omega.sqrt()
        / poch_inf_real(-q * omega * omega, q * q, ctx)?;
    let j = |nu: f64| Ok::<f64, crate::QError>(q_bessel2_detail(nu, 2.0 * omega, ctx)?.value);
    Ok(BesselBridge { s_direct: s, s_bessel: lead * j(0.5)?, c_direct: c, c_bessel: lead * j(-0.5)? })
}
