use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, QResult};
use crate::qcore::{poch_inf_real, qpochhammer, Order};
use crate::QContext;

/// Leading large-`ω` behaviour `prefactor · amplitude · cos(… − phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticForm {
    pub amplitude: f64,
    pub phase: f64,
    pub prefactor: f64,
}

fn check_theta(theta: f64) -> QResult<Complex64> {
    if theta.sin().abs() < 1e-12 {
        return domain(format!("asymptotic amplitudes degenerate at theta = {theta}"));
    }
    Ok(Complex64::from_polar(1.0, 2.0 * theta))
}

fn poch(a: Complex64, b: f64, ctx: &QContext) -> QResult<Complex64> {
    qpochhammer(a, b, Order::Infinite, ctx)
}

fn prefactor(ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let d = poch_inf_real(q, q * q, ctx)?;
    Ok(2.0 * poch_inf_real(q.sqrt(), q, ctx)? / (d * d))
}

/// `A(e^{iθ}) = (1 − q^{1/2}e^{2iθ})(q^{3/2}e^{−2iθ}, q^{5/2}e^{2iθ};q²)_∞ / (e^{2iθ};q)_∞`.
pub fn amplitude_a(theta: f64, ctx: &QContext) -> QResult<AsymptoticForm> {
    let e = check_theta(theta)?;
    let q = ctx.q;
    let a = (1.0 - q.sqrt() * e) * poch(q.powf(1.5) / e, q * q, ctx)? * poch(q.powf(2.5) * e, q * q, ctx)?
        / poch(e, q, ctx)?;
    Ok(AsymptoticForm { amplitude: a.norm(), phase: a.arg(), prefactor: prefactor(ctx)? })
}

/// `B(e^{iθ}) = e^{iθ}(q^{1/2}e^{−2iθ}, q^{3/2}e^{2iθ};q²)_∞ / (e^{2iθ};q)_∞`.
pub fn amplitude_b(theta: f64, ctx: &QContext) -> QResult<AsymptoticForm> {
    let e = check_theta(theta)?;
    let q = ctx.q;
    let b = Complex64::from_polar(1.0, theta) * poch(q.sqrt() / e, q * q, ctx)? * poch(q.powf(1.5) * e, q * q, ctx)?
        / poch(e, q, ctx)?;
    Ok(AsymptoticForm { amplitude: b.norm(), phase: b.arg(), prefactor: prefactor(ctx)? })
}

/// Leading-term predictions of `C(cosθ; q^{1/4−n})` and `S(cosθ; q^{1/4−n})`:
/// `P|A|cos((2θ+π)n − χ)` and `−P|B|cos((2θ+π)n − ψ)`.
pub fn asymptotic_cs(theta: f64, n: usize, ctx: &QContext) -> QResult<(f64, f64)> {
    let a = amplitude_a(theta, ctx)?;
    let b = amplitude_b(theta, ctx)?;
    let arg = (2.0 * theta + PI) * n as f64;
    Ok((
        a.prefactor * a.amplitude * (arg - a.phase).cos(),
        -b.prefactor * b.amplitude * (arg - b.phase).cos(),
    ))
}

/// The sine leading term in the shifted form `P|B|cos((2θ+π)(n−1) − ψ)`.
/// It does not track `S`; kept for comparison with [`asymptotic_cs`].
pub fn asymptotic_s_printed(theta: f64, n: usize, ctx: &QContext) -> QResult<f64> {
    let b = amplitude_b(theta, ctx)?;
    let arg = (2.0 * theta + PI) * (n as f64 - 1.0);
    Ok(b.prefactor * b.amplitude * (arg - b.phase).cos())
}

/// Pochhammer in the last denominator of the second (`e^{−2iθ}`) sum of the
/// complete sine expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SecondSumVariant {
    /// `(qω²e^{−2iθ};q²)_n`
    Printed,
    /// `(q²ω²e^{−2iθ};q²)_n`, mirroring the first sum
    Symmetric,
}

// (c ω² ε; q²)_∞ / (−qω²; q²)_∞ as one product of ratios
fn ratio_prod(c: f64, w2: f64, eps: Complex64, ctx: &QContext) -> QResult<Complex64> {
    let q2 = ctx.q * ctx.q;
    let (mut a, mut b) = (c * w2 * eps, ctx.q * w2);
    let mut p = Complex64::new(1.0, 0.0);
    let mut k = 0;
    while a.norm().max(b) >= 1e-2 * ctx.tol {
        p *= (1.0 - a) / (1.0 + b);
        a *= q2;
        b *= q2;
        k += 1;
        if k > ctx.max_terms {
            return Err(crate::QError::Convergence { what: "expansion prefactor".into(), terms: k, last: b });
        }
    }
    Ok(p)
}

fn finite(a: Complex64, b: f64, n: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    let mut t = a;
    for _ in 0..n {
        p *= 1.0 - t;
        t *= b;
    }
    p
}

fn check_depth(theta: f64, depth: usize) -> QResult<Complex64> {
    if depth == 0 {
        return domain("expansion depth must be positive");
    }
    check_theta(theta)
}

/// Complete large-`ω` expansion of `C(cosθ;ω)` truncated to `depth` terms
/// per sum.
pub fn full_expansion_c(theta: f64, omega: f64, depth: usize, ctx: &QContext) -> QResult<f64> {
    let e = check_depth(theta, depth)?;
    let q = ctx.q;
    let (q2, w2) = (q * q, omega * omega);
    let qq = poch_inf_real(q, q2, ctx)?;
    let mut tot = Complex64::new(0.0, 0.0);
    for ee in [e, e.inv()] {
        let pre = ratio_prod(q, w2, ee, ctx)? / (poch(ee.inv(), q, ctx)? * qq);
        let mut s = Complex64::new(0.0, 0.0);
        for n in 0..depth {
            s += q.powi(2 * n as i32) * finite(-ee, q, 2 * n)
                / (finite(Complex64::new(q2, 0.0), q2, n) * finite(q2 * ee * ee, q2, n) * finite(q * w2 * ee, q2, n));
        }
        tot += pre * s;
    }
    Ok(tot.re)
}

fn sine_sum(theta: f64, omega: f64, depth: usize, variant: SecondSumVariant, ctx: &QContext) -> QResult<f64> {
    let e = check_depth(theta, depth)?;
    let q = ctx.q;
    let (q2, w2) = (q * q, omega * omega);
    let qq = poch_inf_real(q, q2, ctx)?;
    let mut tot = Complex64::new(0.0, 0.0);
    for (sgn, ee) in [(1.0, e), (-1.0, e.inv())] {
        let pre = Complex64::from_polar(1.0, sgn * theta) * ratio_prod(q2, w2, ee, ctx)? / (poch(ee.inv(), q, ctx)? * qq);
        let dc = if sgn < 0.0 && variant == SecondSumVariant::Printed { q } else { q2 };
        let mut s = Complex64::new(0.0, 0.0);
        for n in 0..depth {
            s += q.powf(2.0 * n as f64 + 0.25) * finite(-q * ee, q, 2 * n)
                / (finite(Complex64::new(q2, 0.0), q2, n) * finite(q2 * ee * ee, q2, n) * finite(dc * w2 * ee, q2, n));
        }
        tot += pre * s;
    }
    Ok(tot.re)
}

/// Complete large-`ω` expansion of `S(cosθ;ω)` with the overall factor `ω`
/// that makes it track `S`.
pub fn full_expansion_s(theta: f64, omega: f64, depth: usize, variant: SecondSumVariant, ctx: &QContext) -> QResult<f64> {
    Ok(omega * sine_sum(theta, omega, depth, variant, ctx)?)
}

/// The sine expansion exactly as first written down: no factor `ω` and the
/// `(qω²e^{−2iθ};q²)_n` Pochhammer in the second sum.
pub fn full_expansion_s_as_printed(theta: f64, omega: f64, depth: usize, ctx: &QContext) -> QResult<f64> {
    sine_sum(theta, omega, depth, SecondSumVariant::Printed, ctx)
}
