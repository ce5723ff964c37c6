use num_complex::Complex64;

use super::{QContext, ScaledReal};
use crate::error::{domain, QError, QResult};

/// Length of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

/// Product value together with the certified bound on `|tail − 1|` of the
/// omitted factors (zero for finite products) and the number of factors used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub factors: usize,
}

// Renormalization window for running products.
const HI: f64 = 1e200;
const LO: f64 = 1e-200;

fn check_base(base: f64, n: Order) -> QResult<()> {
    if n == Order::Infinite && !(base > 0.0 && base < 1.0) {
        return domain(format!("(a;base)_inf needs 0 < base < 1, got base = {base}"));
    }
    if !base.is_finite() {
        return domain("base must be finite");
    }
    Ok(())
}

// The infinite product stops at the first k with |a·base^k| < tol whose
// geometric tail bound exp(|t|/(1−base)) − 1 is also below tol/100.
#[inline]
fn tail_done(t_abs: f64, base: f64, tol: f64) -> Option<f64> {
    if t_abs >= tol {
        return None;
    }
    let bound = (t_abs / (1.0 - base)).exp_m1();
    (bound <= 1e-2 * tol).then_some(bound)
}

fn not_converged(what: &str, terms: usize, last: f64) -> QError {
    QError::Convergence { what: what.into(), terms, last }
}

/// `(a; base)_n`, with the certified tail bound when `n = ∞`.
pub fn qpochhammer_detail(a: Complex64, base: f64, n: Order, ctx: &QContext) -> QResult<PochValue> {
    check_base(base, n)?;
    let mut p = Complex64::new(1.0, 0.0);
    let mut t = a;
    match n {
        Order::Finite(m) => {
            for _ in 0..m {
                p *= 1.0 - t;
                t *= base;
            }
            Ok(PochValue { value: p, tail_bound: 0.0, factors: m })
        }
        Order::Infinite => {
            let mut k = 0;
            loop {
                if let Some(bound) = tail_done(t.norm(), base, ctx.tol) {
                    return Ok(PochValue { value: p, tail_bound: bound, factors: k });
                }
                if k >= ctx.max_terms {
                    return Err(not_converged("q-shifted factorial", k, t.norm()));
                }
                p *= 1.0 - t;
                t *= base;
                k += 1;
            }
        }
    }
}

/// `(a; base)_n = ∏_{k<n} (1 − a·baseᵏ)`.
pub fn qpochhammer(a: Complex64, base: f64, n: Order, ctx: &QContext) -> QResult<Complex64> {
    qpochhammer_detail(a, base, n, ctx).map(|v| v.value)
}

/// Magnitude (scaled) and phase of `(a; base)_n`. A vanishing factor gives
/// sign 0 and phase 0.
pub fn qpochhammer_scaled(
    a: Complex64,
    base: f64,
    n: Order,
    ctx: &QContext,
) -> QResult<(ScaledReal, f64)> {
    check_base(base, n)?;
    let mut acc = ScaledReal::ONE;
    let mut p = Complex64::new(1.0, 0.0);
    let mut t = a;
    let mut k = 0;
    loop {
        match n {
            Order::Finite(m) if k >= m => break,
            Order::Infinite => {
                if tail_done(t.norm(), base, ctx.tol).is_some() {
                    break;
                }
                if k >= ctx.max_terms {
                    return Err(not_converged("scaled q-shifted factorial", k, t.norm()));
                }
            }
            _ => {}
        }
        let f = 1.0 - t;
        if f == Complex64::new(0.0, 0.0) {
            return Ok((ScaledReal::ZERO, 0.0));
        }
        p *= f;
        let m = p.norm();
        if !(LO..=HI).contains(&m) {
            acc = acc * ScaledReal::from_real(m);
            p /= m;
        }
        t *= base;
        k += 1;
    }
    Ok((acc * ScaledReal::from_real(p.norm()), p.arg()))
}

/// `(a₁, …, a_m; base)_n`.
pub fn multi_qpochhammer(
    args: &[Complex64],
    base: f64,
    n: Order,
    ctx: &QContext,
) -> QResult<Complex64> {
    check_base(base, n)?;
    let mut p = Complex64::new(1.0, 0.0);
    for &a in args {
        p *= qpochhammer(a, base, n, ctx)?;
    }
    Ok(p)
}

/// Real `(a; base)_∞`; the hot path of weights and prefactors.
pub fn poch_inf_real(a: f64, base: f64, ctx: &QContext) -> QResult<f64> {
    check_base(base, Order::Infinite)?;
    let mut p = 1.0;
    let mut t = a;
    let mut k = 0;
    while tail_done(t.abs(), base, ctx.tol).is_none() {
        if k >= ctx.max_terms {
            return Err(not_converged("q-shifted factorial", k, t.abs()));
        }
        p *= 1.0 - t;
        t *= base;
        k += 1;
    }
    Ok(p)
}

/// Real finite `(a; base)_n`.
pub fn poch_real(a: f64, base: f64, n: usize) -> f64 {
    let mut p = 1.0;
    let mut t = a;
    for _ in 0..n {
        p *= 1.0 - t;
        t *= base;
    }
    p
}

/// Real `(a; base)_∞` in scaled form, for arguments like `−qω²` with huge ω.
pub fn poch_inf_log(a: f64, base: f64, ctx: &QContext) -> QResult<ScaledReal> {
    check_base(base, Order::Infinite)?;
    let mut acc = ScaledReal::ONE;
    let mut p = 1.0f64;
    let mut t = a;
    let mut k = 0;
    while tail_done(t.abs(), base, ctx.tol).is_none() {
        if k >= ctx.max_terms {
            return Err(not_converged("q-shifted factorial", k, t.abs()));
        }
        p *= 1.0 - t;
        if p == 0.0 {
            return Ok(ScaledReal::ZERO);
        }
        if !(LO..=HI).contains(&p.abs()) {
            acc = acc * ScaledReal::from_real(p);
            p = 1.0;
        }
        t *= base;
        k += 1;
    }
    Ok(acc * ScaledReal::from_real(p))
}

/// `Γ_q(z) = (1−q)^{1−z} (q;q)_∞ / (q^z;q)_∞`, formed as a product of ratios
/// so that nothing underflows as `q → 1`.
pub fn q_gamma(z: f64, ctx: &QContext) -> QResult<f64> {
    if z <= 0.0 && z.fract() == 0.0 {
        return domain(format!("q-gamma has a pole at z = {z}"));
    }
    let q = ctx.q;
    let mut num = q;
    let mut den = q.powf(z);
    let mut acc = ScaledReal::ONE;
    let mut p = 1.0;
    let mut k = 0;
    loop {
        let small = num.max(den.abs());
        if tail_done(small, q, ctx.tol).is_some() {
            break;
        }
        if k >= ctx.max_terms {
            return Err(not_converged("q-gamma product", k, small));
        }
        p *= (1.0 - num) / (1.0 - den);
        if !(LO..=HI).contains(&p.abs()) {
            acc = acc * ScaledReal::from_real(p);
            p = 1.0;
        }
        num *= q;
        den *= q;
        k += 1;
    }
    let pre = ScaledReal::from_log(1, (1.0 - z) * (1.0 - q).ln());
    Ok((acc * ScaledReal::from_real(p) * pre).to_real())
}
