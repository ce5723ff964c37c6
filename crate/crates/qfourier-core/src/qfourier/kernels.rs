use std::f64::consts::PI;

use num_complex::Complex64;

use super::function::{signed_zero, Function};
use super::knorm::{k_norm, KMethod};
use crate::error::{domain, QError, QResult};
use crate::qcore::{poch_inf_log, poch_inf_real, q_hermite_real, QContext};
use crate::qtrig::cs_real;
use crate::quadrature::{integrate_vec_split, order_floor, weight};
use crate::zeros::ZeroTable;

/// `|(a e^{iα}; base)_∞|² = Π(1 − 2a·baseᵏ cos α + a²base²ᵏ)` for real `a`, `|a| < 1`
/// unless a factor vanishes.
pub(crate) fn pair_abs2(a: f64, cos_a: f64, base: f64, ctx: &QContext) -> QResult<f64> {
    let mut p = 1.0;
    let mut t = a;
    let mut k = 0;
    loop {
        p *= 1.0 - 2.0 * t * cos_a + t * t;
        t *= base;
        k += 1;
        let m = t.abs();
        if m < 0.5 && 4.0 * m / ((1.0 - m) * (1.0 - m)) < 1e-2 * ctx.tol {
            return Ok(p);
        }
        if k > ctx.max_terms {
            return Err(QError::Convergence { what: "kernel product".into(), terms: k, last: m });
        }
    }
}

fn check_r(r: f64) -> QResult<()> {
    if !(r.abs() < 1.0) {
        return domain(format!("kernels need |r| < 1, got {r}"));
    }
    Ok(())
}

/// `(re^{±iθ±iφ};q)_∞` (all four sign choices).
fn four_factors(theta: f64, phi: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    Ok(pair_abs2(r, (theta + phi).cos(), ctx.q, ctx)? * pair_abs2(r, (theta - phi).cos(), ctx.q, ctx)?)
}

/// `(r²;q)_∞/(re^{±iθ±iφ};q)_∞`, the q-Hermite Poisson kernel
/// `Σ rⁿH_n(cosθ)H_n(cosφ)/(q;q)_n`.
pub fn poisson_kernel(theta: f64, phi: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    check_r(r)?;
    Ok(poch_inf_real(r * r, ctx.q, ctx)? / four_factors(theta, phi, r, ctx)?)
}

/// `(q, r², e^{2iφ}, e^{−2iφ};q)_∞/(re^{±iθ±iφ};q)_∞`.
pub fn abel_kernel(theta: f64, phi: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    let s = phi.sin();
    let e2 = 4.0 * s * s * pair_abs2(ctx.q, (2.0 * phi).cos(), ctx.q, ctx)?;
    Ok(poch_inf_real(ctx.q, ctx.q, ctx)? * poisson_kernel(theta, phi, r, ctx)? * e2)
}

/// [`abel_kernel`] times `(q^{1/2}e^{±2iθ};q)_∞/(q^{1/2}e^{±2iφ};q)_∞`, the
/// kernel the bilinear relation actually produces from the coefficient side.
pub fn abel_kernel_corrected(theta: f64, phi: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    let h = ctx.qp(0.5);
    let ratio = pair_abs2(h, (2.0 * theta).cos(), ctx.q, ctx)? / pair_abs2(h, (2.0 * phi).cos(), ctx.q, ctx)?;
    Ok(abel_kernel(theta, phi, r, ctx)? * ratio)
}

fn kernel_integral<K>(f: &Function, theta: f64, kernel: K, ctx: &QContext) -> QResult<Complex64>
where
    K: Fn(f64) -> QResult<f64> + Sync,
{
    let g = |p: f64| {
        let v = f.eval(p)? * kernel(p)?;
        Ok(vec![v.re, v.im])
    };
    let mut breaks = f.breaks.clone();
    breaks.push(theta);
    let (v, _, _) = integrate_vec_split(g, 2, 0, &breaks, ctx)?;
    Ok(Complex64::new(v[0], v[1]) / (2.0 * PI))
}

/// Abel mean `S_r[f](cosθ) = (1/2π)∫₀^π f(cosφ)·abel_kernel(θ,φ,r) dφ`.
pub fn abel_sum(f: &Function, r: f64, theta: f64, ctx: &QContext) -> QResult<Complex64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Abel means need 0 < r < 1, got {r}"));
    }
    kernel_integral(f, theta, |p| abel_kernel(theta, p, r, ctx), ctx)
}

/// Abel mean with [`abel_kernel_corrected`].
pub fn abel_sum_corrected(f: &Function, r: f64, theta: f64, ctx: &QContext) -> QResult<Complex64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Abel means need 0 < r < 1, got {r}"));
    }
    kernel_integral(f, theta, |p| abel_kernel_corrected(theta, p, r, ctx), ctx)
}

/// `(1/2π)∫ poisson_kernel·(q, r², e^{±2iφ};q)_∞·H_n(cosφ) dφ`, which
/// reproduces `rⁿH_n(cosθ)`. The factor `(r²;q)_∞` enters once, through the
/// kernel.
pub fn poisson_reproducing_integral(n: usize, theta: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    check_r(r)?;
    let c = *ctx;
    let h = Function::real(format!("hermite:{n}"), move |p| Ok(q_hermite_real(n, p.cos(), &c)));
    Ok(kernel_integral(&h, theta, |p| abel_kernel(theta, p, r, ctx), ctx)?.re)
}

/// `(−qr²ω²;q²)_∞/(−qω²;q²)_∞`.
fn damping(r: f64, w: f64, ctx: &QContext) -> QResult<f64> {
    let q2 = ctx.q * ctx.q;
    Ok((poch_inf_log(-ctx.q * r * r * w * w, q2, ctx)? / poch_inf_log(-ctx.q * w * w, q2, ctx)?).to_real())
}

/// Coefficient-side Abel mean `Σ_{|n|≤N} c_n(r) 𝓔(cosθ;iω_n)` with
/// `c_n(r) = damping/(2k(ω_n))·∫f(cosφ)𝓔(cosφ;−irω_n)w dφ`.
pub fn abel_coefficient_route(
    f: &Function,
    r: f64,
    theta: f64,
    n: usize,
    table: &ZeroTable,
    ctx: &QContext,
) -> QResult<Complex64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Abel means need 0 < r < 1, got {r}"));
    }
    let om: Vec<f64> = (0..=n as i64).map(|j| signed_zero(j, table)).collect::<QResult<_>>()?;
    let m = om.len();
    let vals = |p: f64| -> QResult<Vec<f64>> {
        let fw = f.eval(p)? * weight(p, ctx)?;
        let mut out = Vec::with_capacity(4 * m);
        for &w in &om {
            let (c, s) = cs_real(p, r * w, ctx)?;
            out.extend_from_slice(&[fw.re * c, fw.im * c, fw.re * s, fw.im * s]);
        }
        Ok(out)
    };
    let (v, _, _) = integrate_vec_split(vals, 4 * m, order_floor(n), &f.breaks, ctx)?;
    let i = Complex64::i();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -(n as i64)..=n as i64 {
        let a = j.unsigned_abs() as usize;
        let s = j.signum() as f64;
        let w = om[a];
        let fc = Complex64::new(v[4 * a], v[4 * a + 1]);
        let fs = Complex64::new(v[4 * a + 2], v[4 * a + 3]);
        let k = k_norm(w, KMethod::ClosedForm, ctx)?.value;
        let cn = damping(r, w, ctx)? / (2.0 * k) * (fc - i * s * fs);
        let (c, sn) = cs_real(theta, s * w, ctx)?;
        sum += cn * Complex64::new(c, sn);
    }
    Ok(sum)
}

/// Both sides of the bilinear generating relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bilinear {
    pub lhs: Complex64,
    pub rhs: f64,
}

impl Bilinear {
    pub fn rel_gap(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.rhs.abs()
    }
}

/// `lhs = Σ_{|n|≤N} damping(r,ω_n)/k(ω_n)·𝓔(cosθ;iω_n)𝓔(cosφ;−irω_n)`,
/// `rhs = (q, r², q^{1/2}e^{±2iθ};q)_∞/(π(re^{±iθ±iφ};q)_∞)`.
pub fn bilinear_check(theta: f64, phi: f64, r: f64, n: usize, table: &ZeroTable, ctx: &QContext) -> QResult<Bilinear> {
    if !(0.0..1.0).contains(&r) {
        return domain(format!("bilinear relation needs 0 <= r < 1, got {r}"));
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    for j in -(n as i64)..=n as i64 {
        let w = signed_zero(j, table)?;
        let k = k_norm(w, KMethod::ClosedForm, ctx)?.value;
        let (c1, s1) = cs_real(theta, w, ctx)?;
        let (c2, s2) = cs_real(phi, r * w, ctx)?;
        lhs += damping(r, w, ctx)? / k * Complex64::new(c1, s1) * Complex64::new(c2, -s2);
    }
    let q = ctx.q;
    let num = poch_inf_real(q, q, ctx)? * poch_inf_real(r * r, q, ctx)? * pair_abs2(ctx.qp(0.5), (2.0 * theta).cos(), q, ctx)?;
    Ok(Bilinear { lhs, rhs: num / (PI * four_factors(theta, phi, r, ctx)?) })
}

/// Right side of the `r = 0` generating function as printed,
/// `(q, q^{1/2}e^{±2iθ};q)_∞` (no `1/π`). The mode sum equals this over π.
pub fn generating_r0_printed(theta: f64, ctx: &QContext) -> QResult<f64> {
    Ok(poch_inf_real(ctx.q, ctx.q, ctx)? * pair_abs2(ctx.qp(0.5), (2.0 * theta).cos(), ctx.q, ctx)?)
}

/// Right side at `φ = π/2`:
/// `(q, r², q^{1/2}e^{±2iθ};q)_∞/(π(−r²e^{±2iθ};q²)_∞)`.
pub fn bilinear_half_pi_rhs(theta: f64, r: f64, ctx: &QContext) -> QResult<f64> {
    check_r(r)?;
    let q = ctx.q;
    let c2 = (2.0 * theta).cos();
    let num = poch_inf_real(q, q, ctx)? * poch_inf_real(r * r, q, ctx)? * pair_abs2(ctx.qp(0.5), c2, q, ctx)?;
    Ok(num / (PI * pair_abs2(-r * r, c2, q * q, ctx)?))
}
