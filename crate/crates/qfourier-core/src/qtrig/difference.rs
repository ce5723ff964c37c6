use num_complex::Complex64;

use super::{eval_c, eval_s, LatticePoint, TrigRepresentation};
use crate::error::{domain, QResult};
use crate::QContext;

/// `2q^{1/4}/(1−q)`, the factor in `δC/δx = −(2q^{1/4}/(1−q)) ω S`.
pub fn delta_coefficient(ctx: &QContext) -> f64 {
    2.0 * ctx.q.powf(0.25) / (1.0 - ctx.q)
}

/// `δf/δx = [f(q^{1/2}u) − f(q^{−1/2}u)] / [x(q^{1/2}u) − x(q^{−1/2}u)]`.
pub fn delta_derivative<F>(f: F, p: &LatticePoint, ctx: &QContext) -> QResult<Complex64>
where
    F: Fn(&LatticePoint) -> QResult<Complex64>,
{
    let up = p.shift(0.5, ctx);
    let dn = p.shift(-0.5, ctx);
    let dx = up.x() - dn.x();
    if dx.norm() <= 1e-14 * (up.x().norm() + dn.x().norm()) {
        return domain("shifted abscissae coincide (u = ±1)");
    }
    Ok((f(&up)? - f(&dn)?) / dx)
}

/// `max |δ²u/δx² + (4q^{1/2}/(1−q)²) ω² u|` over `u ∈ {C_q, S_q}`.
pub fn difference_equation_residual(
    p: &LatticePoint,
    omega: f64,
    rep: TrigRepresentation,
    ctx: &QContext,
) -> QResult<f64> {
    let w = Complex64::new(omega, 0.0);
    let lam = 4.0 * ctx.q.sqrt() / ((1.0 - ctx.q) * (1.0 - ctx.q)) * omega * omega;
    let mut worst = 0.0f64;
    let funcs: [fn(&LatticePoint, Complex64, TrigRepresentation, &QContext) -> QResult<Complex64>; 2] = [eval_c, eval_s];
    for f in funcs {
        let g = |pt: &LatticePoint| delta_derivative(|r: &LatticePoint| f(r, w, rep, ctx), pt, ctx);
        let dd = delta_derivative(g, p, ctx)?;
        worst = worst.max((dd + lam * f(p, w, rep, ctx)?).norm());
    }
    Ok(worst)
}
