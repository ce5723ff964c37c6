//! Orthogonality weight on `[0, π]`, Gauss–Legendre integration with order
//! doubling, the Askey–Wilson moment and Gram matrices of the basis.

mod gauss;
mod gram;
mod moment;
mod weight;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{QError, QResult};
use crate::qcore::QContext;

pub use gauss::{gauss_legendre, QuadratureRule};
pub use gram::{
    cross_term_cc, cross_term_ss, diagonal_cc, diagonal_ss, gram_matrix, order_floor, GramFamily, GramMatrix,
};
pub use moment::{askey_wilson_integrand, askey_wilson_moment, askey_wilson_moment_numeric, moment_table_csv};
pub(crate) use weight::pair_ratio;
pub use weight::{weight, WeightFn};

/// Largest order the doubling loop tries unless the floor is already above it.
pub const MAX_ORDER: usize = 1024;
/// Relative agreement of successive orders, against `Σ wᵢ|f(θᵢ)|`.
pub const REL_TOL: f64 = 1e-12;

/// Value of an integral and the difference between the last two orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub est_error: f64,
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexIntegral {
    pub value: Complex64,
    pub est_error: f64,
    pub order: usize,
}

/// Compensated (Neumaier) sum in index order.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in it {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

// One rule applied to a vector-valued integrand on each piece of [0, π]:
// (sums, Σw|f| per component).
fn apply<F>(f: &F, rule: &QuadratureRule, len: usize, pieces: &[(f64, f64)]) -> QResult<(Vec<f64>, Vec<f64>)>
where
    F: Fn(f64) -> QResult<Vec<f64>> + Sync,
{
    let mut pts = Vec::with_capacity(rule.order * pieces.len());
    for &(a, b) in pieces {
        let h = (b - a) / std::f64::consts::PI;
        pts.extend(rule.nodes.iter().zip(&rule.weights).map(|(t, w)| (a + h * t, h * w)));
    }
    let vals: Vec<Vec<f64>> = pts.par_iter().map(|&(t, _)| f(t)).collect::<QResult<_>>()?;
    let mut sums = Vec::with_capacity(len);
    let mut mags = Vec::with_capacity(len);
    for i in 0..len {
        sums.push(neumaier_sum(vals.iter().zip(&pts).map(|(v, p)| p.1 * v[i])));
        mags.push(neumaier_sum(vals.iter().zip(&pts).map(|(v, p)| p.1 * v[i].abs())));
    }
    Ok((sums, mags))
}

// [0, π] cut at the sorted interior break points
fn pieces(breaks: &[f64]) -> Vec<(f64, f64)> {
    let mut b: Vec<f64> = breaks.iter().cloned().filter(|t| *t > 0.0 && *t < std::f64::consts::PI).collect();
    b.sort_by(f64::total_cmp);
    b.dedup();
    let mut out = Vec::with_capacity(b.len() + 1);
    let mut lo = 0.0;
    for t in b {
        out.push((lo, t));
        lo = t;
    }
    out.push((lo, std::f64::consts::PI));
    out
}

/// Integrates a vector of `len` functions of θ on a common sequence of rules,
/// doubling from `max(ctx.quad_order, floor)` until every component agrees
/// with the previous order to [`REL_TOL`]. Returns the values, the last
/// deltas, and the rule used.
pub fn integrate_vec<F>(f: F, len: usize, floor: usize, ctx: &QContext) -> QResult<(Vec<f64>, Vec<f64>, QuadratureRule)>
where
    F: Fn(f64) -> QResult<Vec<f64>> + Sync,
{
    integrate_vec_split(f, len, floor, &[], ctx)
}

/// [`integrate_vec_split`] that also accepts a component once its delta is
/// below `abs_tol`, for integrands that are pure rounding noise (squared
/// residuals of an exact reconstruction).
pub fn integrate_vec_abs<F>(
    f: F,
    len: usize,
    floor: usize,
    breaks: &[f64],
    abs_tol: f64,
    ctx: &QContext,
) -> QResult<(Vec<f64>, Vec<f64>, QuadratureRule)>
where
    F: Fn(f64) -> QResult<Vec<f64>> + Sync,
{
    doubling(f, len, floor, breaks, abs_tol, ctx)
}

/// [`integrate_vec`] with the rule applied separately on each piece of
/// `[0, π]` cut at `breaks`, for integrands with kinks or jumps there.
pub fn integrate_vec_split<F>(
    f: F,
    len: usize,
    floor: usize,
    breaks: &[f64],
    ctx: &QContext,
) -> QResult<(Vec<f64>, Vec<f64>, QuadratureRule)>
where
    F: Fn(f64) -> QResult<Vec<f64>> + Sync,
{
    doubling(f, len, floor, breaks, 0.0, ctx)
}

fn doubling<F>(
    f: F,
    len: usize,
    floor: usize,
    breaks: &[f64],
    abs_tol: f64,
    ctx: &QContext,
) -> QResult<(Vec<f64>, Vec<f64>, QuadratureRule)>
where
    F: Fn(f64) -> QResult<Vec<f64>> + Sync,
{
    let pieces = pieces(breaks);
    let mut order = ctx.quad_order.max(floor).max(2);
    let max_order = MAX_ORDER.max(2 * order);
    let (mut prev, _) = apply(&f, &gauss_legendre(order), len, &pieces)?;
    let mut worst = f64::INFINITY;
    while 2 * order <= max_order {
        order *= 2;
        let rule = gauss_legendre(order);
        let (cur, mags) = apply(&f, &rule, len, &pieces)?;
        let deltas: Vec<f64> = cur.iter().zip(&prev).map(|(a, b)| (a - b).abs()).collect();
        let ok = deltas.iter().zip(&mags).all(|(d, m)| *d <= REL_TOL * m.max(f64::MIN_POSITIVE) || *d <= abs_tol);
        worst = deltas.iter().zip(&mags).map(|(d, m)| d / m.max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
        if ok {
            let mut r = (*rule).clone();
            r.converged = true;
            r.est_error = deltas.iter().cloned().fold(0.0, f64::max);
            return Ok((cur, deltas, r));
        }
        prev = cur;
    }
    Err(QError::Convergence { what: "Gauss-Legendre doubling".into(), terms: order, last: worst })
}

/// `∫₀^π f(θ) dθ` with the doubling rule of [`integrate_vec`].
pub fn integrate<F>(f: F, ctx: &QContext) -> QResult<Integral>
where
    F: Fn(f64) -> QResult<f64> + Sync,
{
    integrate_with_floor(f, 0, ctx)
}

/// [`integrate`] starting from at least `floor` nodes (see [`order_floor`]).
pub fn integrate_with_floor<F>(f: F, floor: usize, ctx: &QContext) -> QResult<Integral>
where
    F: Fn(f64) -> QResult<f64> + Sync,
{
    let (v, d, r) = integrate_vec(|t| Ok(vec![f(t)?]), 1, floor, ctx)?;
    Ok(Integral { value: v[0], est_error: d[0], order: r.order })
}

/// Complex integrand, real and imaginary parts converged jointly.
pub fn integrate_complex<F>(f: F, floor: usize, ctx: &QContext) -> QResult<ComplexIntegral>
where
    F: Fn(f64) -> QResult<Complex64> + Sync,
{
    let (v, d, r) = integrate_vec(
        |t| {
            let z = f(t)?;
            Ok(vec![z.re, z.im])
        },
        2,
        floor,
        ctx,
    )?;
    Ok(ComplexIntegral { value: Complex64::new(v[0], v[1]), est_error: d[0].hypot(d[1]), order: r.order })
}

/// `∫₀^π f(θ) g(θ) w(θ) dθ`; `f`, `g` take θ (the point is `x = cos θ`).
pub fn inner_product<F, G>(f: F, g: G, ctx: &QContext) -> QResult<Integral>
where
    F: Fn(f64) -> QResult<f64> + Sync,
    G: Fn(f64) -> QResult<f64> + Sync,
{
    inner_product_with_floor(f, g, 0, ctx)
}

pub fn inner_product_with_floor<F, G>(f: F, g: G, floor: usize, ctx: &QContext) -> QResult<Integral>
where
    F: Fn(f64) -> QResult<f64> + Sync,
    G: Fn(f64) -> QResult<f64> + Sync,
{
    integrate_with_floor(|t| Ok(f(t)? * g(t)? * weight(t, ctx)?), floor, ctx)
}
