use num_complex::Complex64;

use super::{poch_real, QContext};
use crate::error::{domain, QResult};

/// Continuous q-Hermite `H_n(x|q)` by `H_{n+1} = 2x H_n − (1 − qⁿ) H_{n−1}`.
pub fn q_hermite(n: usize, x: Complex64, ctx: &QContext) -> Complex64 {
    let mut h0 = Complex64::new(1.0, 0.0);
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * x;
    let mut qk = ctx.q;
    for _ in 1..n {
        let h2 = 2.0 * x * h1 - (1.0 - qk) * h0;
        h0 = h1;
        h1 = h2;
        qk *= ctx.q;
    }
    h1
}

pub fn q_hermite_real(n: usize, x: f64, ctx: &QContext) -> f64 {
    q_hermite(n, Complex64::new(x, 0.0), ctx).re
}

/// `H_n(cosθ|q) = Σ_k (q;q)_n / ((q;q)_k (q;q)_{n−k}) e^{i(n−2k)θ}`, the
/// explicit sum used as an oracle.
pub fn q_hermite_explicit(n: usize, theta: f64, ctx: &QContext) -> f64 {
    let q = ctx.q;
    let qn = poch_real(q, q, n);
    (0..=n)
        .map(|k| {
            let c = qn / (poch_real(q, q, k) * poch_real(q, q, n - k));
            c * ((n as f64 - 2.0 * k as f64) * theta).cos()
        })
        .sum()
}

/// Continuous q-ultraspherical `C_m(x; β|q)` by its three-term recurrence.
pub fn q_ultraspherical(m: usize, x: f64, beta: f64, ctx: &QContext) -> QResult<f64> {
    if beta.abs() >= 1.0 {
        return domain(format!("q-ultraspherical needs |beta| < 1, got {beta}"));
    }
    let q = ctx.q;
    let mut c0 = 1.0;
    if m == 0 {
        return Ok(c0);
    }
    let mut c1 = 2.0 * x * (1.0 - beta) / (1.0 - q);
    let mut qk = q; // q^k for the step k → k+1
    for _ in 1..m {
        let c2 = (2.0 * x * (1.0 - beta * qk) * c1 - (1.0 - beta * beta * qk / q) * c0) / (1.0 - qk * q);
        c0 = c1;
        c1 = c2;
        qk *= q;
    }
    Ok(c1)
}
