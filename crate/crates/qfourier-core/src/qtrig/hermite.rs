use num_complex::Complex64;

use super::dd;
use crate::error::{QError, QResult};
use crate::qcore::{ScaledReal, StopRule};
use crate::QContext;

fn diverged(what: &str, terms: usize, last: f64) -> QError {
    QError::Convergence { what: what.into(), terms, last }
}

/// Even and odd parts of `e(x, α) = Σ q^{n²/4} αⁿ H_n(x|q) / (q;q)_n`.
pub(crate) fn hermite_parts(x: Complex64, alpha: Complex64, ctx: &QContext) -> QResult<(Complex64, Complex64)> {
    let q = ctx.q;
    let zero = Complex64::new(0.0, 0.0);
    let (mut even, mut odd) = (Complex64::new(1.0, 0.0), zero);
    if alpha == zero {
        return Ok((even, odd));
    }
    let mut coef = Complex64::new(1.0, 0.0);
    let (mut h0, mut h1) = (Complex64::new(1.0, 0.0), 2.0 * x);
    let mut rule = StopRule::new(ctx.tol);
    rule.push(1.0, 1.0);
    let mut qn = q; // q^{n}, n ≥ 1
    for n in 1..ctx.max_terms {
        let ratio = q.powf((2 * n - 1) as f64 / 4.0) * alpha / (1.0 - qn);
        coef *= ratio;
        let term = coef * h1;
        if n % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
        if !(even.norm() + odd.norm()).is_finite() {
            return Err(diverged("q-Hermite generating series", n, term.norm()));
        }
        let size = coef.norm() * h1.norm().max(h0.norm());
        let past_peak = ratio.norm() < 1.0;
        if rule.push(size, even.norm().max(odd.norm())) && past_peak {
            return Ok((even, odd));
        }
        let h2 = 2.0 * x * h1 - (1.0 - qn) * h0;
        h0 = h1;
        h1 = h2;
        qn *= q;
    }
    Err(diverged("q-Hermite generating series", ctx.max_terms, coef.norm()))
}

/// `e(x, α) = Σ q^{n²/4} αⁿ H_n(x|q) / (q;q)_n = (qα²;q²)_∞ 𝓔_q(x;α)`.
pub fn hermite_e(x: Complex64, alpha: Complex64, ctx: &QContext) -> QResult<Complex64> {
    hermite_parts(x, alpha, ctx).map(|(e, o)| e + o)
}

/// Numerators `(−qω²;q²)_∞ C_q(x;ω)` and `(−qω²;q²)_∞ S_q(x;ω)` for real
/// `x` and `ω`, held as mantissas times `e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsNumerators {
    pub c_mant: f64,
    pub s_mant: f64,
    pub log_scale: f64,
    /// `Σ|terms|` in the same scale; compare with the mantissas for lost digits.
    pub abs_sum: f64,
    pub terms: usize,
}

impl CsNumerators {
    pub fn c(&self) -> ScaledReal {
        ScaledReal::from_real(self.c_mant) * ScaledReal::from_log(1, self.log_scale)
    }

    pub fn s(&self) -> ScaledReal {
        ScaledReal::from_real(self.s_mant) * ScaledReal::from_log(1, self.log_scale)
    }

    /// `sqrt(c² + s²)` in the shared scale.
    pub fn envelope(&self) -> ScaledReal {
        ScaledReal::from_real(self.c_mant.hypot(self.s_mant)) * ScaledReal::from_log(1, self.log_scale)
    }
}

/// Even/odd split of the generating series at `α = iω` and real `x`, with
/// every term divided by a power of two near the largest coefficient
/// `q^{n²/4}|ω|ⁿ/(q;q)_n` so that nothing overflows for large `ω`. Terms and
/// sums are carried in double-double.
pub fn cs_numerators(x: f64, omega: f64, ctx: &QContext) -> QResult<CsNumerators> {
    dd::hermite_real(dd::dd(x), omega, ctx)
}

/// [`cs_numerators`] at `x = η`, with `η` itself formed in double-double.
pub fn cs_numerators_at_eta(omega: f64, ctx: &QContext) -> QResult<CsNumerators> {
    dd::hermite_real(dd::eta_dd(ctx), omega, ctx)
}
