use super::hyper::StopRule;
use super::{poch_inf_real, QContext};
use crate::error::{domain, QError, QResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue {
    pub value: f64,
    /// `Σ|tₖ| / |Σtₖ|` of the ₀φ₁ series; digits lost ≈ log10 of this.
    pub cancellation: f64,
    pub terms: usize,
}

/// Jackson `J_ν⁽²⁾(z;q)` with the cancellation factor of its series.
pub fn q_bessel2_detail(nu: f64, z: f64, ctx: &QContext) -> QResult<BesselValue> {
    if z < 0.0 || z.is_nan() {
        return domain(format!("q-Bessel needs z >= 0, got {z}"));
    }
    let q = ctx.q;
    let b = q.powf(nu + 1.0);
    if nu + 1.0 <= 0.0 && (nu + 1.0).fract() == 0.0 {
        return domain(format!("q-Bessel order {nu} makes (q^(nu+1);q)_k vanish"));
    }
    if z == 0.0 {
        return match nu {
            v if v > 0.0 => Ok(BesselValue { value: 0.0, cancellation: 1.0, terms: 1 }),
            v if v == 0.0 => Ok(BesselValue {
                value: poch_inf_real(b, q, ctx)? / poch_inf_real(q, q, ctx)?,
                cancellation: 1.0,
                terms: 1,
            }),
            _ => domain(format!("J_nu(0) is infinite for nu = {nu}")),
        };
    }
    let h2 = (0.5 * z) * (0.5 * z);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut rule = StopRule::new(ctx.tol);
    rule.push(1.0, 1.0);
    let mut qk = 1.0; // q^k
    let qnu = q.powf(nu);
    let mut terms = 1;
    loop {
        // t_{k+1}/t_k = −q^{2k+1+ν} h² / ((1 − q^{k+1})(1 − q^{ν+k+1}))
        let r = -qk * qk * q * qnu * h2 / ((1.0 - qk * q) * (1.0 - b * qk));
        term *= r;
        sum += term;
        abs_sum += term.abs();
        terms += 1;
        if rule.push(term.abs(), sum.abs()) {
            break;
        }
        if terms > ctx.max_terms || !sum.is_finite() {
            return Err(QError::Convergence { what: "q-Bessel series".into(), terms, last: term.abs() });
        }
        qk *= q;
    }
    let pre = poch_inf_real(b, q, ctx)? / poch_inf_real(q, q, ctx)? * (0.5 * z).powf(nu);
    Ok(BesselValue {
        value: pre * sum,
        cancellation: if sum == 0.0 { f64::INFINITY } else { abs_sum / sum.abs() },
        terms,
    })
}

/// Jackson `J_ν⁽²⁾(z;q) = ((q^{ν+1};q)_∞/(q;q)_∞)(z/2)^ν ₀φ₁(-; q^{ν+1}; q, −z²q^{ν+1}/4)`.
pub fn q_bessel2(nu: f64, z: f64, ctx: &QContext) -> QResult<f64> {
    q_bessel2_detail(nu, z, ctx).map(|v| v.value)
}
