use serde::{Deserialize, Serialize};

use super::find::normalized;
use super::{ZeroKind, ZeroTable};
use crate::error::{domain, QResult};
use crate::qcore::{basic_hyper, poch_inf_log, poch_inf_real, poch_real, HyperSeriesSpec, ScaledReal};
use crate::QContext;

fn pick(table: &ZeroTable, kind: ZeroKind, n: usize) -> QResult<f64> {
    if table.kind != kind {
        return domain(format!("expected a {kind:?} table, got {:?}", table.kind));
    }
    if n == 0 || n > table.len() {
        return domain(format!("zero index {n} outside 1..={}", table.len()));
    }
    Ok(table.zeros[n - 1])
}

// sqrt((−ω²;q²)_∞/(−qω²;q²)_∞)
fn envelope(omega: f64, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let w2 = omega * omega;
    Ok((poch_inf_log(-w2, q * q, ctx)? / poch_inf_log(-q * w2, q * q, ctx)?).sqrt().to_real())
}

/// `C(η;ω_n) = (−1)ⁿ sqrt((−ω_n²;q²)_∞/(−qω_n²;q²)_∞)`.
pub fn value_at_sine_zero(n: usize, table: &ZeroTable, ctx: &QContext) -> QResult<f64> {
    let w = pick(table, ZeroKind::SineZeros, n)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * envelope(w, ctx)?)
}

/// `S(η;ϖ_n) = (−1)^{n−1} sqrt((−ϖ_n²;q²)_∞/(−qϖ_n²;q²)_∞)`.
///
/// The sign follows from `S(η;·) > 0` on `(0, ω_1) ∋ ϖ_1` and interlacing;
/// it is the opposite of the `(−1)ⁿ` of the cosine companion.
pub fn value_at_cosine_zero(n: usize, table: &ZeroTable, ctx: &QContext) -> QResult<f64> {
    let w = pick(table, ZeroKind::CosineZeros, n)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * envelope(w, ctx)?)
}

// (−q^{3/2};q²)_n/(−q^{1/2};q²)_n · ₂φ₁(−q^{3/2}, −q^{5/2}; q³; q², −q^{2n+1/2})
fn test_point_core(n: usize, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let h = q.sqrt();
    let spec = HyperSeriesSpec::real(&[-q * h, -q * q * h], &[q * q * q], q * q, -q.powf(2.0 * n as f64 + 0.5));
    Ok(poch_real(-q * h, q * q, n) / poch_real(-h, q * q, n) * basic_hyper(&spec, ctx)?.value.re)
}

/// `S(η;q^{1/4−n})` in closed form:
/// `(−1)ⁿ q^{n/2+1/4}/(1−q^{1/2}) · (−q^{1/2};q²)_∞/(−q^{3/2};q²)_∞
/// · (−q^{3/2};q²)_n/(−q^{1/2};q²)_n · ₂φ₁(−q^{3/2}, −q^{5/2}; q³; q², −q^{2n+1/2})`.
///
/// At these points only the second connection term survives; the infinite
/// products there reduce to the finite ratios above.
pub fn sine_at_test_point(n: usize, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let h = q.sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign * q.powf(n as f64 / 2.0 + 0.25) / (1.0 - h) * poch_inf_real(-h, q * q, ctx)?
        / poch_inf_real(-q * h, q * q, ctx)?;
    Ok(pre * test_point_core(n, ctx)?)
}

/// The same value with the prefactor `(−1)ⁿ q^{n/2−1/4}(1+q^{1/2})/(1−q^{1/2})`
/// as first written down. It is off by the constant factor
/// `q^{−1/2}(−q^{3/2};q²)_∞/(−q^{5/2};q²)_∞` (1.72 at q = 0.5); kept for comparison.
pub fn sine_at_test_point_as_printed(n: usize, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q;
    let h = q.sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * q.powf(n as f64 / 2.0 - 0.25) * (1.0 + h) / (1.0 - h) * test_point_core(n, ctx)?)
}

/// A truncated infinite product and a rough size of the dropped tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductValue {
    pub value: f64,
    pub tail_estimate: f64,
}

fn product(omega: f64, table: &ZeroTable, kind: ZeroKind, n: usize, ctx: &QContext) -> QResult<(ScaledReal, f64)> {
    if table.kind != kind {
        return domain(format!("expected a {kind:?} table, got {:?}", table.kind));
    }
    if n == 0 || n > table.len() {
        return domain(format!("insufficient table: need {n} zeros, have {}", table.len()));
    }
    let w2 = omega * omega;
    let mut p = ScaledReal::ONE;
    for &z in &table.zeros[..n] {
        p = p * ScaledReal::from_real(1.0 - w2 / (z * z));
    }
    // Σ_{k>n} ω²/z_k² with z_k ≈ z_n q^{n−k}
    let q2 = ctx.q * ctx.q;
    let zn = table.zeros[n - 1];
    let tail = w2 / (zn * zn) * q2 / (1.0 - q2);
    let den = poch_inf_log(-ctx.q * w2, q2, ctx)?;
    Ok((p / den, tail))
}

/// `S(η;ω) ≈ ω/((1−q^{1/2})(−qω²;q²)_∞) ∏_{n≤N}(1 − ω²/ω_n²)`.
pub fn product_form_s(omega: f64, sine: &ZeroTable, n: usize, ctx: &QContext) -> QResult<ProductValue> {
    let (p, tail) = product(omega, sine, ZeroKind::SineZeros, n, ctx)?;
    let value = p.scale(omega / (1.0 - ctx.q.sqrt())).to_real();
    Ok(ProductValue { value, tail_estimate: value.abs() * tail })
}

/// `C(η;ω) ≈ ∏_{n≤N}(1 − ω²/ϖ_n²)/(−qω²;q²)_∞`.
pub fn product_form_c(omega: f64, cosine: &ZeroTable, n: usize, ctx: &QContext) -> QResult<ProductValue> {
    let (p, tail) = product(omega, cosine, ZeroKind::CosineZeros, n, ctx)?;
    let value = p.to_real();
    Ok(ProductValue { value, tail_estimate: value.abs() * tail })
}

/// `∏_n (1 − z_m²/y_n²)`, with `z` running over one table and `y` over the
/// other, against its closed value.
///
/// With sine zeros on the left the closed magnitude is `sqrt((−ω_m²;q)_∞)`.
/// With cosine zeros on the left the sine product carries the extra factor
/// `(1 − q^{1/2})/ϖ_m`, so the magnitude is `(1 − q^{1/2}) sqrt((−ϖ_m²;q)_∞)/ϖ_m`;
/// `printed_magnitude` keeps the bare `sqrt((−z_m²;q)_∞)` for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroProductRelation {
    pub m: usize,
    pub product: f64,
    pub magnitude: f64,
    pub printed_magnitude: f64,
    /// Sign of the product, as measured.
    pub sign: i8,
    pub rel_gap: f64,
}

pub fn zero_product_relation(m: usize, left: &ZeroTable, right: &ZeroTable, ctx: &QContext) -> QResult<ZeroProductRelation> {
    if left.q != right.q || left.kind == right.kind {
        return domain("zero products need one sine and one cosine table at the same q");
    }
    let z = pick(left, left.kind, m)?;
    let z2 = z * z;
    let mut p = ScaledReal::ONE;
    for &y in &right.zeros {
        p = p * ScaledReal::from_real(1.0 - z2 / (y * y));
    }
    let printed = poch_inf_log(-z2, ctx.q, ctx)?.sqrt();
    let mag = match left.kind {
        ZeroKind::SineZeros => printed,
        ZeroKind::CosineZeros => printed.scale((1.0 - ctx.q.sqrt()) / z),
    };
    let rel_gap = p.abs().sub(&mag).to_real().abs() / mag.to_real();
    Ok(ZeroProductRelation {
        m,
        product: p.to_real(),
        magnitude: mag.to_real(),
        printed_magnitude: printed.to_real(),
        sign: p.sign(),
        rel_gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub holds: bool,
    /// Number of zeros of each kind compared.
    pub checked: usize,
    /// Index `n` at which `ω_{n−1} < ϖ_n < ω_n` first fails.
    pub first_violation: Option<usize>,
}

/// Checks `0 < ϖ_1 < ω_1 < ϖ_2 < ω_2 < …` over the common index range.
pub fn check_interlacing(sine: &ZeroTable, cosine: &ZeroTable) -> QResult<InterlacingReport> {
    if sine.kind != ZeroKind::SineZeros || cosine.kind != ZeroKind::CosineZeros {
        return domain("interlacing needs a sine table and a cosine table");
    }
    if sine.q != cosine.q {
        return domain(format!("tables computed at different q: {} vs {}", sine.q, cosine.q));
    }
    let m = sine.len().min(cosine.len());
    let mut prev = 0.0;
    for n in 1..=m {
        let (c, s) = (cosine.zeros[n - 1], sine.zeros[n - 1]);
        if !(prev < c && c < s) {
            return Ok(InterlacingReport { holds: false, checked: m, first_violation: Some(n) });
        }
        prev = s;
    }
    if let Some(&c) = cosine.zeros.get(m) {
        if c <= prev {
            return Ok(InterlacingReport { holds: false, checked: m, first_violation: Some(m + 1) });
        }
    }
    Ok(InterlacingReport { holds: true, checked: m, first_violation: None })
}

/// `ω_n − q^{1/4−n}` for sine zeros, `ϖ_n − q^{3/4−n}` for cosine zeros.
pub fn asymptotic_offsets(table: &ZeroTable) -> Vec<f64> {
    let shift = match table.kind {
        ZeroKind::SineZeros => 0.25,
        ZeroKind::CosineZeros => 0.75,
    };
    table
        .zeros
        .iter()
        .enumerate()
        .map(|(i, &z)| z - table.q.powf(shift - (i + 1) as f64))
        .collect()
}

/// Sign of the ω-derivative of the tabulated function at each zero, by a
/// centered difference with `h = 1e−6·max(1, ω)`.
pub fn derivative_signs(table: &ZeroTable, ctx: &QContext) -> QResult<Vec<i8>> {
    table
        .zeros
        .iter()
        .map(|&z| {
            let h = 1e-6 * z.max(1.0);
            let d = normalized(table.kind, z + h, ctx)? - normalized(table.kind, z - h, ctx)?;
            Ok(if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            })
        })
        .collect()
}

/// Zero counts of the even function `(−qω²;q²)_∞ S(η;ω)/ω` inside the
/// circles `R_n = q^{−n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnulusReport {
    pub n: Vec<usize>,
    pub radii: Vec<f64>,
    /// `n_f(R_n)`, counting `±ω_k`.
    pub counts: Vec<usize>,
    /// `n_f(R_{n+1}) − n_f(R_n)`.
    pub increments: Vec<usize>,
    /// `n_f(R_n)/(2n)`.
    pub density: Vec<f64>,
    /// Whether the table reaches past the largest circle.
    pub covered: bool,
}

impl AnnulusReport {
    pub fn increments_below_four(&self) -> bool {
        self.increments.iter().all(|&d| d < 4)
    }

    pub fn one_positive_zero_per_annulus(&self) -> bool {
        self.increments.iter().all(|&d| d == 2)
    }
}

pub fn zero_count_annuli(table: &ZeroTable, n_lo: usize, n_hi: usize) -> AnnulusReport {
    let ns: Vec<usize> = (n_lo.max(1)..=n_hi).collect();
    let radii: Vec<f64> = ns.iter().map(|&n| table.q.powi(-(n as i32))).collect();
    let counts: Vec<usize> = radii.iter().map(|&r| 2 * table.zeros.iter().filter(|&&z| z < r).count()).collect();
    let increments = counts.windows(2).map(|w| w[1] - w[0]).collect();
    let density = ns.iter().zip(&counts).map(|(&n, &c)| c as f64 / (2 * n) as f64).collect();
    let covered = radii.last().is_none_or(|&r| table.zeros.last().is_some_and(|&z| z >= r));
    AnnulusReport { n: ns, radii, counts, increments, density, covered }
}

