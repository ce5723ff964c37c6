use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::function::{signed_zero, Function};
use super::knorm::{k_norm, KMethod};
use crate::error::{domain, QError, QResult};
use crate::qcore::{poch_inf_log, poch_inf_real, QContext};
use crate::qtrig::cs_real;
use crate::quadrature::{integrate_vec_abs, integrate_vec_split, order_floor, weight};
use crate::zeros::{ZeroKind, ZeroTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientForm {
    /// `a_0 + Σ(a_n C(x;ω_n) + b_n S(x;ω_n))`.
    Real,
    /// `Σ_{n=−N}^{N} c_n 𝓔(x;iω_n)`.
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientValues {
    /// `a[n]` for `n = 0..=N`; `b[n−1]` holds `b_n`, `n = 1..=N`.
    Real { a: Vec<f64>, b: Vec<f64> },
    /// `c[n + N]` holds `c_n`, `n = −N..=N`.
    Complex { c: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub form: CoefficientForm,
    pub values: CoefficientValues,
    pub spectrum: ZeroTable,
    /// `k(ω_n)` for `n = 0..=N`.
    pub k_values: Vec<f64>,
    pub f_descriptor: String,
}

impl FourierCoefficients {
    /// Highest mode index held.
    pub fn n_max(&self) -> usize {
        self.k_values.len() - 1
    }

    pub fn a(&self, n: usize) -> Option<f64> {
        match &self.values {
            CoefficientValues::Real { a, .. } => a.get(n).copied(),
            _ => None,
        }
    }

    /// `b_n`, `n ≥ 1`.
    pub fn b(&self, n: usize) -> Option<f64> {
        match &self.values {
            CoefficientValues::Real { b, .. } if n >= 1 => b.get(n - 1).copied(),
            _ => None,
        }
    }

    /// `c_n` in either form (`c_{±n} = (a_n ∓ i b_n)/2` from the real one).
    pub fn c(&self, n: i64) -> Option<Complex64> {
        let m = n.unsigned_abs() as usize;
        if m > self.n_max() {
            return None;
        }
        match &self.values {
            CoefficientValues::Complex { c } => c.get((n + self.n_max() as i64) as usize).copied(),
            CoefficientValues::Real { a, .. } if m == 0 => Some(Complex64::new(a[0], 0.0)),
            CoefficientValues::Real { a, b } => {
                let s = n.signum() as f64;
                Some(Complex64::new(a[m], -s * b[m - 1]) / 2.0)
            }
        }
    }
}

/// q-Fourier coefficients of `f` up to mode `N` on the sine spectrum.
pub fn coefficients(
    f: &Function,
    form: CoefficientForm,
    n: usize,
    table: &ZeroTable,
    ctx: &QContext,
) -> QResult<FourierCoefficients> {
    if table.kind != ZeroKind::SineZeros {
        return domain("coefficients use the sine zeros");
    }
    if n > table.len() {
        return domain(format!("N = {n} exceeds the {} tabulated zeros", table.len()));
    }
    if table.q != ctx.q {
        return domain("zero table and context use different q");
    }
    if form == CoefficientForm::Real && !f.real {
        return domain(format!("real form needs a real function, {} is complex", f.descriptor));
    }
    let om: Vec<f64> = (0..=n).map(|i| table.zero(i).unwrap()).collect();
    let m = n + 1;
    // per mode: Re/Im of ∫fCw and ∫fSw
    let vals = |t: f64| -> QResult<Vec<f64>> {
        let fw = f.eval(t)? * weight(t, ctx)?;
        let mut out = Vec::with_capacity(4 * m);
        for &w in &om {
            let (c, s) = cs_real(t, w, ctx)?;
            out.extend_from_slice(&[fw.re * c, fw.im * c, fw.re * s, fw.im * s]);
        }
        Ok(out)
    };
    let (v, _, _) = integrate_vec_split(vals, 4 * m, order_floor(n), &f.breaks, ctx)?;
    let fc = |i: usize| Complex64::new(v[4 * i], v[4 * i + 1]);
    let fs = |i: usize| Complex64::new(v[4 * i + 2], v[4 * i + 3]);
    let k_values: Vec<f64> = om.iter().map(|&w| Ok(k_norm(w, KMethod::ClosedForm, ctx)?.value)).collect::<QResult<_>>()?;

    let values = match form {
        CoefficientForm::Real => {
            let mut a = vec![fc(0).re / (2.0 * k_values[0])];
            let mut b = Vec::with_capacity(n);
            for i in 1..=n {
                a.push(fc(i).re / k_values[i]);
                b.push(fs(i).re / k_values[i]);
            }
            CoefficientValues::Real { a, b }
        }
        CoefficientForm::Complex => {
            let i = Complex64::i();
            let c = (-(n as i64)..=n as i64)
                .map(|j| {
                    let a = j.unsigned_abs() as usize;
                    let s = j.signum() as f64;
                    // ∫ f (C − i sgn(j) S) w / (2k)
                    (fc(a) - i * s * fs(a)) / (2.0 * k_values[a])
                })
                .collect();
            CoefficientValues::Complex { c }
        }
    };
    Ok(FourierCoefficients { form, values, spectrum: table.clone(), k_values, f_descriptor: f.descriptor.clone() })
}

/// `a_0 + Σ_{n≤N}(a_n C(x;ω_n) + b_n S(x;ω_n))` or `Σ_{|n|≤N} c_n 𝓔(x;iω_n)`.
pub fn partial_sum(coeffs: &FourierCoefficients, x: f64, n: usize, ctx: &QContext) -> QResult<Complex64> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("partial sums need x in [-1,1], got {x}"));
    }
    partial_sum_theta(coeffs, x.acos(), n, ctx)
}

/// [`partial_sum`] at `x = cos θ`.
pub fn partial_sum_theta(coeffs: &FourierCoefficients, theta: f64, n: usize, ctx: &QContext) -> QResult<Complex64> {
    if n > coeffs.n_max() {
        return domain(format!("N = {n} exceeds the {} available modes", coeffs.n_max()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    match &coeffs.values {
        CoefficientValues::Real { a, b } => {
            sum += a[0];
            for i in 1..=n {
                let (c, s) = cs_real(theta, coeffs.spectrum.zeros[i - 1], ctx)?;
                sum += a[i] * c + b[i - 1] * s;
            }
        }
        CoefficientValues::Complex { .. } => {
            for j in -(n as i64)..=n as i64 {
                let (c, s) = cs_real(theta, signed_zero(j, &coeffs.spectrum)?, ctx)?;
                sum += coeffs.c(j).unwrap() * Complex64::new(c, s);
            }
        }
    }
    Ok(sum)
}

/// `∫|f|²w` on `[0, π]`.
pub fn weighted_norm_sq(f: &Function, ctx: &QContext) -> QResult<f64> {
    let g = |t: f64| Ok(vec![f.eval(t)?.norm_sqr() * weight(t, ctx)?]);
    Ok(integrate_vec_split(g, 1, 0, &f.breaks, ctx)?.0[0])
}

/// `∫|f|²w − Σ_{n=−N}^{N}|c_n|²·2k(ω_n)`; nonnegative by Bessel's inequality.
pub fn parseval_gap(f: &Function, coeffs: &FourierCoefficients, n: usize, ctx: &QContext) -> QResult<f64> {
    if n > coeffs.n_max() {
        return domain(format!("N = {n} exceeds the {} available modes", coeffs.n_max()));
    }
    let norm = weighted_norm_sq(f, ctx)?;
    let mut s = 0.0;
    for j in -(n as i64)..=n as i64 {
        s += coeffs.c(j).unwrap().norm_sqr() * 2.0 * coeffs.k_values[j.unsigned_abs() as usize];
    }
    Ok(norm - s)
}

/// `sqrt(∫|f − S_N f|²w)`.
pub fn weighted_l2_error(f: &Function, coeffs: &FourierCoefficients, n: usize, ctx: &QContext) -> QResult<f64> {
    let g = |t: f64| Ok(vec![(f.eval(t)? - partial_sum_theta(coeffs, t, n, ctx)?).norm_sqr() * weight(t, ctx)?]);
    let floor = 1e-14 * weighted_norm_sq(f, ctx)?;
    Ok(integrate_vec_abs(g, 1, order_floor(n), &f.breaks, floor, ctx)?.0[0].sqrt())
}

/// Sine coefficient of `x` in closed form:
/// `b_n = π(q^{1/2};q)²/(q;q)²·(q^{1/4}+q^{−1/4})·(−1)^{n−1}/(k(ω_n)ω_n)·sqrt((−ω_n²;q²)/(−qω_n²;q²))`.
pub fn x_sine_coefficient(n: usize, table: &ZeroTable, ctx: &QContext) -> QResult<f64> {
    let w = match table.zero(n) {
        Some(w) if n > 0 && table.kind == ZeroKind::SineZeros => w,
        _ => return domain(format!("no sine zero ω_{n}")),
    };
    let q = ctx.q;
    let r = poch_inf_real(ctx.qp(0.5), q, ctx)? / poch_inf_real(q, q, ctx)?;
    let env = (poch_inf_log(-w * w, q * q, ctx)? / poch_inf_log(-q * w * w, q * q, ctx)?).sqrt().to_real();
    let k = k_norm(w, KMethod::ClosedForm, ctx)?.value;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(PI * r * r * (ctx.qp(0.25) + ctx.qp(-0.25)) * sign / (k * w) * env)
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    form: CoefficientForm,
    q: String,
    #[serde(rename = "N")]
    n: usize,
    spectrum_ref: String,
    f: String,
    values: Vec<String>,
    k_values: Vec<String>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_num(s: &str) -> QResult<f64> {
    s.parse().map_err(|_| QError::Structural(format!("bad number {s:?} in coefficient file")))
}

impl FourierCoefficients {
    /// JSON with decimal strings at 17 significant digits. Real form lists
    /// `a_0..a_N` then `b_1..b_N`; complex form lists `re, im` pairs for
    /// `n = −N..N`.
    pub fn to_json(&self) -> String {
        let values = match &self.values {
            CoefficientValues::Real { a, b } => a.iter().chain(b).map(|v| num(*v)).collect(),
            CoefficientValues::Complex { c } => c.iter().flat_map(|z| [num(z.re), num(z.im)]).collect(),
        };
        let j = CoeffJson {
            form: self.form,
            q: num(self.spectrum.q),
            n: self.n_max(),
            spectrum_ref: self.spectrum.digest(),
            f: self.f_descriptor.clone(),
            values,
            k_values: self.k_values.iter().map(|v| num(*v)).collect(),
        };
        serde_json::to_string_pretty(&j).expect("coefficients serialize")
    }

    /// Reads [`to_json`](Self::to_json) output; `spectrum` must be the table
    /// the file was computed on.
    pub fn from_json(json: &str, spectrum: &ZeroTable) -> QResult<Self> {
        let j: CoeffJson =
            serde_json::from_str(json).map_err(|e| QError::Structural(format!("coefficient file: {e}")))?;
        if j.spectrum_ref != spectrum.digest() {
            return Err(QError::Structural("coefficient file was computed on a different zero table".into()));
        }
        if j.n > spectrum.len() || j.k_values.len() != j.n + 1 {
            return Err(QError::Structural("coefficient file: inconsistent N".into()));
        }
        let v: Vec<f64> = j.values.iter().map(|s| parse_num(s)).collect::<QResult<_>>()?;
        let values = match j.form {
            CoefficientForm::Real if v.len() == 2 * j.n + 1 => {
                CoefficientValues::Real { a: v[..=j.n].to_vec(), b: v[j.n + 1..].to_vec() }
            }
            CoefficientForm::Complex if v.len() == 2 * (2 * j.n + 1) => {
                CoefficientValues::Complex { c: v.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect() }
            }
            _ => return Err(QError::Structural("coefficient file: wrong number of values".into())),
        };
        Ok(FourierCoefficients {
            form: j.form,
            values,
            spectrum: spectrum.clone(),
            k_values: j.k_values.iter().map(|s| parse_num(s)).collect::<QResult<_>>()?,
            f_descriptor: j.f,
        })
    }
}
