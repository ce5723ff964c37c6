use std::f64::consts::PI;

use num_complex::Complex64;

use super::{integrate_vec, weight};
use crate::error::{domain, QResult};
use crate::qcore::{poch_inf_log, poch_inf_real, QContext, ScaledReal};
use crate::qfourier::{k_norm, KMethod};
use crate::qtrig::{cs_numerators_at_eta, cs_real};
use crate::zeros::{ZeroKind, ZeroTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GramFamily {
    Cosine,
    Sine,
    /// `∫C(·;ω_m)S(·;ω_n)w`.
    Mixed,
    /// `(1/2k(ω_n))∫𝓔(·;iω_m)𝓔(·;−iω_n)w` over `m, n = −N..N`.
    Exponential,
}

/// Row-major matrix of inner products. `indices` label rows and columns
/// (`1..=N`, or `−N..=N` for the exponential family).
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub family: GramFamily,
    pub indices: Vec<i64>,
    pub entries: Vec<Complex64>,
    pub order: usize,
    pub est_error: f64,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim() + j]
    }

    /// `max |G − I|` over all entries.
    pub fn identity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.get(i, j) - e).norm());
            }
        }
        worst
    }

    /// Largest off-diagonal modulus.
    pub fn max_off_diagonal(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    worst = worst.max(self.get(i, j).norm());
                }
            }
        }
        worst
    }

    /// `row,col,re,im` lines in row-major order, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for (i, a) in self.indices.iter().enumerate() {
            for (j, b) in self.indices.iter().enumerate() {
                let z = self.get(i, j);
                out.push_str(&format!("{a},{b},{:.16e},{:.16e}\n", z.re, z.im));
            }
        }
        out
    }
}

/// Quadrature order floor when modes up to `n_max` are involved.
pub fn order_floor(n_max: usize) -> usize {
    64usize.max(8 * n_max)
}

pub fn gram_matrix(family: GramFamily, table: &ZeroTable, n: usize, ctx: &QContext) -> QResult<GramMatrix> {
    if table.kind != ZeroKind::SineZeros {
        return domain("Gram matrices are built on the sine zeros");
    }
    if n == 0 || n > table.len() {
        return domain(format!("N = {n} outside 1..={}", table.len()));
    }
    if table.q != ctx.q {
        return domain("zero table and context use different q");
    }
    // ω_0 = 0 first, then the N positive zeros
    let mut om = vec![0.0];
    om.extend_from_slice(&table.zeros[..n]);
    let m = n + 1;
    let vals = |t: f64| -> QResult<Vec<f64>> {
        let w = weight(t, ctx)?;
        let mut c = Vec::with_capacity(m);
        let mut s = Vec::with_capacity(m);
        for &o in &om {
            let (a, b) = cs_real(t, o, ctx)?;
            c.push(a);
            s.push(b);
        }
        let mut out = Vec::with_capacity(3 * m * m);
        for i in 0..m {
            for j in 0..m {
                out.push(w * c[i] * c[j]);
                out.push(w * s[i] * s[j]);
                out.push(w * c[i] * s[j]);
            }
        }
        Ok(out)
    };
    let (v, d, rule) = integrate_vec(vals, 3 * m * m, order_floor(n), ctx)?;
    let cc = |i: usize, j: usize| v[3 * (i * m + j)];
    let ss = |i: usize, j: usize| v[3 * (i * m + j) + 1];
    let cs = |i: usize, j: usize| v[3 * (i * m + j) + 2];
    let est_error = d.iter().cloned().fold(0.0, f64::max);

    let (indices, entries): (Vec<i64>, Vec<Complex64>) = match family {
        GramFamily::Exponential => {
            let idx: Vec<i64> = (-(n as i64)..=n as i64).collect();
            let k: Vec<f64> = om.iter().map(|&o| Ok(k_norm(o, KMethod::ClosedForm, ctx)?.value)).collect::<QResult<_>>()?;
            let mut e = Vec::with_capacity(idx.len() * idx.len());
            for &a in &idx {
                for &b in &idx {
                    let (i, j) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
                    let (sa, sb) = (a.signum() as f64, b.signum() as f64);
                    // (C_a + iS_a)(C_b − iS_b) with S_{−n} = −S_n
                    let re = cc(i, j) + sa * sb * ss(i, j);
                    let im = sa * cs(j, i) - sb * cs(i, j);
                    e.push(Complex64::new(re, im) / (2.0 * k[j]));
                }
            }
            (idx, e)
        }
        _ => {
            let idx: Vec<i64> = (1..=n as i64).collect();
            let mut e = Vec::with_capacity(n * n);
            for i in 1..=n {
                for j in 1..=n {
                    let x = match family {
                        GramFamily::Cosine => cc(i, j),
                        GramFamily::Sine => ss(i, j),
                        _ => cs(i, j),
                    };
                    e.push(Complex64::new(x, 0.0));
                }
            }
            (idx, e)
        }
    };
    Ok(GramMatrix { family, indices, entries, order: rule.order, est_error })
}

// (C(η;ω), S(η;ω)) in scaled form
fn eta_cs(omega: f64, ctx: &QContext) -> QResult<(ScaledReal, ScaledReal)> {
    let num = cs_numerators_at_eta(omega, ctx)?;
    let den = poch_inf_log(-ctx.q * omega * omega, ctx.q * ctx.q, ctx)?;
    Ok((num.c() / den, num.s() / den))
}

// (q^{1/2};q)_∞²/(q;q)_∞²
fn ratio_sq(ctx: &QContext) -> QResult<f64> {
    let r = poch_inf_real(ctx.qp(0.5), ctx.q, ctx)? / poch_inf_real(ctx.q, ctx.q, ctx)?;
    Ok(r * r)
}

fn diag_term(omega: f64, ctx: &QContext) -> QResult<f64> {
    let (c, s) = eta_cs(omega, ctx)?;
    Ok((c * s).to_real() * PI * ratio_sq(ctx)? / omega)
}

/// `∫C(·;ω)²w = k(ω) + π(q^{1/2};q)_∞²/(ω(q;q)_∞²)·C(η;ω)S(η;ω)`, any `ω > 0`.
pub fn diagonal_cc(omega: f64, ctx: &QContext) -> QResult<f64> {
    if omega <= 0.0 {
        return domain("diagonal forms need ω > 0");
    }
    Ok(k_norm(omega, KMethod::ClosedForm, ctx)?.value + diag_term(omega, ctx)?)
}

/// `∫S(·;ω)²w = k(ω) − π(q^{1/2};q)_∞²/(ω(q;q)_∞²)·C(η;ω)S(η;ω)`.
pub fn diagonal_ss(omega: f64, ctx: &QContext) -> QResult<f64> {
    if omega <= 0.0 {
        return domain("diagonal forms need ω > 0");
    }
    Ok(k_norm(omega, KMethod::ClosedForm, ctx)?.value - diag_term(omega, ctx)?)
}

fn cross_parts(w1: f64, w2: f64, ctx: &QContext) -> QResult<(f64, f64, f64)> {
    if w1 * w1 == w2 * w2 {
        return domain("cross terms need ω² ≠ ω′²");
    }
    let (c1, s1) = eta_cs(w1, ctx)?;
    let (c2, s2) = eta_cs(w2, ctx)?;
    let pre = 2.0 * PI / (w1 * w1 - w2 * w2) * ratio_sq(ctx)?;
    Ok((pre, (c2 * s1).to_real(), (c1 * s2).to_real()))
}

/// `∫C(·;ω)C(·;ω′)w = 2π/(ω²−ω′²)·(q^{1/2};q)_∞²/(q;q)_∞²·[ωC(η;ω′)S(η;ω) − ω′C(η;ω)S(η;ω′)]`.
pub fn cross_term_cc(w1: f64, w2: f64, ctx: &QContext) -> QResult<f64> {
    let (pre, c2s1, c1s2) = cross_parts(w1, w2, ctx)?;
    Ok(pre * (w1 * c2s1 - w2 * c1s2))
}

/// `∫S(·;ω)S(·;ω′)w = 2π/(ω²−ω′²)·(q^{1/2};q)_∞²/(q;q)_∞²·[ω′S(η;ω)C(η;ω′) − ωS(η;ω′)C(η;ω)]`.
pub fn cross_term_ss(w1: f64, w2: f64, ctx: &QContext) -> QResult<f64> {
    let (pre, c2s1, c1s2) = cross_parts(w1, w2, ctx)?;
    Ok(pre * (w2 * c2s1 - w1 * c1s2))
}
