use super::{ZeroKind, ZeroTable};
use crate::error::{domain, QError, QResult};
use crate::qcore::ScaledReal;
use crate::qtrig::cs_numerators_at_eta;
use crate::QContext;

/// Largest accepted `|s(ω_n)|/sqrt(c² + s²)` at a reported zero.
pub const ZERO_RESIDUAL_TOL: f64 = 1e-10;
/// Grid size of the seed scan used for the first three zeros.
pub const DENSE_SCAN_POINTS: usize = 4096;

const BISECT_CAP: usize = 200;
const SECANT_CAP: usize = 50;
const WINDOW_CAP: usize = 400;

/// `(c(ω), s(ω)) = (−qω²;q²)_∞ · (C(η;ω), S(η;ω))`.
pub fn scaled_cs(omega: f64, ctx: &QContext) -> QResult<(ScaledReal, ScaledReal)> {
    let n = cs_numerators_at_eta(omega, ctx)?;
    Ok((n.c(), n.s()))
}

/// `s(ω) = (−qω²;q²)_∞ S(η;ω)`; saturates to ±∞ outside the `f64` range.
pub fn eval_s_scaled(omega: f64, ctx: &QContext) -> QResult<f64> {
    Ok(scaled_cs(omega, ctx)?.1.to_real())
}

/// `c(ω) = (−qω²;q²)_∞ C(η;ω)`.
pub fn eval_c_scaled(omega: f64, ctx: &QContext) -> QResult<f64> {
    Ok(scaled_cs(omega, ctx)?.0.to_real())
}

// s/sqrt(c²+s²) (or c/…): same sign as the function, bounded by 1
pub(super) fn normalized(kind: ZeroKind, omega: f64, ctx: &QContext) -> QResult<f64> {
    let n = cs_numerators_at_eta(omega, ctx)?;
    let env = n.c_mant.hypot(n.s_mant);
    Ok(match kind {
        ZeroKind::SineZeros => n.s_mant / env,
        ZeroKind::CosineZeros => n.c_mant / env,
    })
}

// sign of the function on (z_{n−1}, z_n): positive before the first zero
fn expected_sign(n: usize) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

// asymptotic bracket [γ_{n−1}, γ_n] for the sine, shifted by q^{1/4} for the cosine
fn asymptotic_bracket(kind: ZeroKind, n: usize, q: f64) -> (f64, f64) {
    let hi = match kind {
        ZeroKind::SineZeros => q.powi(-(n as i32)),
        ZeroKind::CosineZeros => q.powf(0.25 - n as f64),
    };
    (hi * q, hi)
}

struct Finder<'a> {
    kind: ZeroKind,
    ctx: &'a QContext,
}

impl Finder<'_> {
    fn g(&self, w: f64) -> QResult<f64> {
        normalized(self.kind, w, self.ctx)
    }

    // sign changes over `parts` equal pieces of [lo, hi]
    fn split(&self, lo: f64, hi: f64, parts: usize) -> QResult<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        let mut a = lo;
        let mut ga = self.g(a)?;
        for i in 1..=parts {
            let b = if i == parts { hi } else { lo + (hi - lo) * i as f64 / parts as f64 };
            let gb = self.g(b)?;
            if ga * gb <= 0.0 && gb != 0.0 {
                out.push((a, b));
            }
            a = b;
            ga = gb;
        }
        Ok(out)
    }

    fn dense_scan(&self, top: f64) -> QResult<Vec<(f64, f64)>> {
        let h = top / DENSE_SCAN_POINTS as f64;
        self.split(h, top, DENSE_SCAN_POINTS - 1)
    }

    // windows [a, a/q] cut into 64 pieces, walking upward from `from`
    fn forward_scan(&self, from: f64, n: usize) -> QResult<(f64, f64)> {
        let mut a = from;
        for _ in 0..WINDOW_CAP {
            let b = a / self.ctx.q;
            if let Some(&br) = self.split(a, b, 64)?.first() {
                if self.g(br.0)? * expected_sign(n) > 0.0 {
                    return Ok(br);
                }
                return Err(QError::Structural(format!(
                    "sign pattern broken before zero {n} near {:.6e}: a zero was skipped",
                    br.0
                )));
            }
            a = b;
        }
        Err(QError::Structural(format!("no sign change found for zero {n} above {from:.6e}")))
    }

    fn refine(&self, mut lo: f64, mut hi: f64) -> QResult<f64> {
        let mut glo = self.g(lo)?;
        let mut ghi = self.g(hi)?;
        if glo == 0.0 {
            return Ok(lo);
        }
        if ghi == 0.0 {
            return Ok(hi);
        }
        for _ in 0..BISECT_CAP {
            if hi - lo <= 1e-13 * hi {
                break;
            }
            let m = 0.5 * (lo + hi);
            let gm = self.g(m)?;
            if gm == 0.0 {
                return Ok(m);
            }
            if (gm < 0.0) == (glo < 0.0) {
                lo = m;
                glo = gm;
            } else {
                hi = m;
                ghi = gm;
            }
        }
        // secant polish, kept inside the certified bracket
        let (mut a, mut ga, mut b, mut gb) = (lo, glo, hi, ghi);
        let mut best = if glo.abs() < ghi.abs() { lo } else { hi };
        for _ in 0..SECANT_CAP {
            let c = b - gb * (b - a) / (gb - ga);
            if !(c > lo && c < hi) || !c.is_finite() {
                break;
            }
            let gc = self.g(c)?;
            best = c;
            if gc == 0.0 || (c - b).abs() <= 4.0 * f64::EPSILON * c {
                break;
            }
            a = b;
            ga = gb;
            b = c;
            gb = gc;
        }
        Ok(best)
    }
}

fn find(kind: ZeroKind, n_max: usize, ctx: &QContext) -> QResult<ZeroTable> {
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    let q = ctx.q;
    // the Hermite series at ω = q^{−n_max−1} needs ~n_max·ln(1/q) headroom in the scale
    let top = (n_max as f64 + 2.0) * (1.0 / q).ln();
    if top > 300.0 {
        return domain(format!("q^(-n_max) = e^{top:.0} is out of range for q = {q}, n_max = {n_max}"));
    }
    let f = Finder { kind, ctx };
    let dense = f.dense_scan(q.powf(-3.75))?;
    let mut table = ZeroTable {
        kind,
        q,
        zeros: Vec::with_capacity(n_max),
        residuals: Vec::with_capacity(n_max),
        brackets: Vec::with_capacity(n_max),
        tol_used: ZERO_RESIDUAL_TOL,
    };
    for n in 1..=n_max {
        let prev = table.zeros.last().copied().unwrap_or(0.0);
        let mut bracket = None;
        if n < 4 {
            bracket = dense.get(n - 1).copied().filter(|b| b.0 >= prev);
        } else {
            let (lo, hi) = asymptotic_bracket(kind, n, q);
            if lo > prev && f.g(lo)? * expected_sign(n) > 0.0 {
                let parts = f.split(lo, hi, 8)?;
                if parts.len() == 1 {
                    bracket = Some(parts[0]);
                }
            }
        }
        let (lo, hi) = match bracket {
            Some(b) => b,
            None => {
                let start = if prev > 0.0 { prev * (1.0 + 1e-9) } else { 1e-6 };
                f.forward_scan(start, n)?
            }
        };
        let z = f.refine(lo, hi)?;
        let res = f.g(z)?.abs();
        if res > ZERO_RESIDUAL_TOL {
            return Err(QError::Structural(format!("zero {n} at {z:.17e} has residual {res:e}")));
        }
        // simplicity: a strict sign change across the final bracket
        let w = 1e-12 * z;
        if f.g(z - w)? * f.g(z + w)? > 0.0 {
            return Err(QError::Structural(format!("zero {n} at {z:.17e} is not a simple sign change")));
        }
        table.zeros.push(z);
        table.residuals.push(res);
        table.brackets.push((lo, hi));
    }
    Ok(table)
}

/// First `n_max` positive zeros `ω_1 < ω_2 < …` of `S(η;·)`.
pub fn find_sine_zeros(n_max: usize, ctx: &QContext) -> QResult<ZeroTable> {
    find(ZeroKind::SineZeros, n_max, ctx)
}

/// First `n_max` positive zeros `ϖ_1 < ϖ_2 < …` of `C(η;·)`.
pub fn find_cosine_zeros(n_max: usize, ctx: &QContext) -> QResult<ZeroTable> {
    find(ZeroKind::CosineZeros, n_max, ctx)
}
