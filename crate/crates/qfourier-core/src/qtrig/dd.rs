//! Double-double summation of the real-argument series. The alternating
//! sums lose up to ~8 digits for `q` near 1 (Σ|t|/|Σt| ≈ 1e8 for the `₂φ₁`
//! form at q = 0.9, ω = 0.85), so both the terms and the sums are carried in
//! ~32 digits.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::hermite::CsNumerators;
use crate::error::{QError, QResult};
use crate::QContext;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub(crate) fn hi(self) -> f64 {
        self.hi
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn recip(self) -> Dd {
        dd(1.0) / self
    }

    pub(crate) fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return dd(0.0);
        }
        let x = self.hi.sqrt();
        let r = self - dd(x) * dd(x);
        quick_two_sum(x, r.hi / (2.0 * x))
    }
}

pub(crate) fn dd(x: f64) -> Dd {
    Dd { hi: x, lo: 0.0 }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let p = self.hi * b.hi;
        let e = self.hi.mul_add(b.hi, -p) + (self.hi * b.lo + self.lo * b.hi);
        quick_two_sum(p, e)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p) + self.lo * b;
        quick_two_sum(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let s = quick_two_sum(q1, q2);
        s + dd(q3)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl MulAssign<f64> for Dd {
    fn mul_assign(&mut self, b: f64) {
        *self = *self * b;
    }
}

const DD_TOL: f64 = 1e-32;

fn diverged(what: &str, terms: usize, last: f64) -> QError {
    QError::Convergence { what: what.into(), terms, last }
}

/// `q^{1/4}` and `η = (q^{1/4} + q^{−1/4})/2` to double-double accuracy.
pub(crate) fn eta_dd(ctx: &QContext) -> Dd {
    let q4 = dd(ctx.q).sqrt().sqrt();
    (q4 + q4.recip()) * 0.5
}

// Σ_n t_n with t_{n+1}/t_n = (1 + a_n s2 + a_n²)(−ω²) / ((1 − q^{2n+2})(1 − c q^{2n})),
// a_n = a q^{2n}; s2 = u² + u^{−2} = 4x² − 2.
fn phi21_sum(a: Dd, c: Dd, s2: Dd, w2: Dd, ctx: &QContext) -> QResult<Dd> {
    let q2 = dd(ctx.q) * dd(ctx.q);
    let (mut t, mut sum) = (dd(1.0), dd(1.0));
    let mut b = dd(1.0); // q^{2n}
    let mut max_partial = 1.0f64;
    let mut small = 0;
    for n in 0..ctx.max_terms {
        let an = a * b;
        let num = dd(1.0) + an * s2 + an * an;
        let den = (dd(1.0) - q2 * b) * (dd(1.0) - c * b);
        t = -(t * num * w2 / den);
        sum += t;
        max_partial = max_partial.max(sum.hi().abs());
        if t.hi().abs() < DD_TOL * max_partial {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !sum.hi().is_finite() {
            return Err(diverged("2phi1 series", n, t.hi().abs()));
        }
        b *= q2;
    }
    Err(diverged("2phi1 series", ctx.max_terms, t.hi().abs()))
}

/// The two `₂φ₁` sums of `C` and `S` at real `x`, `|ω| < 1`, without the
/// positive prefactor `(−ω²;q²)_∞/(−qω²;q²)_∞` and the sine lead
/// `2q^{1/4}ωx/(1−q)`.
pub(crate) fn phi21_real(x: Dd, omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    let q = dd(ctx.q);
    let s2 = x * x * 4.0 - dd(2.0);
    let w2 = dd(omega) * dd(omega);
    let c = phi21_sum(q, q, s2, w2, ctx)?;
    let s = phi21_sum(q * q, q * q * q, s2, w2, ctx)?;
    Ok((c.to_f64(), s.to_f64()))
}

// Σ_n t_n with t_{n+1}/t_n = (1 + ω²Q^n)(1 + qω²Q^n)(−zQ^n)
//   / ((1 − Q^{n+1})(1 − kω²Q^n s2 + k²ω⁴Q^{2n})), Q = q².
fn phi22_sum(k: Dd, z: Dd, s2: Dd, w2: Dd, ctx: &QContext) -> QResult<Dd> {
    let q = dd(ctx.q);
    let q2 = q * q;
    let kw = k * w2;
    let (mut t, mut sum) = (dd(1.0), dd(1.0));
    let mut b = dd(1.0);
    let mut max_partial = 1.0f64;
    let mut small = 0;
    for n in 0..ctx.max_terms {
        let num = (dd(1.0) + w2 * b) * (dd(1.0) + q * w2 * b);
        let kb = kw * b;
        let den = (dd(1.0) - q2 * b) * (dd(1.0) - kb * s2 + kb * kb);
        t = -(t * num * z * b / den);
        sum += t;
        max_partial = max_partial.max(sum.hi().abs());
        if t.hi().abs() < DD_TOL * max_partial {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !sum.hi().is_finite() {
            return Err(diverged("2phi2 series", n, t.hi().abs()));
        }
        b *= q2;
    }
    Err(diverged("2phi2 series", ctx.max_terms, t.hi().abs()))
}

/// The two `₂φ₂` sums of `C` and `S` at real `x`, without prefactors.
pub(crate) fn phi22_real(x: Dd, omega: f64, ctx: &QContext) -> QResult<(f64, f64)> {
    let q = dd(ctx.q);
    let s2 = x * x * 4.0 - dd(2.0);
    let w2 = dd(omega) * dd(omega);
    let c = phi22_sum(q, q, s2, w2, ctx)?;
    let s = phi22_sum(q * q, q * q * q, s2, w2, ctx)?;
    Ok((c.to_f64(), s.to_f64()))
}

// 2^k as an f64, k within the normal range
fn pow2(k: i64) -> f64 {
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// Even/odd parts of `Σ q^{n²/4} (iω)ⁿ H_n(x|q)/(q;q)_n` at real `x`,
/// normalized by a power of two near the largest coefficient.
pub(crate) fn hermite_real(x: Dd, omega: f64, ctx: &QContext) -> QResult<CsNumerators> {
    let q = ctx.q;
    let w = omega.abs();
    if w == 0.0 {
        return Ok(CsNumerators { c_mant: 1.0, s_mant: 0.0, log_scale: 0.0, abs_sum: 1.0, terms: 1 });
    }
    // peak of log q^{n²/4} wⁿ/(q;q)_n, in double: only fixes the common scale
    let (lq, lw) = (q.ln(), w.ln());
    let inc = |n: usize, qn1: f64| (2 * n + 1) as f64 / 4.0 * lq + lw - (-qn1).ln_1p();
    let (mut l, mut lmax, mut qn1) = (0.0f64, 0.0f64, q);
    let mut n = 0;
    loop {
        let d = inc(n, qn1);
        if d <= 0.0 {
            break;
        }
        l += d;
        lmax = lmax.max(l);
        qn1 *= q;
        n += 1;
        if n > ctx.max_terms {
            return Err(diverged("q-Hermite peak search", n, l));
        }
    }
    let big_e = (lmax / std::f64::consts::LN_2).round() as i64;

    let qd = dd(q);
    let q4 = qd.sqrt().sqrt();
    let q2 = qd.sqrt();
    let wd = dd(w);
    // coefficient r = mant · 2^e
    let (mut mant, mut e) = (dd(1.0), 0i64);
    let mut qpow = q4; // q^{(2n+1)/4}
    let mut qn = dd(1.0); // q^n
    let (mut h0, mut h1) = (dd(0.0), dd(1.0));
    let (mut c, mut s) = (dd(0.0), dd(0.0));
    let mut abs_sum = 0.0f64;
    let mut max_partial = 0.0f64;
    let mut small = 0;
    for n in 0..ctx.max_terms {
        let shift = e - big_e;
        let term = if shift < -1000 { dd(0.0) } else { mant * h1 * pow2(shift.min(1000)) };
        abs_sum += term.hi().abs();
        match n % 4 {
            0 => c += term,
            1 => s += term,
            2 => c -= term,
            _ => s -= term,
        }
        max_partial = max_partial.max(c.hi().abs()).max(s.hi().abs());
        if !max_partial.is_finite() {
            return Err(diverged("q-Hermite trig series", n, term.hi().abs()));
        }
        // coefficient ratio q^{(2n+1)/4} w / (1 − q^{n+1})
        let ratio = qpow * wd / (dd(1.0) - qn * qd);
        let size = if shift < -1000 { 0.0 } else { (mant.hi() * pow2(shift.min(1000))).abs() * h1.hi().abs().max(h0.hi().abs()) };
        if size < DD_TOL * max_partial && ratio.hi() < 1.0 {
            small += 1;
            if small >= 3 {
                let sm = s.to_f64();
                return Ok(CsNumerators {
                    c_mant: c.to_f64(),
                    s_mant: if omega < 0.0 { -sm } else { sm },
                    log_scale: big_e as f64 * std::f64::consts::LN_2,
                    abs_sum,
                    terms: n + 1,
                });
            }
        } else {
            small = 0;
        }
        let h2 = x * h1 * 2.0 - (dd(1.0) - qn) * h0;
        h0 = h1;
        h1 = h2;
        mant *= ratio;
        let m = mant.hi().abs();
        if m > 1e30 {
            mant *= pow2(-100);
            e += 100;
        } else if m < 1e-30 && m > 0.0 {
            mant *= pow2(100);
            e -= 100;
        }
        qpow *= q2;
        qn *= qd;
    }
    Err(diverged("q-Hermite trig series", ctx.max_terms, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_sqrt_reach_double_double() {
        let third = dd(1.0) / dd(3.0);
        assert!((third * 3.0 - dd(1.0)).to_f64().abs() < 1e-31);
        let r = dd(2.0).sqrt();
        assert!((r * r - dd(2.0)).to_f64().abs() < 1e-31);
        let q = dd(0.9);
        let x = (dd(1.0) - q * q) / (dd(1.0) - q);
        assert!((x - (dd(1.0) + q)).to_f64().abs() < 1e-31);
    }
}
