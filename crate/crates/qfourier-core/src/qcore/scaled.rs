use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

/// Sign plus natural-log magnitude, for products such as `(−qω²;q²)_∞`
/// that leave the `f64` range at large `ω`.
///
/// Stored as `sign · m · 2^e` with `m ∈ [1, 2)` so that conversion to and
/// from `f64` is exact inside the floating range; `logmag()` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    sign: i8,
    mant: f64,
    exp: i64,
}

const LN2: f64 = std::f64::consts::LN_2;

fn split(x: f64) -> (f64, i64) {
    // x > 0 and finite
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal: rescale first
        let (m, e) = split(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, raw - 1023)
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { sign: 0, mant: 0.0, exp: 0 };
    pub const ONE: ScaledReal = ScaledReal { sign: 1, mant: 1.0, exp: 0 };

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 || x.is_nan() {
            return Self::ZERO;
        }
        if x.is_infinite() {
            return Self::from_log(if x > 0.0 { 1 } else { -1 }, f64::INFINITY);
        }
        let (mant, exp) = split(x.abs());
        ScaledReal { sign: if x > 0.0 { 1 } else { -1 }, mant, exp }
    }

    /// Build from a sign and a natural log magnitude.
    pub fn from_log(sign: i8, logmag: f64) -> Self {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let sign = sign.signum();
        if logmag.is_infinite() {
            return ScaledReal { sign, mant: f64::INFINITY, exp: 0 };
        }
        let e = (logmag / LN2).floor();
        let (m, de) = split((logmag - e * LN2).exp());
        ScaledReal { sign, mant: m, exp: e as i64 + de }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn logmag(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.mant.ln() + self.exp as f64 * LN2
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Nearest `f64`; saturates to ±∞ or 0 outside the range.
    pub fn to_real(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-1200, 1200) as i32;
        // two steps so that subnormal results are not flushed early
        let half = e / 2;
        f64::from(self.sign) * self.mant * 2f64.powi(half) * 2f64.powi(e - half)
    }

    fn norm(sign: i8, mant: f64, exp: i64) -> Self {
        if sign == 0 || mant == 0.0 {
            return Self::ZERO;
        }
        if !mant.is_finite() {
            return ScaledReal { sign, mant, exp: 0 };
        }
        let (m, de) = split(mant);
        ScaledReal { sign, mant: m, exp: exp + de }
    }

    pub fn abs(&self) -> Self {
        ScaledReal { sign: self.sign.abs(), ..*self }
    }

    pub fn recip(&self) -> Self {
        if self.sign == 0 {
            return ScaledReal { sign: 1, mant: f64::INFINITY, exp: 0 };
        }
        Self::norm(self.sign, 1.0 / self.mant, -self.exp)
    }

    /// Square root of the magnitude; the sign must not be negative.
    pub fn sqrt(&self) -> Self {
        debug_assert!(self.sign >= 0);
        if self.sign == 0 {
            return Self::ZERO;
        }
        let (m, e) = if self.exp % 2 == 0 {
            (self.mant, self.exp)
        } else {
            (self.mant * 2.0, self.exp - 1)
        };
        Self::norm(1, m.sqrt(), e / 2)
    }

    pub fn powf(&self, p: f64) -> Self {
        if p == 0.0 {
            return Self::ONE;
        }
        debug_assert!(self.sign >= 0);
        Self::from_log(self.sign, p * self.logmag())
    }

    /// Signed sum computed on aligned mantissas.
    pub fn add(&self, other: &Self) -> Self {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let (big, small) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = big.exp - small.exp;
        let s = if shift > 1100 {
            0.0
        } else {
            f64::from(small.sign) * small.mant * 2f64.powi(-(shift as i32))
        };
        let v = f64::from(big.sign) * big.mant + s;
        if v == 0.0 {
            return Self::ZERO;
        }
        Self::norm(if v > 0.0 { 1 } else { -1 }, v.abs(), big.exp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&-*other)
    }

    /// Multiply by an ordinary float.
    pub fn scale(&self, x: f64) -> Self {
        *self * Self::from_real(x)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.mant.total_cmp(&other.mant)),
        }
    }
}

impl Mul for ScaledReal {
    type Output = ScaledReal;
    fn mul(self, rhs: ScaledReal) -> ScaledReal {
        Self::norm(self.sign * rhs.sign, self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl Div for ScaledReal {
    type Output = ScaledReal;
    fn div(self, rhs: ScaledReal) -> ScaledReal {
        if rhs.sign == 0 {
            return ScaledReal { sign: if self.sign == 0 { 1 } else { self.sign }, mant: f64::INFINITY, exp: 0 };
        }
        Self::norm(self.sign * rhs.sign, self.mant / rhs.mant, self.exp - rhs.exp)
    }
}

impl Neg for ScaledReal {
    type Output = ScaledReal;
    fn neg(self) -> ScaledReal {
        ScaledReal { sign: -self.sign, ..self }
    }
}

impl Default for ScaledReal {
    fn default() -> Self {
        Self::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_extremes() {
        for x in [1e-310, 5e-324, 1e300, -1.7e308, 0.1, -3.0] {
            assert_eq!(ScaledReal::from_real(x).to_real(), x);
        }
    }

    #[test]
    fn products_beyond_range() {
        let big = ScaledReal::from_real(1e300);
        let p = big * big * big;
        assert!((p.logmag() - 900.0 * 10f64.ln()).abs() < 1e-12);
        assert_eq!((p / big / big).to_real(), 1e300);
        assert_eq!(p.to_real(), f64::INFINITY);
    }

    #[test]
    fn log_constructor() {
        let s = ScaledReal::from_log(-1, 2.0);
        assert!((s.to_real() + 2f64.exp()).abs() < 1e-15 * 2f64.exp());
        assert_eq!(ScaledReal::from_log(1, f64::NEG_INFINITY), ScaledReal::ZERO);
    }
}
