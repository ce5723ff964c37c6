use num_complex::Complex64;

use crate::error::{domain, QResult};
use crate::QContext;

/// Grid point `u = e^{iθ} = q^z`, `x = (u + 1/u)/2`. Shifts in `z` are
/// multiplications of `u` by powers of `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    u: Complex64,
}

impl LatticePoint {
    pub fn new(u: Complex64) -> QResult<Self> {
        if u.norm() == 0.0 || !u.re.is_finite() || !u.im.is_finite() {
            return domain("lattice point needs finite nonzero u");
        }
        Ok(LatticePoint { u })
    }

    /// `u = e^{iθ}`, so `x = cosθ`.
    pub fn real_point(theta: f64) -> Self {
        LatticePoint { u: Complex64::from_polar(1.0, theta) }
    }

    /// `u = q^{1/4}`, so `x = η`.
    pub fn eta(ctx: &QContext) -> Self {
        LatticePoint { u: Complex64::new(ctx.q.powf(0.25), 0.0) }
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn x(&self) -> Complex64 {
        0.5 * (self.u + self.u.inv())
    }

    /// `z → z + s`, i.e. `u → q^s u`.
    pub fn shift(&self, s: f64, ctx: &QContext) -> Self {
        LatticePoint { u: self.u * ctx.q.powf(s) }
    }

    /// `z → z + 1/2`.
    pub fn shift_half(&self, ctx: &QContext) -> Self {
        self.shift(0.5, ctx)
    }

    /// `θ` when the point sits on the unit circle.
    pub fn theta(&self) -> Option<f64> {
        ((self.u.norm() - 1.0).abs() < 1e-14).then(|| self.u.arg())
    }
}
