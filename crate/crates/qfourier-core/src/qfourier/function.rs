use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, QResult};
use crate::qcore::{q_ultraspherical, QContext};
use crate::qtrig::cs_real;
use crate::zeros::ZeroTable;

type Eval = dyn Fn(f64) -> QResult<Complex64> + Send + Sync;

/// A function of `x = cos θ`, evaluated in θ. `breaks` lists interior θ
/// where it has a jump or kink; integration splits there.
#[derive(Clone)]
pub struct Function {
    pub descriptor: String,
    pub real: bool,
    pub breaks: Vec<f64>,
    f: Arc<Eval>,
}

impl std::fmt::Debug for Function {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Function").field("descriptor", &self.descriptor).field("real", &self.real).finish()
    }
}

impl Function {
    pub fn new<F>(descriptor: impl Into<String>, real: bool, f: F) -> Self
    where
        F: Fn(f64) -> QResult<Complex64> + Send + Sync + 'static,
    {
        Function { descriptor: descriptor.into(), real, breaks: vec![], f: Arc::new(f) }
    }

    pub fn real<F>(descriptor: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> QResult<f64> + Send + Sync + 'static,
    {
        Self::new(descriptor, true, move |t| Ok(Complex64::new(f(t)?, 0.0)))
    }

    pub fn with_breaks(mut self, breaks: Vec<f64>) -> Self {
        self.breaks = breaks;
        self
    }

    /// Value at θ.
    pub fn eval(&self, theta: f64) -> QResult<Complex64> {
        (self.f)(theta)
    }

    pub fn one() -> Self {
        Self::real("one", |_| Ok(1.0))
    }

    pub fn x() -> Self {
        Self::real("x", |t| Ok(t.cos()))
    }

    pub fn x2() -> Self {
        Self::real("x2", |t| Ok(t.cos().powi(2)))
    }

    /// `sign(x)`, zero at `x = 0`.
    pub fn sign() -> Self {
        Self::real("sign", |t| Ok(if t < PI / 2.0 { 1.0 } else if t > PI / 2.0 { -1.0 } else { 0.0 }))
            .with_breaks(vec![PI / 2.0])
    }

    /// Unit step at `x = 0` (value ½ there).
    pub fn step() -> Self {
        Self::real("step", |t| Ok(if t < PI / 2.0 { 1.0 } else if t > PI / 2.0 { 0.0 } else { 0.5 }))
            .with_breaks(vec![PI / 2.0])
    }

    /// `C(x;ω_n)`, `S(x;ω_n)`, or `𝓔(x;iω_n)` with `ω_{−n} = −ω_n`.
    pub fn mode(kind: char, n: i64, table: &ZeroTable, ctx: &QContext) -> QResult<Self> {
        let w = signed_zero(n, table)?;
        let c = *ctx;
        let d = format!("mode:{kind}:{n}");
        Ok(match kind {
            'C' => Self::real(d, move |t| Ok(cs_real(t, w, &c)?.0)),
            'S' => Self::real(d, move |t| Ok(cs_real(t, w, &c)?.1)),
            'E' => Self::new(d, false, move |t| {
                let (a, b) = cs_real(t, w, &c)?;
                Ok(Complex64::new(a, b))
            }),
            _ => return domain(format!("mode kind must be C, S or E, got {kind}")),
        })
    }

    /// `C_m(x;q^{1/2}|q)`.
    pub fn legendre(m: usize, ctx: &QContext) -> Self {
        let c = *ctx;
        let b = ctx.qp(0.5);
        Self::real(format!("legendre:{m}"), move |t| q_ultraspherical(m, t.cos(), b, &c))
    }

    /// Piecewise-linear interpolation of `(θ, f)` samples (sorted by θ,
    /// covering `[0, π]` after constant extension at the ends).
    pub fn from_points(descriptor: impl Into<String>, mut pts: Vec<(f64, f64)>) -> QResult<Self> {
        if pts.is_empty() {
            return domain("point function needs at least one sample");
        }
        if pts.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
            return domain("point samples must be finite");
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let breaks = pts.iter().map(|p| p.0).collect();
        let f = move |t: f64| -> QResult<f64> {
            let i = pts.partition_point(|p| p.0 <= t);
            Ok(if i == 0 {
                pts[0].1
            } else if i == pts.len() {
                pts[i - 1].1
            } else {
                let ((a, fa), (b, fb)) = (pts[i - 1], pts[i]);
                if b == a {
                    fb
                } else {
                    fa + (fb - fa) * (t - a) / (b - a)
                }
            })
        };
        Ok(Self::real(descriptor, f).with_breaks(breaks))
    }

    /// Builtins by name: `one`, `x`, `x2`, `sign`, `step`, `mode:K:n`
    /// (K ∈ {C, S, E}), `legendre:m`.
    pub fn parse(name: &str, table: &ZeroTable, ctx: &QContext) -> QResult<Self> {
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["one"] => Ok(Self::one()),
            ["x"] => Ok(Self::x()),
            ["x2"] => Ok(Self::x2()),
            ["sign"] => Ok(Self::sign()),
            ["step"] => Ok(Self::step()),
            ["mode", k, n] if k.len() == 1 => {
                let n: i64 = n.parse().map_err(|_| crate::QError::Domain(format!("bad mode index in {name}")))?;
                Self::mode(k.chars().next().unwrap(), n, table, ctx)
            }
            ["legendre", m] => {
                let m: usize = m.parse().map_err(|_| crate::QError::Domain(format!("bad degree in {name}")))?;
                Ok(Self::legendre(m, ctx))
            }
            _ => domain(format!("unknown function {name}")),
        }
    }
}

/// `ω_n` for signed `n` (`ω_{−n} = −ω_n`, `ω_0 = 0`).
pub(crate) fn signed_zero(n: i64, table: &ZeroTable) -> QResult<f64> {
    match table.zero(n.unsigned_abs() as usize) {
        Some(w) => Ok(if n < 0 { -w } else { w }),
        None => domain(format!("zero table has no ω_{}", n.unsigned_abs())),
    }
}
