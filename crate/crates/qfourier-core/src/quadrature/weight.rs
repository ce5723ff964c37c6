use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{QError, QResult};
use crate::qcore::QContext;

/// `Π_k (1 − 2aₖc + aₖ²)/(1 − 2bₖc + bₖ²)` with `aₖ = a0·qᵏ`, `bₖ = b0·qᵏ`,
/// `c = cos 2θ`: the product `|(a0 e^{2iθ};q)_∞|²/|(b0 e^{2iθ};q)_∞|²`.
/// Stops once `4a/(1−a)²` (a bound on the remaining log-tail) is below
/// `tol/100`.
pub(crate) fn pair_ratio(theta: f64, a0: f64, b0: f64, ctx: &QContext) -> QResult<f64> {
    let c = (2.0 * theta).cos();
    let q = ctx.q;
    let (mut a, mut b) = (a0, b0);
    let mut p = 1.0;
    let mut k = 0;
    loop {
        let top = 1.0 - 2.0 * a * c + a * a;
        if top <= 0.0 {
            return Ok(0.0);
        }
        p *= top / (1.0 - 2.0 * b * c + b * b);
        a *= q;
        b *= q;
        k += 1;
        let m = a.max(b);
        if m < 0.5 && 4.0 * m / ((1.0 - m) * (1.0 - m)) < 1e-2 * ctx.tol {
            return Ok(p);
        }
        if k > ctx.max_terms {
            return Err(QError::Convergence { what: "weight product".into(), terms: k, last: m });
        }
    }
}

/// `w(θ) = |(e^{2iθ};q)_∞|²/|(q^{1/2}e^{2iθ};q)_∞|²`.
pub fn weight(theta: f64, ctx: &QContext) -> QResult<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return crate::error::domain(format!("weight needs θ in [0, π], got {theta}"));
    }
    // 1 − cos 2θ loses everything near the ends; factor out the k = 0 term as 4sin²θ
    let s = theta.sin();
    if s == 0.0 || theta == std::f64::consts::PI {
        return Ok(0.0);
    }
    let head = 4.0 * s * s / (1.0 - 2.0 * ctx.qp(0.5) * (2.0 * theta).cos() + ctx.q);
    Ok(head * pair_ratio(theta, ctx.q, ctx.q * ctx.qp(0.5), ctx)?)
}

/// Weight for a fixed `q` with a cache of evaluated points, so that repeated
/// integrals on the same rule reuse node values.
#[derive(Debug)]
pub struct WeightFn {
    pub q: f64,
    ctx: QContext,
    cache: RwLock<HashMap<u64, f64>>,
}

impl WeightFn {
    pub fn new(ctx: &QContext) -> Self {
        WeightFn { q: ctx.q, ctx: *ctx, cache: RwLock::new(HashMap::new()) }
    }

    pub fn eval(&self, theta: f64) -> QResult<f64> {
        let key = theta.to_bits();
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = weight(theta, &self.ctx)?;
        self.cache.write().unwrap().insert(key, v);
        Ok(v)
    }

    /// Cached `(θ, w(θ))` pairs, sorted by θ.
    pub fn cached(&self) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> =
            self.cache.read().unwrap().iter().map(|(k, w)| (f64::from_bits(*k), *w)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    }
}
