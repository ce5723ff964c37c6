use serde::{Deserialize, Serialize};

use crate::error::{domain, QResult};

/// Numerical context shared by every operation: base `q`, truncation
/// tolerance, term cap, and the seed order for quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QContext {
    pub q: f64,
    pub tol: f64,
    pub max_terms: usize,
    pub quad_order: usize,
}

impl QContext {
    pub const DEFAULT_TOL: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: usize = 10_000;
    pub const DEFAULT_QUAD_ORDER: usize = 64;

    /// Context with default tolerance. For `q > 0.99` the term cap is raised
    /// so that `(a;q)_∞` with `|a| ≤ 1` can reach `tol`: roughly
    /// `2·ln(1/tol)/(1−q)` factors.
    pub fn new(q: f64) -> QResult<Self> {
        let ctx = QContext {
            q,
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
            quad_order: Self::DEFAULT_QUAD_ORDER,
        };
        ctx.validate()?;
        Ok(ctx.with_terms_for_q())
    }

    pub fn with_tol(mut self, tol: f64) -> QResult<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self.with_terms_for_q())
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> QResult<Self> {
        self.max_terms = max_terms;
        self.validate()?;
        Ok(self)
    }

    pub fn with_quad_order(mut self, order: usize) -> QResult<Self> {
        self.quad_order = order;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> QResult<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return domain(format!("q must lie in (0,1), got {}", self.q));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return domain(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_terms < 16 {
            return domain(format!("max_terms must be at least 16, got {}", self.max_terms));
        }
        if self.quad_order < 2 {
            return domain(format!("quad_order must be at least 2, got {}", self.quad_order));
        }
        Ok(())
    }

    fn with_terms_for_q(mut self) -> Self {
        let need = (2.0 * (1.0 / self.tol).ln() / (1.0 - self.q)).ceil() as usize;
        self.max_terms = self.max_terms.max(need);
        self
    }

    /// `q^a`.
    #[inline]
    pub fn qp(&self, a: f64) -> f64 {
        self.q.powf(a)
    }

    /// `η = (q^{1/4} + q^{−1/4})/2`.
    pub fn eta(&self) -> f64 {
        0.5 * (self.qp(0.25) + self.qp(-0.25))
    }
}
