//! Positive zeros `ω_n` of `S(η;·)` and `ϖ_n` of `C(η;·)`, found on the
//! scaled entire functions so that nothing overflows.

mod closed;
mod find;
mod io;

pub use io::ZeroSidecar;

pub use closed::{
    asymptotic_offsets, check_interlacing, derivative_signs, product_form_c, product_form_s,
    sine_at_test_point, sine_at_test_point_as_printed, value_at_cosine_zero, value_at_sine_zero, zero_count_annuli,
    zero_product_relation, AnnulusReport, InterlacingReport, ProductValue, ZeroProductRelation,
};
pub use find::{
    eval_c_scaled, eval_s_scaled, find_cosine_zeros, find_sine_zeros, scaled_cs,
    DENSE_SCAN_POINTS, ZERO_RESIDUAL_TOL,
};

use serde::{Deserialize, Serialize};

use crate::QContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroKind {
    SineZeros,
    CosineZeros,
}

/// Ascending positive zeros with the brackets and residuals that certify
/// them. `ω_0 = 0` of the sine is implicit and never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub kind: ZeroKind,
    pub q: f64,
    pub zeros: Vec<f64>,
    /// `|s(ω_n)|/sqrt(c² + s²)` (or the cosine analog) at the returned zero.
    pub residuals: Vec<f64>,
    pub brackets: Vec<(f64, f64)>,
    pub tol_used: f64,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `ω_n`, 1-based; `n = 0` gives the implicit zero of the sine.
    pub fn zero(&self, n: usize) -> Option<f64> {
        match n {
            0 if self.kind == ZeroKind::SineZeros => Some(0.0),
            0 => None,
            _ => self.zeros.get(n - 1).copied(),
        }
    }
}

/// `η = (q^{1/4} + q^{−1/4})/2 = x(1/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eta {
    pub value: f64,
}

impl Eta {
    pub fn new(ctx: &QContext) -> Self {
        Eta { value: ctx.eta() }
    }
}
