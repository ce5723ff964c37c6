use num_complex::Complex64;

use super::QContext;
use crate::error::{domain, QError, QResult};

/// `ᵣφₛ(a₁..a_r; b₁..b_s; base, argument)`, including the
/// `((−1)ⁿ base^{n(n−1)/2})^{1+s−r}` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSeriesSpec {
    pub numerators: Vec<Complex64>,
    pub denominators: Vec<Complex64>,
    pub base: f64,
    pub argument: Complex64,
}

impl HyperSeriesSpec {
    pub fn new(numerators: Vec<Complex64>, denominators: Vec<Complex64>, base: f64, argument: Complex64) -> Self {
        HyperSeriesSpec { numerators, denominators, base, argument }
    }

    /// All-real convenience constructor.
    pub fn real(numerators: &[f64], denominators: &[f64], base: f64, argument: f64) -> Self {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(c(numerators), c(denominators), base, Complex64::new(argument, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Sum of the magnitudes of the last three terms added.
    pub err_est: f64,
    pub terms: usize,
}

/// Three-consecutive-small-terms stopping rule shared by every series.
#[derive(Debug, Clone)]
pub struct StopRule {
    tol: f64,
    run: usize,
    max_partial: f64,
    recent: [f64; 3],
}

impl StopRule {
    pub fn new(tol: f64) -> Self {
        StopRule { tol, run: 0, max_partial: 0.0, recent: [0.0; 3] }
    }

    /// Record a term and the partial sum after it; `true` once three terms in
    /// a row fall below `tol · max |partial|`.
    pub fn push(&mut self, term_abs: f64, partial_abs: f64) -> bool {
        self.max_partial = self.max_partial.max(partial_abs);
        self.recent = [self.recent[1], self.recent[2], term_abs];
        let scale = if self.max_partial > 0.0 { self.max_partial } else { 1.0 };
        if term_abs < self.tol * scale {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= 3
    }

    pub fn err_est(&self) -> f64 {
        self.recent.iter().sum()
    }
}

/// Sum `ᵣφₛ` term by term.
pub fn basic_hyper(spec: &HyperSeriesSpec, ctx: &QContext) -> QResult<SeriesValue> {
    let b = spec.base;
    if !(b > 0.0 && b.is_finite()) {
        return domain(format!("series base must be positive, got {b}"));
    }
    let one = Complex64::new(1.0, 0.0);
    let z = spec.argument;
    let extra = 1 + spec.denominators.len() as i32 - spec.numerators.len() as i32;
    let mut term = one;
    let mut sum = one;
    let mut rule = StopRule::new(ctx.tol);
    rule.push(1.0, 1.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue { value: one, err_est: 0.0, terms: 1 });
    }
    let mut bn = 1.0; // base^n
    for n in 0..ctx.max_terms {
        let mut num = one;
        for &a in &spec.numerators {
            num *= one - a * bn;
        }
        let mut den = one - b * bn;
        let mut den_zero = den.norm() == 0.0;
        for &c in &spec.denominators {
            let f = one - c * bn;
            if f.norm() <= 1e-15 {
                den_zero = true;
            }
            den *= f;
        }
        if num.norm() == 0.0 {
            // terminating series: the rest vanishes
            return Ok(SeriesValue { value: sum, err_est: 0.0, terms: n + 1 });
        }
        if den_zero {
            return domain(format!("denominator q-shifted factorial vanishes at n = {}", n + 1));
        }
        let mut ratio = num / den * z;
        if extra != 0 {
            ratio *= (-bn).powi(extra);
        }
        term *= ratio;
        sum += term;
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(QError::Convergence { what: "basic hypergeometric series".into(), terms: n + 2, last: term.norm() });
        }
        if rule.push(term.norm(), sum.norm()) {
            return Ok(SeriesValue { value: sum, err_est: rule.err_est(), terms: n + 2 });
        }
        bn *= b;
    }
    Err(QError::Convergence {
        what: "basic hypergeometric series".into(),
        terms: ctx.max_terms,
        last: term.norm(),
    })
}
