//! Basic cosine `C_q`, sine `S_q` and exponential `𝓔_q` on the grid
//! `x = (u + 1/u)/2`.

mod asymptotic;
mod dd;
mod difference;
mod eval;
mod hermite;
mod lattice;

pub use asymptotic::{
    amplitude_a, amplitude_b, asymptotic_cs, asymptotic_s_printed, full_expansion_c,
    full_expansion_s, full_expansion_s_as_printed, AsymptoticForm, SecondSumVariant,
};
pub use difference::{delta_coefficient, delta_derivative, difference_equation_residual};
pub use eval::{
    cs_real, eval_c, eval_c2, eval_e, eval_e2, eval_s, eval_s2, TrigRepresentation,
    AUTO_SERIES_LIMIT,
};
pub use hermite::{cs_numerators, cs_numerators_at_eta, hermite_e, CsNumerators};
pub use lattice::LatticePoint;
