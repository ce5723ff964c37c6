//! Normalization constants, q-Fourier coefficients and partial sums, the
//! Poisson kernel and Abel means, and the q-Legendre expansion.

mod coeffs;
mod function;
mod kernels;
mod knorm;
mod legendre;

pub use coeffs::{
    coefficients, parseval_gap, partial_sum, partial_sum_theta, weighted_l2_error, weighted_norm_sq,
    x_sine_coefficient, CoefficientForm, CoefficientValues, FourierCoefficients,
};
pub use function::Function;
pub use kernels::*;
pub use knorm::{k_limit, k_norm, KMethod, KNorm};
pub use legendre::*;
