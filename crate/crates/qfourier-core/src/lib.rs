//! Basic trigonometric and exponential functions on the q-quadratic grid
//! `x = (u + 1/u)/2`, the spectrum of the basic sine at `η`, and q-Fourier
//! expansions built on it.
//!
//! Modules, bottom-up:
//! - [`qcore`]: q-shifted factorials, `ᵣφₛ`, q-gamma, q-Hermite, q-ultraspherical, Jackson `J⁽²⁾`
//! - [`qtrig`]: `C_q`, `S_q`, `𝓔_q` in several representations, divided differences, asymptotics
//! - [`zeros`]: zeros of `S(η;·)` and `C(η;·)`, closed forms tied to them
//! - [`quadrature`]: the orthogonality weight, Gauss–Legendre integration, Gram matrices
//! - [`qfourier`]: normalization `k(ω)`, coefficients, Parseval, generating functions, Abel sums

pub mod error;
pub mod qcore;
pub mod qfourier;
pub mod qtrig;
pub mod quadrature;
pub mod zeros;

pub use error::{QError, QResult};
pub use qcore::QContext;

/// Library version recorded in persisted tables and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
