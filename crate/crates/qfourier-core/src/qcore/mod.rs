//! Foundational q-series arithmetic.

mod bessel;
mod context;
mod hyper;
mod pochhammer;
mod poly;
mod scaled;

pub use bessel::{q_bessel2, q_bessel2_detail, BesselValue};
pub use context::QContext;
pub use hyper::{basic_hyper, HyperSeriesSpec, SeriesValue, StopRule};
pub use pochhammer::{
    multi_qpochhammer, poch_inf_log, poch_inf_real, poch_real, q_gamma, qpochhammer,
    qpochhammer_detail, qpochhammer_scaled, Order, PochValue,
};
pub use poly::{q_hermite, q_hermite_explicit, q_hermite_real, q_ultraspherical};
pub use scaled::ScaledReal;
