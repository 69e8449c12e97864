//! Minimal faithful dimension of `exp(g ⊗ R)`.

pub mod engine;
pub mod explore;
pub mod result;

pub use engine::{fdim, fdim_field, fdim_ring};
pub use explore::{check_bounds, explore, fit_mu, fit_mu_value, BoundReport, ExploreCell, FitReport, MuVector};
pub use result::{EngineConfig, FdimResult, Method, RingParams, WitnessEntry, DEFAULT_BUDGET, FLAG_SMALL_PRIME};
