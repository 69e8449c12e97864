//! Independent brute-force computation of faithful dimensions through coadjoint orbits of
//! the finite group `exp(g ⊗ R)`, for unramified rings `R`.

pub mod bruteforce;
pub mod group;
pub mod orbits;
pub mod table;

pub use bruteforce::{fdim_bruteforce, fdim_from_table, oracle_fdim, OracleReport};
pub use group::{bch_coefficients, PGroup};
pub use orbits::{coadjoint_orbits, Orbit, OrbitSummary, OrbitTable, DEFAULT_ORACLE_BUDGET};
pub use table::TableRing;
