//! Minimal faithful representation dimensions of finite p-groups attached to nilpotent
//! Lie rings, over finite fields and finite chain rings.
//!
//! The main entry points are [`fdim::fdim_field`] and [`fdim::fdim_ring`], which evaluate the
//! commutator matrix of a Lie ring at every point and solve a matroid selection problem, and
//! [`oracle`], an independent brute-force computation through coadjoint orbits.

pub mod error;
pub mod exact;
pub mod rings;
pub mod lie;
pub mod commutator;
pub mod pattern;
pub mod fdim;
pub mod metabelian;
pub mod dedekind;
pub mod oracle;

pub use error::{Error, ErrorKind, Result};
