//! Exact integer linear algebra and selection utilities.

pub mod intmatrix;
pub mod lattice;
pub mod selection;

pub use intmatrix::{hermite_form, integer_kernel, smith_normal_form, HermiteForm, IntMatrix, SmithDecomposition};
pub use lattice::{semibasis, semibasis_of, solve_rational, Lattice, SemibasisResult, Subquotient};
pub use selection::{
    check_ineq, check_ineq_int, min_weight_selection, partition_basis, IndependenceTracker, Selection,
};
