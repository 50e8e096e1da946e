//! Exact integer linear algebra over finitely presented abelian groups.

mod group;
mod hom;
mod lattice;
mod matrix;
mod oracle;
mod snf;

pub use group::{Canonical, FgAbPresentation};
pub use hom::{
    cokernel_presentation, injections, integer_kernel, kernel_basis, projections, solve, solve_integer, AbHom,
};
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use oracle::{tensor_oracle, tor1_oracle};
pub use snf::{smith, snf, SmithForm};
