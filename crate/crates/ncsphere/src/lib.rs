//! Exact and numeric computations on noncommutative planes and spheres.

pub mod cli;
pub mod clifford;
pub mod diffforms;
pub mod grassmann;
pub mod homology;
pub mod moduli;
pub mod ncalg;
pub mod qgroup;
pub mod rewrite;
pub mod scalar;
pub mod splitting;
