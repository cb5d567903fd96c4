//! Exact computations in the Mukai lattice of a K3 surface.

// errors carry the offending exact values
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod gcy;
pub mod hodge;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod moduli;
pub mod mukai;
pub mod oracle;
pub mod scalar;
pub mod selftest;
