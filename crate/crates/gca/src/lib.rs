//! Exact symbolic computation for the planar Galilean conformal algebra:
//! bracket arithmetic in both bases, derivations in the normal form
//! `ad(w) + lambda*D`, window-truncated derivation-space solving over Q(i),
//! and a constructive extraction turning consistent 2-local derivation
//! tables into genuine derivations.
//!
//! Start with the `examples/` directory for runnable tours of each
//! capability, or the `gca` binary for the command-line front door.

pub mod algebra;
pub mod derivation;
pub mod error;
pub mod exprio;
pub mod fuzz;
mod linalg;
pub mod replay;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod twolocal;

pub use algebra::{bracket, Basis, Element, Family, Generator};
pub use derivation::{outer_d, Derivation, LinearMapOnWindow, Window};
pub use error::Error;
pub use exprio::{parse_element, print_element};
pub use scalar::GaussianRational;
pub use solver::{
    annihilator, center_check, derivation_space, joint_annihilator, witness_solve,
    DerivationSpace, WitnessSpace,
};
pub use twolocal::{extract_derivation, validate_homogeneity, TwoLocalInstance};
