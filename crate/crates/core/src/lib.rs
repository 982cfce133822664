//! Finite Gray-categories and the cells of their mapping spaces.
//!
//! The crate stores Gray-categories as explicit operation tables and checks
//! every axiom by exhaustive evaluation. On top of that it provides strict
//! Gray-functors, pseudo-transformations, pseudo-modifications and
//! perturbations, their composites, the horizontal composition `*₋₁`, the
//! mapping spaces `[G,H]` and the postcomposition map `L`.

pub mod cli_io;
pub mod gray_core;
pub mod gray_maps;
pub mod hcomp;
pub mod hom_calculus;
pub mod mapping_space;
pub mod transfors;

mod search;

pub use gray_core::{Cell, FiniteGrayCategory, GrayError, Op, ValidationReport};
