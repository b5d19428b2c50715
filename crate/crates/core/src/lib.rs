//! Exact verification toolkit for the K-theory and cyclic cohomology of the
//! infinite dihedral group algebra and its Z⋊Z crossed-product relative.
//!
//! The crate computes, in Gaussian-rational arithmetic on finite lattice
//! windows, the pairings between Fredholm modules and K-theory classes, the
//! cyclic cochain calculus with its two constructive coboundary solvers, and
//! the floating-point deformation argument on the plane lattice. Integer
//! outputs are only ever produced by exact arithmetic; doubles appear solely
//! in the homotopy module, where the entries are irrational phases.

pub mod cyclic;
pub mod error;
pub mod fredholm;
pub mod group;
pub mod homotopy;
pub mod operator;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use group::{DihedralElement, GElement};
pub use ring::{GroupElem, GroupTag, RingElement};
pub use scalar::Scalar;
