//! Porous invariants: semi-linear inductive invariants for integer linear
//! dynamical systems and one-dimensional nondeterministic affine loops.
//!
//! - [`intlat`]: integer lattices in Hermite normal form and their cosets.
//! - [`semilinear`]: 1-D linear sets, unions, and integral points of rational cones.
//! - [`affbasis`], [`zinv`]: the strongest Z-linear invariant of a matrix system.
//! - [`ztarget`]: reachability of full-dimensional Z-linear targets.
//! - [`affine1d`]: invariant synthesis for `x ↦ a_i·x + b_i`.
//! - [`cert`]: certificate checking and witness search.

pub mod affbasis;
pub mod affine1d;
pub mod bench;
pub mod cert;
pub mod error;
pub mod generator;
pub mod instance;
pub mod intlat;
pub mod par;
pub mod report;
pub mod semilinear;
pub mod zinv;
pub mod ztarget;

pub use error::{Error, Result};
