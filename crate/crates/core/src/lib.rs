//! Exact construction, verification and classification of complex symplectic
//! structures on real Lie algebras with rational structure constants.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the companion `csalg` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod almost_abelian;
pub mod cotangent;
pub mod csgeom;
pub mod factor;
pub mod fixtures;
pub mod lattice;
pub mod lie;
pub mod matrix;
mod modp;
pub mod oxidation;
pub mod poly;
pub mod profile;
pub mod rat;
pub mod sturm;
pub mod subspace;

pub use matrix::QMat;
pub use poly::QPoly;
pub use profile::{charpoly, primary_profiles, PrimaryProfile, RootClassification};
pub use rat::{QVec, Rat};
