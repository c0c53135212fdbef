//! Exact verification machinery for 3-nodal septic scrolls in P^5.
//!
//! The crate rebuilds the smooth septic scroll S(3,4) in P^8, projects it
//! from a plane spanned by three secant points, and checks the resulting
//! scroll, its cubic fourfolds, its curve of rulings in G(1,5) and the
//! integral lattices attached to them. All arithmetic is exact: prime
//! fields for screening and enumeration, rationals where a rank has to be
//! promoted to characteristic zero.
//!
//! Modules:
//! - [`exact`]: scalars, matrices, polynomials
//! - [`scroll`]: the scroll, its secant variety, the projection and node certificates
//! - [`cubics`]: linear systems of cubics through the projected scroll
//! - [`lattice`]: Beauville-Bogomolov classes, the rank-5 Gram lattice, Diophantine certificates
//! - [`grass`]: Pluecker coordinates, ruling curves, Grassmannian slices and the reverse construction

pub mod cubics;
mod error;
pub mod exact;
pub mod grass;
pub mod lattice;
pub mod scroll;

pub use error::{ExactError, GeomError, LatticeError};
