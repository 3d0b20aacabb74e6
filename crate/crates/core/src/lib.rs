//! Denominators of normalized R-matrices for quantum loop algebras of type
//! ADE, computed from the inverse quantum Cartan matrix, together with the
//! Auslander-Reiten combinatorics and explicit quiver representations used
//! to cross-check them.

pub mod ar_quiver;
pub mod denominators;
pub mod error;
pub mod linalg;
pub mod quantum_cartan;
pub mod rep_oracle;
pub mod root_system;
pub mod schur_weyl;
pub mod selfcheck;

pub use error::{Error, Result};
