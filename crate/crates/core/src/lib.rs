//! Exact computer algebra for generalized Weyl superalgebras
//! `W(l1, ..., l5, Gamma)`: the associative super-product, the Lie superbracket,
//! the explicit 2-cocycles and their lifts, cocycle normalization, and exact
//! linear probes for (non)triviality on finite truncations.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod sample;
pub mod scalar;
pub mod signature;

pub use algebra::{Element, Monomial};
pub use error::{Result, WeylError};
pub use scalar::Scalar;
pub use signature::{gamma_membership, validate_signature, RawSignature, Signature};
