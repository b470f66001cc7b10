//! Computational toolkit for right ideals and right congruences of
//! semigroups.
//!
//! The crate builds finite and symbolic semigroup backends, closes pair sets
//! into right congruences, searches and verifies step-by-step certificates
//! for congruence membership, and materializes the generating sets promised
//! by a family of closure results (regular elements, homomorphic images,
//! retracts, small extensions, ideal complements, adjoined zeros, direct
//! products and free products). A gallery of parametrized fixtures packages
//! the counterexample families with machine-checkable claims.

pub mod backends;
pub mod classify;
pub mod congruence;
pub mod constructions;
pub mod element;
pub mod error;
pub mod ideals;
pub mod semigroup;
pub mod witnesses;
pub mod xseq;

pub use element::{Block, Element};
pub use error::{Error, Result};
pub use semigroup::{Order, Semigroup, SemigroupHandle, Verdict};
