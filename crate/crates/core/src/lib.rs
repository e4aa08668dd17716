//! Stabilizer quantum error correction at desk scale.
//!
//! The crate covers the Pauli group in binary symplectic form, stabilizer
//! codes and their syndromes, lookup-table decoding, the CSS and GF(4)
//! constructions, counting bounds, and a dense state-vector engine that
//! checks every code-level statement by brute force.

pub mod bits;
pub mod bounds;
pub mod cli;
pub mod css;
pub mod decoder;
pub mod gf4;
pub mod matrix;
pub mod noise;
pub mod pauli;
pub mod rng;
pub mod stabilizer;
pub mod statevector;

pub use pauli::{Letter, PauliEnumerator, PauliError, PauliOperator};
pub use stabilizer::{builtin, Builtin, CodeParams, Distance, Membership, StabilizerError, StabilizerGroup};
pub use statevector::{StateError, StateVector};
