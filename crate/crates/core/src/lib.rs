//! Simulation of bipartite pure-state entanglement manipulation.
//!
//! The crate is organised bottom-up:
//!
//! - [`qstate`]: exact linear algebra on small states (Schmidt decomposition,
//!   reduced density matrices, entropies, a dense qubit register).
//! - [`copies`]: `n` identical copies of a two-qubit Schmidt state grouped by
//!   Hamming weight, which keeps concentration and dilution tractable for `n`
//!   in the thousands.
//! - [`protocols`]: teleportation, superdense coding, concentration, dilution
//!   and the concentration/dilution cycle.
//! - [`commsim`]: the classical communication ledger and a distance/latency
//!   model for replaying it.

pub mod commsim;
pub mod copies;
mod error;
pub mod protocols;
pub mod qstate;

pub use error::{Error, Result};

use rand::SeedableRng;

/// Generator used everywhere a protocol needs randomness.
///
/// Identical seeds give identical protocol transcripts.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// Build the deterministic generator for `seed`.
pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}
