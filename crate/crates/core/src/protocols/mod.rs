//! Entanglement protocols. Every protocol appends what it communicates to a
//! caller-owned [`Ledger`](crate::commsim::Ledger).

mod concentrate;
mod cycle;
mod dense;
mod dilute;
mod teleport;

pub use concentrate::{concentrate, post_measurement_state, Concentration};
pub use cycle::{reversibility_cycle, CycleReport};
pub use dense::{superdense_send, DenseCoding};
pub use dilute::{dilute, Dilution};
pub use teleport::{teleport, Teleportation};

use std::ops::Range;

use crate::copies::{binomial_u128, log_binomial};
use crate::{Error, Result};

/// Summary shared by every protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolOutcome {
    pub fidelity: f64,
    /// Entanglement consumed, ebits.
    pub ebits_in: f64,
    /// Entanglement produced, ebits.
    pub ebits_out: f64,
    /// Indices of the ledger events this run appended.
    pub events: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rank {
    Exact(u128),
    Log2(f64),
}

/// `D^{-1/2} Σ_{i<D} |i⟩|i⟩`, carrying `log₂ D` ebits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximallyEntangledState {
    rank: Rank,
}

impl MaximallyEntangledState {
    pub fn from_rank(rank: u128) -> Result<Self> {
        if rank == 0 {
            return Err(Error::param("rank", "must be at least 1"));
        }
        Ok(MaximallyEntangledState {
            rank: Rank::Exact(rank),
        })
    }

    /// The state left by finding Hamming weight `k` among `n` copies, of rank
    /// `C(n, k)`.
    pub fn from_sector(n: u64, k: u64) -> Result<Self> {
        let rank = match binomial_u128(n, k) {
            Some(0) => return Err(Error::param("k", format!("weight {k} exceeds n = {n}"))),
            Some(r) => Rank::Exact(r),
            None => Rank::Log2(log_binomial(n, k)?),
        };
        Ok(MaximallyEntangledState { rank })
    }

    /// Schmidt rank, when it fits in a `u128`.
    pub fn rank(&self) -> Option<u128> {
        match self.rank {
            Rank::Exact(r) => Some(r),
            Rank::Log2(_) => None,
        }
    }

    pub fn ebits(&self) -> f64 {
        match self.rank {
            Rank::Exact(r) if r.is_power_of_two() => r.trailing_zeros() as f64,
            Rank::Exact(r) => (r as f64).log2(),
            Rank::Log2(l) => l,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellExtraction {
    pub whole_pairs: u64,
    /// Leftover `log₂ D - whole_pairs`, in `[0, 1)`.
    pub residual_ebits: f64,
}

/// Split a rank-`D` maximally entangled state into `⌊log₂ D⌋` Bell pairs.
///
/// A uniform Schmidt spectrum of rank `D` converts deterministically by LOCC
/// to any uniform spectrum of rank `2^m ≤ D`. The fractional remainder
/// `log₂ D - m` is reported alongside.
pub fn extract_bell_pairs(state: &MaximallyEntangledState) -> BellExtraction {
    let whole_pairs = match state.rank {
        Rank::Exact(r) => (127 - r.leading_zeros()) as u64,
        // guard against log-gamma landing a hair below an integer
        Rank::Log2(l) => (l + 1e-12).floor() as u64,
    };
    BellExtraction {
        whole_pairs,
        residual_ebits: (state.ebits() - whole_pairs as f64).max(0.0),
    }
}
