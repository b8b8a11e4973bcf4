use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::{MaximallyEntangledState, ProtocolOutcome};
use crate::commsim::Ledger;
use crate::copies::WeightSectorState;
use crate::qstate::AmplitudeMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Concentration {
    pub outcome: ProtocolOutcome,
    /// Hamming weight Alice measured.
    pub weight: u64,
    pub state: MaximallyEntangledState,
}

/// Collective concentration of `n` copies.
///
/// Alice measures the Hamming weight of her `n` qubits. Outcome `k` leaves the
/// pair in a uniform superposition of the `C(n, k)` strings of that weight,
/// a maximally entangled state of rank `C(n, k)`. Bob learns `k` from his own
/// identical measurement, so the ledger is untouched.
pub fn concentrate<R: Rng + ?Sized>(
    ws: &WeightSectorState,
    rng: &mut R,
    ledger: &mut Ledger,
) -> Result<Concentration> {
    let before = ledger.len();
    let weight = sample_weight(ws, rng.random::<f64>());
    let state = MaximallyEntangledState::from_sector(ws.n(), weight)?;

    debug_assert_eq!(ledger.len(), before, "concentration never communicates");
    Ok(Concentration {
        outcome: ProtocolOutcome {
            fidelity: 1.0,
            ebits_in: ws.n() as f64 * ws.single_copy_entropy(),
            ebits_out: state.ebits(),
            events: before..before,
        },
        weight,
        state,
    })
}

/// Invert the sector CDF at `u ∈ [0, 1)`.
fn sample_weight(ws: &WeightSectorState, u: f64) -> u64 {
    let probs = ws.sector_probs();
    let mut cumulative = 0.0;
    for (k, &p) in probs.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return k as u64;
        }
    }
    // rounding left the CDF short of one: take the last populated sector
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0) as u64
}

/// Largest `n` for which the full post-measurement state is materialized.
const MAX_DENSE_COPIES: u64 = 8;

/// Post-measurement state for weight `k`, written out on all `2^n ⊗ 2^n`
/// basis states. Rows index Alice's string, columns Bob's.
pub fn post_measurement_state(ws: &WeightSectorState, k: u64) -> Result<AmplitudeMatrix> {
    let n = ws.n();
    if n > MAX_DENSE_COPIES {
        return Err(Error::param(
            "n",
            format!("dense reconstruction supports n <= {MAX_DENSE_COPIES}, got {n}"),
        ));
    }
    if k > n {
        return Err(Error::param("k", format!("weight {k} exceeds n = {n}")));
    }
    let dim = 1usize << n;
    let amp = ws.log2_string_prob(k)?.exp2().sqrt();
    let entries = DMatrix::from_fn(dim, dim, |x, y| {
        if x == y && x.count_ones() as u64 == k {
            Complex64::new(amp, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    AmplitudeMatrix::normalized(entries)
}
