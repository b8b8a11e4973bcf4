use super::ProtocolOutcome;
use crate::commsim::{ChannelEvent, Direction, DistanceModel, Ledger};
use crate::copies::{TypicalSubspace, WeightSectorState};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Dilution {
    pub outcome: ProtocolOutcome,
    /// Subspace Alice compressed onto before teleporting.
    pub subspace: TypicalSubspace,
    /// Time spent on this run's communication under the supplied model.
    pub elapsed_seconds: f64,
}

/// Dilute `bell_budget` Bell pairs into the `n` copies described by `target`.
///
/// Alice prepares the copies locally, compresses her half onto the best
/// `2^m`-dimensional string subspace, teleports the `m` compressed qubits and
/// Bob decompresses. Teleportation is exact, so the fidelity is the mass of
/// the subspace. All `2m` classical bits go in a single round.
pub fn dilute(
    target: &WeightSectorState,
    bell_budget: u64,
    ledger: &mut Ledger,
    timing: &DistanceModel,
) -> Result<Dilution> {
    let subspace = target.typical_subspace_pow2(bell_budget)?;

    let start = ledger.len();
    if bell_budget > 0 {
        ledger.record(ChannelEvent::classical(
            Direction::AliceToBob,
            2 * bell_budget,
            ledger.next_round(),
        ))?;
    }
    let events = start..ledger.len();
    let elapsed_seconds = timing.elapsed_time(&ledger.span(events.clone()));

    Ok(Dilution {
        outcome: ProtocolOutcome {
            fidelity: subspace.mass(),
            ebits_in: bell_budget as f64,
            ebits_out: subspace.entropy(),
            events,
        },
        subspace,
        elapsed_seconds,
    })
}
