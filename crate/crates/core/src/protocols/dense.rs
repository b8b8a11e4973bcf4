use super::ProtocolOutcome;
use crate::commsim::{ChannelEvent, Direction, Ledger};
use crate::qstate::{Gate, Register};
use crate::{seeded_rng, Result};

const ALICE: usize = 0;
const BOB: usize = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseCoding {
    pub outcome: ProtocolOutcome,
    pub decoded: [bool; 2],
}

/// Send two classical bits by transmitting Alice's half of a shared Bell pair.
///
/// Alice encodes `00 → I`, `01 → X`, `10 → Z`, `11 → ZX`; Bob undoes the Bell
/// preparation and reads both qubits. The ledger records one qubit sent and
/// no classical bits.
pub fn superdense_send(message: [bool; 2], ledger: &mut Ledger) -> Result<DenseCoding> {
    let mut reg = Register::zero(2)?;
    reg.apply(&Gate::h(), &[ALICE])?;
    reg.apply(&Gate::cnot(), &[ALICE, BOB])?;

    if message[1] {
        reg.apply(&Gate::x(), &[ALICE])?;
    }
    if message[0] {
        reg.apply(&Gate::z(), &[ALICE])?;
    }

    let start = ledger.len();
    ledger.record(ChannelEvent::qubits(
        Direction::AliceToBob,
        1,
        ledger.next_round(),
    ))?;

    reg.apply(&Gate::cnot(), &[ALICE, BOB])?;
    reg.apply(&Gate::h(), &[ALICE])?;
    // both outcomes are certain; the generator never decides anything
    let mut rng = seeded_rng(0);
    let high = reg.measure(ALICE, &mut rng)?;
    let low = reg.measure(BOB, &mut rng)?;
    let fidelity = high.probability * low.probability;

    Ok(DenseCoding {
        outcome: ProtocolOutcome {
            fidelity,
            ebits_in: 1.0,
            ebits_out: 0.0,
            events: start..ledger.len(),
        },
        decoded: [high.outcome == 1, low.outcome == 1],
    })
}
