use rand::Rng;

use super::ProtocolOutcome;
use crate::commsim::{ChannelEvent, Direction, Ledger};
use crate::qstate::{fidelity, Gate, QubitState, Register};
use crate::Result;

const INPUT: usize = 0;
const ALICE: usize = 1;
const BOB: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Teleportation {
    pub outcome: ProtocolOutcome,
    /// Bob's qubit after his corrections.
    pub received: QubitState,
    /// Alice's Bell-measurement bits `(input qubit, her half of the pair)`.
    pub branch: (u8, u8),
}

/// Teleport `input` from Alice to Bob over a freshly prepared Bell pair.
///
/// Three-qubit circuit: qubit 0 holds the input, qubits 1 and 2 the pair.
/// Alice measures in the Bell basis and sends both bits in one round; Bob
/// applies `X^{m1} Z^{m0}`.
pub fn teleport<R: Rng + ?Sized>(
    input: &QubitState,
    rng: &mut R,
    ledger: &mut Ledger,
) -> Result<Teleportation> {
    let mut reg = Register::product(&[*input, QubitState::zero(), QubitState::zero()])?;
    reg.apply(&Gate::h(), &[ALICE])?;
    reg.apply(&Gate::cnot(), &[ALICE, BOB])?;

    reg.apply(&Gate::cnot(), &[INPUT, ALICE])?;
    reg.apply(&Gate::h(), &[INPUT])?;
    let m0 = reg.measure(INPUT, rng)?.outcome;
    let m1 = reg.measure(ALICE, rng)?.outcome;

    let start = ledger.len();
    ledger.record(ChannelEvent::classical(
        Direction::AliceToBob,
        2,
        ledger.next_round(),
    ))?;

    if m1 == 1 {
        reg.apply(&Gate::x(), &[BOB])?;
    }
    if m0 == 1 {
        reg.apply(&Gate::z(), &[BOB])?;
    }

    let base = (usize::from(m0) << 2) | (usize::from(m1) << 1);
    let amps = reg.amplitudes();
    let received = QubitState::new(amps[base], amps[base | 1])?;
    let fid = fidelity(&input.amplitudes(), &received.amplitudes())?;

    Ok(Teleportation {
        outcome: ProtocolOutcome {
            fidelity: fid,
            ebits_in: 1.0,
            ebits_out: 0.0,
            events: start..ledger.len(),
        },
        received,
        branch: (m0, m1),
    })
}
