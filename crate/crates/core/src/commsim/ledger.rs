use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AliceToBob,
    BobToAlice,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AliceToBob => "A->B",
            Direction::BobToAlice => "B->A",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A->B" => Ok(Direction::AliceToBob),
            "B->A" => Ok(Direction::BobToAlice),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

/// One message between the parties: classical bits, transmitted qubits, or
/// both, sent in message round `round`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelEvent {
    pub direction: Direction,
    pub classical_bits: u64,
    pub qubit_count: u64,
    pub round: u64,
}

impl ChannelEvent {
    pub fn classical(direction: Direction, classical_bits: u64, round: u64) -> Self {
        ChannelEvent {
            direction,
            classical_bits,
            qubit_count: 0,
            round,
        }
    }

    pub fn qubits(direction: Direction, qubit_count: u64, round: u64) -> Self {
        ChannelEvent {
            direction,
            classical_bits: 0,
            qubit_count,
            round,
        }
    }
}

/// Header line written before transcript records.
pub const TRANSCRIPT_HEADER: &str = "# round direction classical_bits qubit_count";

impl fmt::Display for ChannelEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.round, self.direction, self.classical_bits, self.qubit_count
        )
    }
}

impl FromStr for ChannelEvent {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, Self::Err> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [round, direction, bits, qubits] = fields[..] else {
            return Err(format!("expected 4 fields, found {}", fields.len()));
        };
        let int = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|e| format!("bad {what} `{s}`: {e}"))
        };
        Ok(ChannelEvent {
            round: int(round, "round")?,
            direction: direction.parse()?,
            classical_bits: int(bits, "classical_bits")?,
            qubit_count: int(qubits, "qubit_count")?,
        })
    }
}

/// Append-only record of everything the parties exchanged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ledger {
    events: Vec<ChannelEvent>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append `event`. Rounds may repeat but never go backwards.
    pub fn record(&mut self, event: ChannelEvent) -> Result<()> {
        if event.classical_bits == 0 && event.qubit_count == 0 {
            return Err(Error::EmptyEvent);
        }
        if let Some(last) = self.events.last() {
            if event.round < last.round {
                return Err(Error::RoundOrder {
                    last: last.round,
                    got: event.round,
                });
            }
        }
        self.events.push(event);
        Ok(())
    }

    /// Index for a message that starts a new round.
    pub fn next_round(&self) -> u64 {
        self.events.last().map_or(0, |e| e.round + 1)
    }

    pub fn events(&self) -> &[ChannelEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn total_bits(&self) -> u64 {
        self.events.iter().map(|e| e.classical_bits).sum()
    }

    pub fn total_qubits(&self) -> u64 {
        self.events.iter().map(|e| e.qubit_count).sum()
    }

    /// Number of distinct message rounds.
    pub fn total_rounds(&self) -> u64 {
        let mut rounds = 0;
        let mut last = None;
        for e in &self.events {
            if last != Some(e.round) {
                rounds += 1;
                last = Some(e.round);
            }
        }
        rounds
    }

    /// The events in `range` as a ledger of their own.
    pub fn span(&self, range: Range<usize>) -> Ledger {
        Ledger {
            events: self.events[range].to_vec(),
        }
    }

    /// Line-oriented transcript, one event per line after a header comment.
    pub fn to_transcript(&self) -> String {
        let mut out = String::from(TRANSCRIPT_HEADER);
        out.push('\n');
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse [`to_transcript`](Self::to_transcript) output. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_transcript(text: &str) -> Result<Ledger> {
        let mut ledger = Ledger::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let event = line.parse().map_err(|reason| Error::Parse {
                line: idx + 1,
                reason,
            })?;
            ledger.record(event)?;
        }
        Ok(ledger)
    }
}
