use super::ledger::Ledger;
use crate::{Error, Result};

/// Signal speed in optical fibre, m/s.
pub const DEFAULT_SIGNAL_SPEED: f64 = 2.0e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Unbounded,
    BitsPerSecond(f64),
}

/// Separation of the parties and the channel linking them.
///
/// Each message round costs one one-way latency `distance / signal_speed`;
/// each classical bit costs `1 / bandwidth` on top of that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceModel {
    distance: f64,
    signal_speed: f64,
    bandwidth: Bandwidth,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::param(
            name,
            format!("{value} must be finite and positive"),
        ))
    }
}

impl DistanceModel {
    pub fn new(distance: f64, signal_speed: f64, bandwidth: Bandwidth) -> Result<Self> {
        if let Bandwidth::BitsPerSecond(bw) = bandwidth {
            positive("bandwidth", bw)?;
        }
        Ok(DistanceModel {
            distance: positive("distance", distance)?,
            signal_speed: positive("signal_speed", signal_speed)?,
            bandwidth,
        })
    }

    /// Fibre-speed channel with unbounded bandwidth.
    pub fn fiber(distance: f64) -> Result<Self> {
        Self::new(distance, DEFAULT_SIGNAL_SPEED, Bandwidth::Unbounded)
    }

    /// Same channel, different separation.
    pub fn with_distance(&self, distance: f64) -> Result<Self> {
        Self::new(distance, self.signal_speed, self.bandwidth)
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn signal_speed(&self) -> f64 {
        self.signal_speed
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.bandwidth
    }

    /// One-way latency of a single message round.
    pub fn latency(&self) -> f64 {
        self.distance / self.signal_speed
    }

    pub fn elapsed_time(&self, ledger: &Ledger) -> f64 {
        let rounds = ledger.total_rounds() as f64 * self.latency();
        match self.bandwidth {
            Bandwidth::Unbounded => rounds,
            Bandwidth::BitsPerSecond(bw) => rounds + ledger.total_bits() as f64 / bw,
        }
    }
}

/// Seconds spent communicating `ledger` over `model`.
pub fn elapsed_time(ledger: &Ledger, model: &DistanceModel) -> f64 {
    model.elapsed_time(ledger)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceComparison {
    pub d1: f64,
    pub d2: f64,
    pub time_d1: f64,
    pub time_d2: f64,
    /// `time_d2 / time_d1`, or 1 when the ledger has no rounds.
    pub ratio: f64,
    /// True when the ledger involves no communication at all.
    pub distance_independent: bool,
}

/// Replay `ledger` under `model` moved to `d1` and to `d2`.
pub fn compare_distances(
    ledger: &Ledger,
    model: &DistanceModel,
    d1: f64,
    d2: f64,
) -> Result<DistanceComparison> {
    let near = model.with_distance(d1)?;
    let far = model.with_distance(d2)?;
    let time_d1 = near.elapsed_time(ledger);
    let time_d2 = far.elapsed_time(ledger);
    let distance_independent = ledger.total_rounds() == 0;
    let ratio = if distance_independent {
        1.0
    } else {
        time_d2 / time_d1
    };
    Ok(DistanceComparison {
        d1,
        d2,
        time_d1,
        time_d2,
        ratio,
        distance_independent,
    })
}
