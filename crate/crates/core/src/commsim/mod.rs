//! Classical communication accounting and its latency under a distance model.

mod distance;
mod ledger;

pub use distance::{
    compare_distances, elapsed_time, Bandwidth, DistanceComparison, DistanceModel,
    DEFAULT_SIGNAL_SPEED,
};
pub use ledger::{ChannelEvent, Direction, Ledger, TRANSCRIPT_HEADER};
