//! Seeded random streams, estimate aggregation and experiment reports.
//!
//! Every stochastic quantity in the crate is an average of independent
//! samples; sample `i` of an estimator always draws from the stream
//! `(seed, stream_id(tag, i))`, so results depend only on the seed and never
//! on how samples are scheduled across threads.

mod estimate;
mod report;
mod rng;

pub use estimate::{aggregate, sample_moments, sample_values, Accumulator, MCEstimate, CHUNK, Z95};
pub use report::ExperimentReport;
pub use rng::{stream_id, RngStream};
