//! Bit-pipelined threshold decision making for `N = 2^M`-armed bandits.
//!
//! A single fast, correlated time series is sampled `M` times per decision
//! (time-division multiplexing). Each sample is compared against one node of
//! a binary threshold tree, producing one bit of the machine identity from the
//! most significant bit down. After the selected machine is played, every
//! threshold on the decided path is pulled toward (win) or away from (loss) the
//! decision just made.
//!
//! Modules:
//!
//! - [`signal`]: sample sources (uniform PRNG, coloured noise, AR(2) and
//!   quasiperiodic surrogates, recorded traces), all quantized to `[-127, 128]`.
//! - [`tree`]: the threshold tree, decisions and threshold updates.
//! - [`env`]: Bernoulli slot machines and the reference reward arrangements.
//! - [`harness`]: repeated runs, correct-decision-ratio curves, sweeps and the
//!   scaling fit.
//! - [`analysis`]: autocorrelation, power spectrum and random-walk diffusivity.
//! - [`report`]: CSV/JSON renderings of results and atomic file output.

pub mod analysis;
pub mod env;
pub mod error;
pub mod harness;
pub mod report;
pub mod signal;
pub mod tree;

pub use error::{Error, Result};
