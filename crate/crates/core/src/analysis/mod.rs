//! Information-theoretic rates, Monte Carlo failure rates and threshold
//! estimation.

mod info;
mod sim;
mod stats;
mod threshold;

pub use info::{binary_entropy, channel_capacities, hashing_bound, standard_css_rate, Capacities};
pub use sim::{
    point_seed, read_points_csv, run_trial, run_trials, simulate, trial_rng, write_points_csv,
    CurvePoint, Sector, SimulationConfig, TrialCounts,
};
pub use stats::{wilson_interval, Z95};
pub use threshold::{crossing, estimate_threshold, group_curves, Curve, CurveKey, ThresholdEstimate};
