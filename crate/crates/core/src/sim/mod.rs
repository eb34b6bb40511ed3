//! Repair strategies, adversarial and random erasure sweeps, bandwidth tables.

mod strategy;
mod sweep;

pub use strategy::{repairer, Repairer, StrategyKind, StrategyParams};
pub use sweep::{
    adversarial_sweep, bandwidth_account, failing_patterns, random_sweep, sample_codeword, sampled_pattern, BandwidthRow, BandwidthTable, Episode,
    SweepReport, DEFAULT_CODEWORD_SEED,
};
