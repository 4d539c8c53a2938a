//! Probe library behind the `symprod` command line tool: reproducible
//! experiment reports over the symmetric-product numerics.

pub mod config;
pub mod error;
pub mod probes;
pub mod report;

pub use config::{LipschitzConfig, LipschitzRandom, SmoothnessConfig, SweepConfig, SweepSuite};
pub use error::{CliError, Result};
pub use probes::{
    default_w_grid, lipschitz_cone_batch, lipschitz_cone_probe, smoothness_loss_probe,
    sweep_report,
};
pub use report::{fit_line, num, FittedQuantity, LineFit, ProbeReport, Verdict};
