//! Constructive procedures on logical operators and regions: cleaning,
//! strip sweeps, restriction to a region and minimal encoding blocks.

pub mod clean;
pub mod minblock;
pub mod restriction;
pub mod sweep;

pub use clean::{clean, clean_stabilizer, clean_subsystem, CleanResult};
pub use minblock::{minimal_block_search, MinBlockOutcome, MinimalBlock};
pub use restriction::{restriction_audit, RestrictionAudit, RestrictionCase};
pub use sweep::{strip_sweep, SweepResult};
