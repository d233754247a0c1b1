//! Distances, energy barriers and their certificates.

pub mod audit;
pub mod barrier;
pub mod distance;
pub mod dp;
pub mod energy;
pub mod lindist;
pub mod target;
pub mod walk;

pub use audit::{audit_family, AuditReport, InstanceRecord};
pub use barrier::{barrier_exact, barrier_walk_bound, BarrierMethod, BarrierResult, CosetGraph};
pub use distance::{distance_bruteforce, DistanceMethod, DistanceOutcome, DistanceResult};
pub use dp::{distance_dp, distance_exact};
pub use energy::energy_cost;
pub use lindist::{linear_distance, LinearDistance};
pub use target::{Mode, Target};
pub use walk::{walk_bound, Schedule, WalkStep, WalkTrace};
