//! The two conservative algorithms and their per-scenario reassignments.

pub mod general;
pub mod zero_l;

pub use general::{algorithm2, build_backup_loop, conservative_reassign_flow, BackupLoop, FlowReassignment, GeneralConservativeSolution};
pub use zero_l::{algorithm1, reassign_0l, ZeroLSolution};
