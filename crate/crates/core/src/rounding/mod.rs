//! Transfers of fractional openings and the roundings built from them.

pub mod general;
pub mod transfer;
pub mod tree;
pub mod uniform;

pub use general::{assign_scenario_b, assign_scenario_general, round_general, GeneralRounding, ScenarioAssigner};
pub use transfer::{check_transfer, check_transfer_by_flow, indicator, verify_transfer, TransferProblem, TransferReport};
pub use tree::tree_transfer;
pub use uniform::{assign_scenario_uniform, round_uniform};
