//! Exact solvers, solution verifiers and the gap-instance generator.

pub mod exact;
pub mod gap;
pub mod verify;

pub use exact::{
    exact_distance1_conservative, exact_distance1_ft, exact_opt_conservative, exact_opt_ft, ExactConservative, ExactFt,
    OracleLimits,
};
pub use gap::{gap_graph, gap_instance};
pub use verify::{
    conservative_first_failure, ft_first_failure, scenarios, verify_conservative, verify_ft, Reach, ScenarioFailure,
    VerificationReport,
};
