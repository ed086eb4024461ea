//! Exact LP feasibility and the two cutting-plane relaxations.

pub mod cutting_plane;
pub mod separation;
pub mod simplex;

pub use cutting_plane::{solve_cutting_plane, solve_lpka, solve_lpu, CuttingPlaneOutcome, SeparationOracle};
pub use separation::{separate_lpka, separate_lpu, Separation, Violation};
pub use simplex::{simplex_feasible, LinearProgram, LpOutcome, Relation, Row, RowKind};
