//! Cutting-plane driver: solve the current rows, ask the separation oracle
//! for a violated row, repeat.

use crate::clustering::{Clustering, DirectedGraph};
use crate::error::{contract, Error, Result};
use crate::graph::ThresholdGraph;
use crate::lp::separation::{
    lpka_row, lpka_static_rows, lpu_row, lpu_static_rows, separate_lpka, separate_lpu, Separation,
};
use crate::lp::simplex::{simplex_feasible, LinearProgram, LpOutcome, Row};
use crate::numeric::Rational;

/// Default cap on the number of generated rows per solve.
pub const DEFAULT_MAX_CUTS: usize = 5_000;

pub trait SeparationOracle {
    /// A row violated by `y`, or `None` when `y` satisfies the whole family.
    fn separate(&self, y: &[Rational]) -> Result<Option<Row>>;
}

#[derive(Clone, Debug, PartialEq)]
pub enum CuttingPlaneOutcome {
    Feasible { y: Vec<Rational>, cuts: usize },
    /// The relaxation is empty at this threshold.
    InfeasibleAtTau,
}

pub fn solve_cutting_plane(
    mut lp: LinearProgram,
    oracle: &dyn SeparationOracle,
    max_cuts: usize,
) -> Result<CuttingPlaneOutcome> {
    let mut cuts = 0;
    loop {
        let y = match simplex_feasible(&lp) {
            LpOutcome::Infeasible => return Ok(CuttingPlaneOutcome::InfeasibleAtTau),
            LpOutcome::Feasible(y) => y,
        };
        match oracle.separate(&y)? {
            None => {
                if !lp.satisfied_by(&y) {
                    return Err(contract("simplex returned a point violating its own rows"));
                }
                return Ok(CuttingPlaneOutcome::Feasible { y, cuts });
            }
            Some(row) => {
                if row.satisfied_by(&y) {
                    return Err(contract("separation returned a row the point satisfies"));
                }
                cuts += 1;
                if cuts > max_cuts {
                    return Err(contract(format!("no convergence after {max_cuts} cuts")));
                }
                lp.push(row);
            }
        }
    }
}

/// Separation for the backup-pinned program over `G'`.
pub struct LpkaOracle<'a> {
    pub gprime: &'a DirectedGraph,
    pub clustering: &'a Clustering,
    pub capacities: &'a [u64],
    pub alpha: usize,
}

impl SeparationOracle for LpkaOracle<'_> {
    fn separate(&self, y: &[Rational]) -> Result<Option<Row>> {
        Ok(match separate_lpka(y, self.gprime, self.clustering, self.capacities, self.alpha)? {
            Separation::Ok => None,
            Separation::Violated(v) => Some(lpka_row(self.gprime, self.capacities, &v)),
        })
    }
}

/// Separation for the `{0, L}` program.
pub struct LpuOracle<'a> {
    pub graph: &'a ThresholdGraph,
    pub capacities: &'a [u64],
    pub alpha: usize,
}

impl SeparationOracle for LpuOracle<'_> {
    fn separate(&self, y: &[Rational]) -> Result<Option<Row>> {
        Ok(match separate_lpu(y, self.graph, self.capacities, self.alpha)? {
            Separation::Ok => None,
            Separation::Violated(v) => Some(lpu_row(self.graph, self.capacities, self.alpha, &v.set)?),
        })
    }
}

/// Solves the backup-pinned program. Refuses `alpha > alpha_bound`, since
/// the scenario enumeration grows as `|B|^alpha`.
pub fn solve_lpka(
    graph: &ThresholdGraph,
    clustering: &Clustering,
    gprime: &DirectedGraph,
    capacities: &[u64],
    k: usize,
    alpha: usize,
    alpha_bound: usize,
) -> Result<CuttingPlaneOutcome> {
    if alpha > alpha_bound {
        return Err(Error::AlphaBound { alpha, bound: alpha_bound });
    }
    let lp = lpka_static_rows(graph, clustering, k);
    let oracle = LpkaOracle { gprime, clustering, capacities, alpha };
    solve_cutting_plane(lp, &oracle, DEFAULT_MAX_CUTS)
}

/// Solves the `{0, L}` program; `alpha` is unrestricted.
pub fn solve_lpu(graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<CuttingPlaneOutcome> {
    let lp = lpu_static_rows(graph, capacities, k)?;
    let oracle = LpuOracle { graph, capacities, alpha };
    solve_cutting_plane(lp, &oracle, DEFAULT_MAX_CUTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::{build_gprime, monarch_clustering};
    use crate::lp::separation::{lpka_minimum, lpu_minimum};
    use num_traits::{One, Zero};

    fn lpka_on(g: &ThresholdGraph, caps: &[u64], k: usize, alpha: usize) -> CuttingPlaneOutcome {
        let c = monarch_clustering(g).unwrap().select_backups(caps, alpha).unwrap();
        let gp = build_gprime(g, &c);
        solve_lpka(g, &c, &gp, caps, k, alpha, 3).unwrap()
    }

    #[test]
    fn more_centers_than_vertices_is_infeasible() {
        let g = ThresholdGraph::path(2);
        assert_eq!(lpka_on(&g, &[5, 5], 3, 0), CuttingPlaneOutcome::InfeasibleAtTau);
        assert_eq!(solve_lpu(&g, &[5, 5], 3, 0).unwrap(), CuttingPlaneOutcome::InfeasibleAtTau);
    }

    #[test]
    fn six_cycle_two_centers_one_failure_is_infeasible() {
        // Midpoints 0 and 3 each need one backup plus one more unit in
        // their disjoint closed neighbourhoods: four centers, not two.
        let g = ThresholdGraph::cycle(6);
        assert_eq!(lpka_on(&g, &[6; 6], 2, 1), CuttingPlaneOutcome::InfeasibleAtTau);
    }

    #[test]
    fn six_cycle_four_centers_one_failure_is_feasible() {
        let g = ThresholdGraph::cycle(6);
        let caps = [6; 6];
        let c = monarch_clustering(&g).unwrap().select_backups(&caps, 1).unwrap();
        let gp = build_gprime(&g, &c);
        match solve_lpka(&g, &c, &gp, &caps, 4, 1, 3).unwrap() {
            CuttingPlaneOutcome::Feasible { y, .. } => {
                let total: Rational = y.iter().sum();
                assert_eq!(total, crate::numeric::int(4));
                for &b in &c.all_backups {
                    assert!(y[b].is_one());
                }
                assert!(lpka_minimum(&y, &gp, &c, &caps, 1).unwrap().value >= Rational::zero());
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn lpu_feasible_point_passes_full_separation() {
        let g = ThresholdGraph::path(5);
        let caps = [3, 0, 3, 0, 3];
        match solve_lpu(&g, &caps, 3, 0).unwrap() {
            CuttingPlaneOutcome::Feasible { y, .. } => {
                assert!(lpu_minimum(&y, &g, &caps, 0).unwrap().value >= Rational::zero());
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn alpha_bound_is_enforced() {
        let g = ThresholdGraph::cycle(6);
        let c = monarch_clustering(&g).unwrap().select_backups(&[6; 6], 0).unwrap();
        let gp = build_gprime(&g, &c);
        assert!(matches!(
            solve_lpka(&g, &c, &gp, &[6; 6], 5, 4, 3),
            Err(Error::AlphaBound { alpha: 4, bound: 3 })
        ));
    }
}
