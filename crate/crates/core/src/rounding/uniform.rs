//! `{0, L}` rounding: an integral distance-5 transfer onto `k` vertices of
//! the stripped graph, and assignments within six hops of it.

use num_traits::One;

use crate::error::{contract, Result};
use crate::flow::{capacitated_assignment, Assignment};
use crate::graph::{zero_l_level, ThresholdGraph};
use crate::numeric::Rational;
use crate::rounding::transfer::{check_transfer_by_flow, indicator, TransferProblem};
use crate::rounding::tree::{by_weight, search_supports};

pub const UNIFORM_ROUNDING_RADIUS: usize = 5;
pub const UNIFORM_SCENARIO_RADIUS: usize = 6;

/// Rounds a feasible point of the `{0, L}` program on the stripped graph to
/// `k` centers, preferring `L`-vertices. Returns the sorted center set.
pub fn round_uniform(y: &[Rational], stripped: &ThresholdGraph, capacities: &[u64], k: usize) -> Result<Vec<usize>> {
    zero_l_level(capacities)?;
    let n = stripped.n();
    if y.len() != n || capacities.len() != n || k > n {
        return Err(contract("opening, capacities and k must match the graph"));
    }
    let total: Rational = y.iter().sum();
    if total != Rational::from_integer(k.into()) {
        return Err(contract("opening does not sum to k"));
    }
    let all: Vec<usize> = (0..n).collect();
    let none = vec![false; n];
    let accept = |support: &[usize]| -> Result<bool> {
        let y_new = indicator(n, support);
        let problem = TransferProblem {
            y,
            y_new: &y_new,
            host: stripped,
            domain: &all,
            radius: UNIFORM_ROUNDING_RADIUS,
            protected: &none,
            capacities,
        };
        Ok(check_transfer_by_flow(&problem)?.holds())
    };
    let open: Vec<usize> = (0..n).filter(|&v| y[v].is_one() && capacities[v] > 0).collect();
    for fixed in [open, Vec::new()] {
        if fixed.len() > k {
            continue;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
        by_weight(&mut candidates, y, capacities);
        if let Some(support) = search_supports(&fixed, &candidates, k - fixed.len(), accept)? {
            return Ok(support);
        }
    }
    Err(contract("no integral distance-5 transfer found"))
}

/// Assigns every vertex to a center of `centers \ failed` within six hops of
/// the stripped graph, at most `L` clients per center.
pub fn assign_scenario_uniform(
    centers: &[usize],
    failed: &[usize],
    stripped: &ThresholdGraph,
    capacities: &[u64],
) -> Result<Vec<usize>> {
    let alive: Vec<usize> = centers.iter().copied().filter(|c| !failed.contains(c)).collect();
    let allowed: Vec<Vec<usize>> = (0..stripped.n())
        .map(|u| {
            let near = stripped.bfs([u], Some(UNIFORM_SCENARIO_RADIUS));
            alive.iter().copied().filter(|&c| near[c].is_some()).collect()
        })
        .collect();
    match capacitated_assignment(&allowed, capacities) {
        Assignment::Assigned(map) => Ok(map),
        Assignment::HallViolation(set) => {
            Err(contract(format!("no assignment for scenario {failed:?}: clients {set:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn integral_opening_is_its_own_rounding() {
        let g = ThresholdGraph::path(5);
        let caps = [3, 0, 3, 0, 3];
        let y = indicator(5, &[0, 4]);
        assert_eq!(round_uniform(&y, &g, &caps, 2).unwrap(), vec![0, 4]);
    }

    #[test]
    fn half_openings_round_onto_l_vertices() {
        let g = ThresholdGraph::path(4);
        let caps = [2, 2, 0, 2];
        let y = vec![rat(1, 2), rat(1, 2), int(0), int(1)];
        let r = round_uniform(&y, &g, &caps, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|&v| caps[v] > 0));
        let phi = assign_scenario_uniform(&r, &[], &g, &caps).unwrap();
        assert_eq!(phi.len(), 4);
    }

    #[test]
    fn assignment_reports_hall_violations() {
        let g = ThresholdGraph::path(3);
        assert!(assign_scenario_uniform(&[0], &[], &g, &[1, 0, 0]).is_err());
        assert!(assign_scenario_uniform(&[0], &[], &g, &[3, 0, 0]).is_ok());
    }
}
