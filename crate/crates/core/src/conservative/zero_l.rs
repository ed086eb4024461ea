//! Conservative `{0, L}` solver: backups next to a maximal 7-independent
//! set of anchors, the remaining budget handed to a plain `{0, L}` solver,
//! and failed clients rerouted through their nearest anchor.

use crate::bottleneck::{solve_components, Outcome, UnweightedSolver};
use crate::clustering::maximal_7_independent;
use crate::error::{contract, Result};
use crate::graph::{zero_l_level, HopDistances, ThresholdGraph};

/// Hop radius within which rerouted clients land.
pub const REASSIGN_RADIUS: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroLSolution {
    /// The maximal 7-independent set `A`.
    pub anchors: Vec<usize>,
    /// `B(a)` for each anchor, `alpha` lowest-index `L`-vertices of `N(a)`.
    pub anchor_backups: Vec<Vec<usize>>,
    /// `B`, sorted.
    pub backups: Vec<usize>,
    /// `S` together with `B`, sorted.
    pub centers: Vec<usize>,
    pub phi0: Vec<usize>,
}

/// Runs the conservative `{0, L}` algorithm on a connected graph, with `alg`
/// solving the residual instance without failures.
pub fn algorithm1(
    graph: &ThresholdGraph,
    capacities: &[u64],
    k: usize,
    alpha: usize,
    alg: &dyn UnweightedSolver,
) -> Result<Outcome<ZeroLSolution>> {
    zero_l_level(capacities)?;
    let anchors = maximal_7_independent(graph);
    let mut anchor_backups = Vec::with_capacity(anchors.len());
    for &a in &anchors {
        let picks: Vec<usize> =
            graph.closed_neighbors(a).into_iter().filter(|&v| capacities[v] > 0).take(alpha).collect();
        if picks.len() < alpha {
            return Ok(Outcome::Infeasible(format!(
                "anchor {a} has only {} capacitated vertices within one hop",
                picks.len()
            )));
        }
        anchor_backups.push(picks);
    }
    let mut backups: Vec<usize> = anchor_backups.iter().flatten().copied().collect();
    backups.sort_unstable();
    if backups.len() >= k {
        return Ok(Outcome::Infeasible(format!("{} backups leave no budget out of {k}", backups.len())));
    }
    let mut residual = capacities.to_vec();
    for &b in &backups {
        residual[b] = 0;
    }
    let inner = match solve_components(graph, &residual, k - backups.len(), 0, alg)? {
        Outcome::Solved(sol) => sol,
        Outcome::Infeasible(reason) => return Ok(Outcome::Infeasible(reason)),
    };
    let phi0 = inner.initial_assignment.ok_or_else(|| contract("residual solver returned no assignment"))?;
    let mut centers = inner.centers;
    centers.extend_from_slice(&backups);
    centers.sort_unstable();
    centers.dedup();
    Ok(Outcome::Solved(ZeroLSolution { anchors, anchor_backups, backups, centers, phi0 }))
}

/// Conservative reassignment for failure set `failed`: clients of failed
/// centers move to a non-full backup of their nearest anchor.
pub fn reassign_0l(
    sol: &ZeroLSolution,
    hops: &HopDistances,
    capacities: &[u64],
    failed: &[usize],
) -> Result<Vec<usize>> {
    let mut load = vec![0u64; capacities.len()];
    for &c in &sol.phi0 {
        load[c] += 1;
    }
    let mut phi = sol.phi0.clone();
    for u in 0..phi.len() {
        if !failed.contains(&sol.phi0[u]) {
            continue;
        }
        let (index, _) = sol
            .anchors
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| hops.get(u, a).map(|d| (i, d)))
            .min_by_key(|&(i, d)| (d, i))
            .ok_or_else(|| contract(format!("client {u} reaches no anchor")))?;
        let target = sol.anchor_backups[index]
            .iter()
            .copied()
            .find(|b| !failed.contains(b) && load[*b] < capacities[*b])
            .ok_or_else(|| contract(format!("backups of anchor {} are full", sol.anchors[index])))?;
        if !hops.within(u, target, REASSIGN_RADIUS) {
            return Err(contract(format!("client {u} rerouted beyond {REASSIGN_RADIUS} hops")));
        }
        load[target] += 1;
        phi[u] = target;
    }
    Ok(phi)
}
