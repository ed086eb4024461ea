//! Conservative solver for arbitrary capacities: grow a backup set until no
//! small vertex set out-weighs the backups around it, solve the residual
//! instance, and reroute failed clients along a max flow through backups.

use itertools::Itertools;

use crate::bottleneck::{solve_components, Outcome, UnweightedSolver};
use crate::error::{contract, Result};
use crate::flow::{decompose_paths, max_flow, Capacity, FlowNetwork};
use crate::graph::{HopDistances, ThresholdGraph};

/// Hop radius defining which backups neighbour a vertex set.
pub const BACKUP_RADIUS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackupLoop {
    /// `B`, sorted.
    pub backups: Vec<usize>,
    /// Capacities after capping at `|V|`.
    pub capacities: Vec<u64>,
    /// `L(B)` after each iteration.
    pub history: Vec<u64>,
}

/// Repeatedly picks the `U` with `|U| <= alpha` maximising
/// `L(U) - L(B ∩ N^6(U))` (lowest lexicographic on ties) while that value is
/// positive, and replaces `B ∩ N^6(U)` by `U`.
pub fn build_backup_loop(graph: &ThresholdGraph, capacities: &[u64], alpha: usize) -> Result<BackupLoop> {
    let n = graph.n();
    let caps: Vec<u64> = capacities.iter().map(|&c| c.min(n as u64)).collect();
    let near: Vec<Vec<bool>> = (0..n)
        .map(|v| graph.bfs([v], Some(BACKUP_RADIUS)).into_iter().map(|d| d.is_some()).collect())
        .collect();
    let sets: Vec<Vec<usize>> = {
        let mut all: Vec<Vec<usize>> = (1..=alpha.min(n)).flat_map(|size| (0..n).combinations(size)).collect();
        all.sort();
        all
    };
    let mut in_b = vec![false; n];
    let mut total = 0u64;
    let mut history = Vec::new();
    loop {
        let mut best: Option<(u64, &Vec<usize>)> = None;
        for set in &sets {
            let gain: u64 = set.iter().map(|&u| caps[u]).sum();
            let covered: u64 = (0..n).filter(|&b| in_b[b] && set.iter().any(|&u| near[u][b])).map(|b| caps[b]).sum();
            if gain > covered && best.is_none_or(|(d, _)| gain - covered > d) {
                best = Some((gain - covered, set));
            }
        }
        let Some((_, set)) = best else {
            break;
        };
        for b in 0..n {
            if set.iter().any(|&u| near[u][b]) {
                in_b[b] = false;
            }
        }
        for &u in set {
            in_b[u] = true;
        }
        let next: u64 = (0..n).filter(|&b| in_b[b]).map(|b| caps[b]).sum();
        if next <= total || next > (n * n) as u64 {
            return Err(contract("backup weight did not increase within bounds"));
        }
        total = next;
        history.push(total);
    }
    Ok(BackupLoop { backups: (0..n).filter(|&b| in_b[b]).collect(), capacities: caps, history })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralConservativeSolution {
    pub backups: Vec<usize>,
    /// Capacities after capping at `|V|`.
    pub capacities: Vec<u64>,
    /// `S` together with `B`, sorted.
    pub centers: Vec<usize>,
    pub phi0: Vec<usize>,
    pub history: Vec<u64>,
}

/// Runs the conservative algorithm for general capacities on a connected
/// graph, with `alg` solving the residual instance without failures.
pub fn algorithm2(
    graph: &ThresholdGraph,
    capacities: &[u64],
    k: usize,
    alpha: usize,
    alg: &dyn UnweightedSolver,
) -> Result<Outcome<GeneralConservativeSolution>> {
    let BackupLoop { backups, capacities: caps, history } = build_backup_loop(graph, capacities, alpha)?;
    if backups.len() >= k {
        return Ok(Outcome::Infeasible(format!("{} backups leave no budget out of {k}", backups.len())));
    }
    let mut residual = caps.clone();
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
    Ok(Outcome::Solved(GeneralConservativeSolution { backups, capacities: caps, centers, phi0, history }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowReassignment {
    /// The conservative assignment for the scenario.
    pub phi: Vec<usize>,
    pub flow_value: u64,
    /// `|phi0^{-1}(F)|`.
    pub required: u64,
    /// Hop distance from old to new center for each rerouted client.
    pub detours: Vec<(usize, usize)>,
}

/// Reroutes the clients of `failed` along an integral max flow from failed
/// centers, through backups within six hops, into spare backup capacity.
pub fn conservative_reassign_flow(
    sol: &GeneralConservativeSolution,
    hops: &HopDistances,
    failed: &[usize],
    alpha: usize,
) -> Result<FlowReassignment> {
    let orphans: Vec<usize> = (0..sol.phi0.len()).filter(|&y| failed.contains(&sol.phi0[y])).collect();
    let alive: Vec<usize> = sol.backups.iter().copied().filter(|b| !failed.contains(b)).collect();
    let lost_backups: Vec<usize> = sol.backups.iter().copied().filter(|b| failed.contains(b)).collect();
    // node layout: s, t, orphans, failed, alive backups, second copies
    let client_node = |i: usize| 2 + i;
    let failed_node = |j: usize| 2 + orphans.len() + j;
    let alive_node = |j: usize| 2 + orphans.len() + failed.len() + j;
    let copy_node = |j: usize| 2 + orphans.len() + failed.len() + alive.len() + j;
    let mut net = FlowNetwork::new(2 + orphans.len() + failed.len() + alive.len() + lost_backups.len(), 0, 1);
    for (i, &y) in orphans.iter().enumerate() {
        net.add_arc(0, client_node(i), Capacity::Infinite);
        let j = failed.iter().position(|&f| f == sol.phi0[y]).expect("orphan of a failed center");
        net.add_arc(client_node(i), failed_node(j), Capacity::Finite(1));
    }
    for (j, &v) in failed.iter().enumerate() {
        for (a, &u) in alive.iter().enumerate() {
            if hops.within(v, u, BACKUP_RADIUS) {
                net.add_arc(failed_node(j), alive_node(a), Capacity::Infinite);
            }
        }
        for (c, &w) in lost_backups.iter().enumerate() {
            if hops.within(v, w, BACKUP_RADIUS) {
                net.add_arc(failed_node(j), copy_node(c), Capacity::Infinite);
            }
        }
    }
    for (a, &u) in alive.iter().enumerate() {
        if sol.capacities[u] > 0 {
            net.add_arc(alive_node(a), 1, Capacity::Finite(sol.capacities[u]));
        }
    }
    for (c, &w) in lost_backups.iter().enumerate() {
        let j = failed.iter().position(|&f| f == w).unwrap();
        net.add_arc(copy_node(c), failed_node(j), Capacity::Infinite);
    }
    let result = max_flow(&net);
    let required = orphans.len() as u64;
    let flow_value = match result.value {
        Capacity::Finite(v) => v,
        Capacity::Infinite => return Err(contract("reassignment network has an infinite path")),
    };
    if flow_value != required {
        return Err(contract(format!("reassignment flow {flow_value} is below the {required} orphaned clients")));
    }
    let mut phi = sol.phi0.clone();
    let mut detours = Vec::with_capacity(orphans.len());
    let flow = result.flow.expect("finite flow");
    for (path, amount) in decompose_paths(&net, &flow) {
        if amount != 1 {
            return Err(contract("a flow path carries more than one client"));
        }
        let i = path[1] - 2;
        let last = path[path.len() - 2];
        let target = alive[last - alive_node(0)];
        let y = orphans[i];
        let detour = hops.get(sol.phi0[y], target).ok_or_else(|| contract("rerouted to another component"))?;
        if detour > BACKUP_RADIUS * alpha {
            return Err(contract(format!("client {y} detours {detour} hops")));
        }
        detours.push((y, detour));
        phi[y] = target;
    }
    Ok(FlowReassignment { phi, flow_value, required, detours })
}
