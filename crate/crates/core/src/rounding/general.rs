//! Rounding of a backup-pinned fractional opening into `k` centers, and the
//! per-scenario assignments built on top of it.

use num_traits::{One, Zero};

use crate::clustering::{add_auxiliary, AuxiliaryLayer, Clustering, DirectedGraph};
use crate::error::{contract, Result};
use crate::flow::{capacitated_assignment, Assignment};
use crate::graph::{HopDistances, ThresholdGraph};
use crate::numeric::Rational;
use crate::rounding::transfer::{verify_transfer, TransferProblem};
use crate::rounding::tree::tree_transfer;

/// Hop stretch of the composed rounding transfer.
pub const ROUNDING_RADIUS: usize = 8;
/// Assignment radius when only backups fail.
pub const BACKUP_SCENARIO_RADIUS: usize = 9;
/// Bound on the distance from a client to the midpoint of its center.
pub const MIDPOINT_RADIUS: usize = 8;
/// Assignment radius for arbitrary scenarios.
pub const GENERAL_SCENARIO_RADIUS: usize = 10;

#[derive(Clone, Debug)]
pub struct GeneralRounding {
    /// `R`, sorted; always contains every backup.
    pub centers: Vec<usize>,
    pub layer: AuxiliaryLayer,
    /// Opening after concentrating one unit on each auxiliary vertex.
    pub y1: Vec<Rational>,
    /// Integral opening after the tree transfer, over the extended vertices.
    pub y2: Vec<Rational>,
    /// The tree on auxiliary vertices and fractional leaves.
    pub tree: ThresholdGraph,
    pub tree_nodes: Vec<usize>,
}

impl GeneralRounding {
    /// Support of `y2`, auxiliary vertices included.
    pub fn open_extended(&self) -> Vec<usize> {
        (0..self.y2.len()).filter(|&v| self.y2[v].is_one()).collect()
    }
}

/// Step one: drain `N(v) \ B` into `a_v`, starting with `m_v` and then by
/// increasing capacity, until `a_v` holds one unit.
fn concentrate(y: &[Rational], graph: &ThresholdGraph, clustering: &Clustering, layer: &AuxiliaryLayer) -> Result<Vec<Rational>> {
    let mut y1 = y.to_vec();
    y1.resize(layer.graph.n(), Rational::zero());
    for (i, &v) in clustering.midpoints.iter().enumerate() {
        let (a, m) = layer.aux[i];
        let mut order: Vec<usize> = graph
            .closed_neighbors(v)
            .into_iter()
            .filter(|&u| u != m && !clustering.is_backup(u))
            .collect();
        order.sort_by_key(|&u| (layer.capacities[u], u));
        order.insert(0, m);
        let mut missing = Rational::one();
        for u in order {
            if missing.is_zero() {
                break;
            }
            let take = std::cmp::min(y1[u].clone(), missing.clone());
            y1[u] -= &take;
            y1[a] += &take;
            missing -= take;
        }
        if !missing.is_zero() {
            return Err(contract(format!("less than one unit of opening around midpoint {v}")));
        }
    }
    Ok(y1)
}

/// Rounds a feasible point of the backup-pinned program to `k` centers
/// forming an integral distance-8 transfer of `y` that keeps `B` open.
pub fn round_general(
    y: &[Rational],
    graph: &ThresholdGraph,
    clustering: &Clustering,
    capacities: &[u64],
) -> Result<GeneralRounding> {
    let n = graph.n();
    if y.len() != n || capacities.len() != n {
        return Err(contract("opening and capacity vectors must match the graph"));
    }
    if clustering.all_backups.iter().any(|&b| !y[b].is_one()) {
        return Err(contract("a backup vertex is not fully open"));
    }
    let layer = add_auxiliary(clustering, graph, capacities)?;
    let y1 = concentrate(y, graph, clustering, &layer)?;

    let g = clustering.midpoints.len();
    let mut edges: Vec<(usize, usize)> = clustering
        .parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (n + p, n + i)))
        .collect();
    let mut tree_nodes: Vec<usize> = (n..n + g).collect();
    for u in 0..n {
        if !y1[u].is_zero() && !y1[u].is_one() {
            edges.push((u, n + clustering.cluster_of[u]));
            tree_nodes.push(u);
        }
    }
    tree_nodes.sort_unstable();
    let tree = ThresholdGraph::from_edges(n + g, edges);
    let mut protected = clustering.backup_mask(n);
    protected.resize(n + g, false);
    let y2 = tree_transfer(&tree, &tree_nodes, &y1, &layer.capacities, &protected)?;

    let mut y3: Vec<Rational> = y2[..n].to_vec();
    for &(a, m) in &layer.aux {
        if !y2[m].is_zero() {
            return Err(contract(format!("vertex {m} is open before receiving its auxiliary opening")));
        }
        y3[m] = y2[a].clone();
    }
    if y3.iter().any(|v| !v.is_zero() && !v.is_one()) {
        return Err(contract("rounded opening is not integral"));
    }
    let centers: Vec<usize> = (0..n).filter(|&v| y3[v].is_one()).collect();
    let all: Vec<usize> = (0..n).collect();
    let backup_mask = clustering.backup_mask(n);
    let problem = TransferProblem {
        y,
        y_new: &y3,
        host: graph,
        domain: &all,
        radius: ROUNDING_RADIUS,
        protected: &backup_mask,
        capacities,
    };
    if !verify_transfer(&problem)? {
        return Err(contract("rounded centers are not a distance-8 transfer"));
    }
    Ok(GeneralRounding { centers, layer, y1, y2, tree, tree_nodes })
}

/// Scenario assignments for one rounding, with the per-client candidate
/// sets and hop distances computed once.
pub struct ScenarioAssigner<'a> {
    rounding: &'a GeneralRounding,
    clustering: &'a Clustering,
    capacities: &'a [u64],
    hops: HopDistances,
    /// Open (extended) vertices each client may use when nothing fails.
    candidates: Vec<Vec<usize>>,
}

impl<'a> ScenarioAssigner<'a> {
    pub fn new(
        rounding: &'a GeneralRounding,
        graph: &ThresholdGraph,
        gprime: &DirectedGraph,
        clustering: &'a Clustering,
        capacities: &'a [u64],
    ) -> Self {
        let n = graph.n();
        let extended = &rounding.layer.graph;
        let candidates = (0..n)
            .map(|u| {
                let near: Vec<usize> = extended
                    .neighborhood([u], 2)
                    .into_iter()
                    .filter(|&w| w >= n || !clustering.is_backup(w))
                    .collect();
                let mut set = rounding.tree.neighborhood(near, 2);
                set.extend(gprime.closed_out(u).into_iter().filter(|&w| clustering.is_backup(w)));
                set.into_iter().filter(|&w| rounding.y2[w].is_one()).collect()
            })
            .collect();
        ScenarioAssigner { rounding, clustering, capacities, hops: graph.all_pairs(), candidates }
    }

    fn midpoint_of(&self, w: usize) -> usize {
        let n = self.clustering.cluster_of.len();
        if w >= n {
            self.clustering.midpoints[w - n]
        } else {
            self.clustering.midpoint_of(w)
        }
    }

    fn real(&self, w: usize) -> usize {
        let n = self.clustering.cluster_of.len();
        if w >= n {
            self.rounding.layer.m_vertex(w - n)
        } else {
            w
        }
    }

    /// Assignment avoiding `failed`, a set of backups; every client ends
    /// within 9 hops of its center and 8 hops of that center's midpoint.
    pub fn backup_scenario(&self, failed: &[usize]) -> Result<Vec<usize>> {
        if failed.iter().any(|&f| !self.clustering.is_backup(f)) {
            return Err(contract("backup scenario contains a non-backup vertex"));
        }
        let allowed: Vec<Vec<usize>> = self
            .candidates
            .iter()
            .map(|list| list.iter().copied().filter(|w| !failed.contains(w)).collect())
            .collect();
        let map = match capacitated_assignment(&allowed, &self.rounding.layer.capacities) {
            Assignment::Assigned(map) => map,
            Assignment::HallViolation(set) => {
                return Err(contract(format!("no assignment for backup scenario {failed:?}: clients {set:?}")))
            }
        };
        let mut phi = Vec::with_capacity(map.len());
        for (u, &w) in map.iter().enumerate() {
            let center = self.real(w);
            if !self.hops.within(u, self.midpoint_of(w), MIDPOINT_RADIUS)
                || !self.hops.within(u, center, BACKUP_SCENARIO_RADIUS)
            {
                return Err(contract(format!("client {u} assigned too far away to {center}")));
            }
            phi.push(center);
        }
        Ok(phi)
    }

    /// Assignment avoiding any `failed` subset of the centers of size at
    /// most `alpha`, within 10 hops.
    pub fn scenario(&self, failed: &[usize], alpha: usize) -> Result<Vec<usize>> {
        if failed.len() > alpha {
            return Err(contract("more failures than alpha"));
        }
        if failed.iter().any(|f| self.rounding.centers.binary_search(f).is_err()) {
            return Err(contract("failed vertex is not a center"));
        }
        let c = self.clustering;
        let groups = c.midpoints.len();
        let mut by_cluster: Vec<Vec<usize>> = vec![Vec::new(); groups];
        for &f in failed {
            by_cluster[c.cluster_of[f]].push(f);
        }
        let mut stand_in: Vec<Vec<usize>> = Vec::with_capacity(groups);
        for (i, lost) in by_cluster.iter().enumerate() {
            if lost.len() > c.backups[i].len() {
                return Err(contract("more failures in a cluster than it has backups"));
            }
            stand_in.push(c.backups[i][..lost.len()].to_vec());
        }
        let mut scenario: Vec<usize> = stand_in.iter().flatten().copied().collect();
        for &b in &c.all_backups {
            if scenario.len() >= alpha {
                break;
            }
            if !scenario.contains(&b) {
                scenario.push(b);
            }
        }
        let mut phi = self.backup_scenario(&scenario)?;
        for i in 0..groups {
            let gone: Vec<usize> = by_cluster[i].iter().copied().filter(|v| !stand_in[i].contains(v)).collect();
            let fresh: Vec<usize> = stand_in[i].iter().copied().filter(|u| !by_cluster[i].contains(u)).collect();
            for (&v, &u) in gone.iter().zip(&fresh) {
                for target in phi.iter_mut().filter(|t| **t == v) {
                    *target = u;
                }
            }
        }
        let mut load = vec![0u64; self.capacities.len()];
        for (u, &center) in phi.iter().enumerate() {
            load[center] += 1;
            if failed.contains(&center) || !self.hops.within(u, center, GENERAL_SCENARIO_RADIUS) {
                return Err(contract(format!("client {u} has no valid center after the swap")));
            }
        }
        if load.iter().zip(self.capacities).any(|(l, c)| l > c) {
            return Err(contract("swap exceeded a capacity"));
        }
        Ok(phi)
    }
}

pub fn assign_scenario_b(
    rounding: &GeneralRounding,
    graph: &ThresholdGraph,
    gprime: &DirectedGraph,
    clustering: &Clustering,
    capacities: &[u64],
    failed: &[usize],
) -> Result<Vec<usize>> {
    ScenarioAssigner::new(rounding, graph, gprime, clustering, capacities).backup_scenario(failed)
}

pub fn assign_scenario_general(
    rounding: &GeneralRounding,
    graph: &ThresholdGraph,
    gprime: &DirectedGraph,
    clustering: &Clustering,
    capacities: &[u64],
    failed: &[usize],
    alpha: usize,
) -> Result<Vec<usize>> {
    ScenarioAssigner::new(rounding, graph, gprime, clustering, capacities).scenario(failed, alpha)
}
