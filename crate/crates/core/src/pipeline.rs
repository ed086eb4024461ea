//! The four unweighted decision procedures plugged into the threshold sweep.
//! Each one builds its solution and then checks every failure scenario
//! constructively before reporting success.

use crate::bottleneck::{Outcome, UnweightedOutcome, UnweightedSolution, UnweightedSolver};
use crate::clustering::{build_gprime, monarch_clustering};
use crate::conservative::{algorithm1, algorithm2, conservative_reassign_flow, reassign_0l};
use crate::error::{contract, Error, Result};
use crate::flow::{capacitated_assignment, Assignment};
use crate::graph::ThresholdGraph;
use crate::lp::{solve_lpka, solve_lpu, CuttingPlaneOutcome};
use crate::oracle::{exact_distance1_ft, scenarios, OracleLimits, Reach};
use crate::rounding::{assign_scenario_uniform, round_general, round_uniform, ScenarioAssigner};

fn capped(capacities: &[u64]) -> Vec<u64> {
    let n = capacities.len() as u64;
    capacities.iter().map(|&c| c.min(n)).collect()
}

/// Fault-tolerant solver for arbitrary capacities, stretch 10.
#[derive(Clone, Copy, Debug)]
pub struct FtGeneral {
    /// Largest `alpha` the backup-pinned program accepts.
    pub alpha_bound: usize,
}

impl UnweightedSolver for FtGeneral {
    fn name(&self) -> &'static str {
        "ft-general"
    }

    fn stretch(&self, _alpha: usize) -> usize {
        10
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
        let caps = capped(capacities);
        let clustering = match monarch_clustering(graph)?.select_backups(&caps, alpha) {
            Ok(c) => c,
            Err(small) => {
                return Ok(Outcome::Infeasible(format!(
                    "cluster of midpoint {} has {} vertices, fewer than {alpha}",
                    small.midpoint, small.size
                )))
            }
        };
        let gprime = build_gprime(graph, &clustering);
        let y = match solve_lpka(graph, &clustering, &gprime, &caps, k, alpha, self.alpha_bound)? {
            CuttingPlaneOutcome::Feasible { y, .. } => y,
            CuttingPlaneOutcome::InfeasibleAtTau => {
                return Ok(Outcome::Infeasible("backup-pinned relaxation is empty".into()))
            }
        };
        let rounding = round_general(&y, graph, &clustering, &caps)?;
        let assigner = ScenarioAssigner::new(&rounding, graph, &gprime, &clustering, &caps);
        for failed in scenarios(&rounding.centers, alpha) {
            assigner.scenario(&failed, alpha)?;
        }
        let phi0 = assigner.backup_scenario(&[])?;
        Ok(Outcome::Solved(UnweightedSolution { centers: rounding.centers.clone(), initial_assignment: Some(phi0) }))
    }
}

/// Fault-tolerant solver for `{0, L}` capacities, stretch 6. Components are
/// taken after dropping edges between capacity-0 vertices.
#[derive(Clone, Copy, Debug)]
pub struct FtZeroL;

impl UnweightedSolver for FtZeroL {
    fn name(&self) -> &'static str {
        "ft-0l"
    }

    fn stretch(&self, _alpha: usize) -> usize {
        6
    }

    fn prepare(&self, graph: &ThresholdGraph, capacities: &[u64]) -> Result<ThresholdGraph> {
        graph.strip_zero_zero_edges(capacities)
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
        let y = match solve_lpu(graph, capacities, k, alpha)? {
            CuttingPlaneOutcome::Feasible { y, .. } => y,
            CuttingPlaneOutcome::InfeasibleAtTau => return Ok(Outcome::Infeasible("{0, L} relaxation is empty".into())),
        };
        let centers = round_uniform(&y, graph, capacities, k)?;
        for failed in scenarios(&centers, alpha) {
            assign_scenario_uniform(&centers, &failed, graph, capacities)?;
        }
        let phi0 = assign_scenario_uniform(&centers, &[], graph, capacities)?;
        Ok(Outcome::Solved(UnweightedSolution { centers, initial_assignment: Some(phi0) }))
    }
}

/// Exact distance-1 fault-tolerant solver by enumeration, for small graphs.
#[derive(Clone, Copy, Debug)]
pub struct ExactFt {
    pub max_n: usize,
}

impl Default for ExactFt {
    fn default() -> Self {
        ExactFt { max_n: OracleLimits::FAULT_TOLERANT.max_n }
    }
}

impl UnweightedSolver for ExactFt {
    fn name(&self) -> &'static str {
        "exact-ft"
    }

    fn stretch(&self, _alpha: usize) -> usize {
        1
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
        if graph.n() > self.max_n {
            return Err(Error::SizeLimit(format!("exact solver limited to {} vertices", self.max_n)));
        }
        let Some(centers) = exact_distance1_ft(graph, capacities, k, alpha) else {
            return Ok(Outcome::Infeasible("no distance-1 solution".into()));
        };
        let reach = Reach::from_graph(graph, 1);
        let allowed: Vec<Vec<usize>> =
            (0..graph.n()).map(|u| centers.iter().copied().filter(|&c| reach.get(u, c)).collect()).collect();
        let Assignment::Assigned(phi0) = capacitated_assignment(&allowed, capacities) else {
            return Err(contract("exact solution has no initial assignment"));
        };
        Ok(Outcome::Solved(UnweightedSolution { centers, initial_assignment: Some(phi0) }))
    }
}

/// Conservative solver for `{0, L}` capacities, stretch 7.
#[derive(Clone, Copy, Debug)]
pub struct ConsZeroL;

impl UnweightedSolver for ConsZeroL {
    fn name(&self) -> &'static str {
        "cons-0l"
    }

    fn stretch(&self, _alpha: usize) -> usize {
        7
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
        let sol = match algorithm1(graph, capacities, k, alpha, &FtZeroL)? {
            Outcome::Solved(sol) => sol,
            Outcome::Infeasible(reason) => return Ok(Outcome::Infeasible(reason)),
        };
        let hops = graph.all_pairs();
        for failed in scenarios(&sol.centers, alpha) {
            reassign_0l(&sol, &hops, capacities, &failed)?;
        }
        Ok(Outcome::Solved(UnweightedSolution { centers: sol.centers, initial_assignment: Some(sol.phi0) }))
    }
}

/// Conservative solver for arbitrary capacities. The residual instance is
/// solved by [`FtGeneral`] (stretch `9 + 6 alpha`) or, with `exact`, by
/// [`ExactFt`] (stretch `1 + 6 alpha`).
#[derive(Clone, Copy, Debug)]
pub struct ConsGeneral {
    pub exact: bool,
    pub alpha_bound: usize,
}

impl ConsGeneral {
    fn base_stretch(&self) -> usize {
        if self.exact {
            1
        } else {
            9
        }
    }
}

impl UnweightedSolver for ConsGeneral {
    fn name(&self) -> &'static str {
        if self.exact {
            "cons-general-exact"
        } else {
            "cons-general"
        }
    }

    fn stretch(&self, alpha: usize) -> usize {
        self.base_stretch() + 6 * alpha
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
        let exact = ExactFt::default();
        let general = FtGeneral { alpha_bound: self.alpha_bound };
        let inner: &dyn UnweightedSolver = if self.exact { &exact } else { &general };
        let sol = match algorithm2(graph, capacities, k, alpha, inner)? {
            Outcome::Solved(sol) => sol,
            Outcome::Infeasible(reason) => return Ok(Outcome::Infeasible(reason)),
        };
        let hops = graph.all_pairs();
        let limit = self.stretch(alpha);
        for (u, &c) in sol.phi0.iter().enumerate() {
            if !hops.within(u, c, self.base_stretch()) {
                return Err(contract(format!("client {u} starts {} hops away", self.base_stretch())));
            }
        }
        for failed in scenarios(&sol.centers, alpha) {
            let moved = conservative_reassign_flow(&sol, &hops, &failed, alpha)?;
            if let Some(u) = (0..moved.phi.len()).find(|&u| !hops.within(u, moved.phi[u], limit)) {
                return Err(contract(format!("client {u} lands beyond {limit} hops in scenario {failed:?}")));
            }
        }
        Ok(Outcome::Solved(UnweightedSolution { centers: sol.centers, initial_assignment: Some(sol.phi0) }))
    }
}
