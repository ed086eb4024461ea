//! Threshold sweep over the distinct distances, and per-component budget
//! allocation for disconnected threshold graphs.

use crate::error::Result;
use crate::graph::ThresholdGraph;
use crate::instance::MetricInstance;
use crate::numeric::Length;

/// Either a result or a certificate (with a human-readable reason) that no
/// distance-1 solution exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Solved(T),
    Infeasible(String),
}

impl<T> Outcome<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Solved(t) => Outcome::Solved(f(t)),
            Outcome::Infeasible(r) => Outcome::Infeasible(r),
        }
    }

    pub fn solved(self) -> Option<T> {
        match self {
            Outcome::Solved(t) => Some(t),
            Outcome::Infeasible(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnweightedSolution {
    pub centers: Vec<usize>,
    /// Initial assignment, for solvers that produce one.
    pub initial_assignment: Option<Vec<usize>>,
}

pub type UnweightedOutcome = Outcome<UnweightedSolution>;

/// A decision procedure on connected unweighted graphs: a distance-`r`
/// solution with at most `k` centers, or a certificate that no distance-1
/// solution with `k` centers exists.
pub trait UnweightedSolver {
    fn name(&self) -> &'static str;

    /// Hop stretch `r` of returned solutions.
    fn stretch(&self, alpha: usize) -> usize;

    /// Graph whose components are solved separately.
    fn prepare(&self, graph: &ThresholdGraph, _capacities: &[u64]) -> Result<ThresholdGraph> {
        Ok(graph.clone())
    }

    fn solve(&self, graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSolution {
    pub centers: Vec<usize>,
    pub initial_assignment: Option<Vec<usize>>,
    /// Components of the prepared graph, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Center budget spent on each component.
    pub budgets: Vec<usize>,
}

/// Solves every component with the smallest budget in `alpha + 1 ..= k` that
/// works, then spends any surplus on the earliest components.
pub fn solve_components(
    graph: &ThresholdGraph,
    capacities: &[u64],
    k: usize,
    alpha: usize,
    solver: &dyn UnweightedSolver,
) -> Result<Outcome<ComponentSolution>> {
    let prepared = solver.prepare(graph, capacities)?;
    let components = prepared.connected_components();
    let mut parts: Vec<(usize, UnweightedSolution)> = Vec::with_capacity(components.len());
    for comp in &components {
        let sub = prepared.induced(comp);
        let caps: Vec<u64> = comp.iter().map(|&v| capacities[v]).collect();
        let mut found = None;
        for budget in alpha + 1..=k.min(comp.len()) {
            if let Outcome::Solved(sol) = solver.solve(&sub, &caps, budget, alpha)? {
                found = Some((budget, sol));
                break;
            }
        }
        match found {
            Some(part) => parts.push(part),
            None => {
                return Ok(Outcome::Infeasible(format!(
                    "component containing vertex {} has no solution with at most {k} centers",
                    comp[0]
                )))
            }
        }
    }
    let used: usize = parts.iter().map(|(b, _)| b).sum();
    if used > k {
        return Ok(Outcome::Infeasible(format!("components need {used} centers but only {k} are available")));
    }
    let mut surplus = k - used;
    for (comp, (budget, sol)) in components.iter().zip(parts.iter_mut()) {
        if surplus == 0 {
            break;
        }
        let extra = surplus.min(comp.len() - *budget);
        if extra == 0 {
            continue;
        }
        surplus -= extra;
        let sub = prepared.induced(comp);
        let caps: Vec<u64> = comp.iter().map(|&v| capacities[v]).collect();
        match solver.solve(&sub, &caps, *budget + extra, alpha)? {
            Outcome::Solved(bigger) => *sol = bigger,
            Outcome::Infeasible(_) => {
                // open idle vertices instead; extra centers never hurt
                let idle: Vec<usize> = (0..comp.len()).filter(|v| !sol.centers.contains(v)).take(extra).collect();
                sol.centers.extend(idle);
                sol.centers.sort_unstable();
            }
        }
        *budget += extra;
    }
    let n = graph.n();
    let mut centers = Vec::new();
    let mut assignment = Some(vec![usize::MAX; n]);
    for (comp, (_, sol)) in components.iter().zip(&parts) {
        centers.extend(sol.centers.iter().map(|&c| comp[c]));
        match (&mut assignment, &sol.initial_assignment) {
            (Some(global), Some(local)) => {
                for (i, &c) in local.iter().enumerate() {
                    global[comp[i]] = comp[c];
                }
            }
            _ => assignment = None,
        }
    }
    centers.sort_unstable();
    Ok(Outcome::Solved(ComponentSolution {
        centers,
        initial_assignment: assignment,
        budgets: parts.iter().map(|(b, _)| *b).collect(),
        components,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    Solved { tau_star: Length, solution: ComponentSolution },
    /// The solver failed even at the largest distance.
    Infeasible { tau: Length, reason: String },
}

/// Returns the first threshold, in increasing order, at which `solver`
/// succeeds on the threshold graph.
pub fn sweep(inst: &MetricInstance, solver: &dyn UnweightedSolver) -> Result<SweepOutcome> {
    let mut last = (Length::zero(), String::from("instance has no vertices"));
    for tau in inst.distinct_distances() {
        let graph = inst.threshold_graph(&tau);
        match solve_components(&graph, &inst.capacities, inst.k, inst.alpha, solver)? {
            Outcome::Solved(solution) => return Ok(SweepOutcome::Solved { tau_star: tau, solution }),
            Outcome::Infeasible(reason) => last = (tau, reason),
        }
    }
    Ok(SweepOutcome::Infeasible { tau: last.0, reason: last.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Variant;
    use crate::numeric::int;
    use crate::oracle::exact_distance1_ft;

    /// Exact distance-1 solver on tiny graphs.
    struct Exact;

    impl UnweightedSolver for Exact {
        fn name(&self) -> &'static str {
            "exact"
        }

        fn stretch(&self, _alpha: usize) -> usize {
            1
        }

        fn solve(&self, graph: &ThresholdGraph, caps: &[u64], k: usize, alpha: usize) -> Result<UnweightedOutcome> {
            Ok(match exact_distance1_ft(graph, caps, k, alpha) {
                Some(centers) => Outcome::Solved(UnweightedSolution { centers, initial_assignment: None }),
                None => Outcome::Infeasible("no distance-1 solution".into()),
            })
        }
    }

    #[test]
    fn line_of_three_points() {
        let pts = [(int(0), int(0)), (int(1), int(0)), (int(3), int(0))];
        let inst = MetricInstance::from_points("line", &pts, 1, 0, vec![3; 3], Variant::FaultTolerant).unwrap();
        match sweep(&inst, &Exact).unwrap() {
            SweepOutcome::Solved { tau_star, .. } => assert_eq!(tau_star, Length::from_integer(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_components_share_the_budget() {
        let g = ThresholdGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let caps = [3; 6];
        let sol = solve_components(&g, &caps, 4, 1, &Exact).unwrap().solved().unwrap();
        assert_eq!(sol.budgets, vec![2, 2]);
        assert_eq!(sol.centers.len(), 4);
        assert!(matches!(solve_components(&g, &caps, 2, 1, &Exact).unwrap(), Outcome::Infeasible(_)));
    }

    #[test]
    fn surplus_goes_to_the_first_component() {
        let g = ThresholdGraph::from_edges(5, [(0, 1), (1, 2), (3, 4)]);
        let sol = solve_components(&g, &[3; 5], 4, 0, &Exact).unwrap().solved().unwrap();
        assert_eq!(sol.budgets, vec![3, 1]);
        assert_eq!(sol.centers.len(), 4);
    }
}
