//! Scenario-by-scenario checks of fault-tolerant and conservative solutions.

use itertools::Itertools;
use serde::Serialize;

use crate::flow::{capacitated_assignment, Assignment};
use crate::graph::ThresholdGraph;
use crate::instance::MetricInstance;
use crate::numeric::Length;

/// Which (client, center) pairs are close enough, as a dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reach {
    n: usize,
    within: Vec<bool>,
}

impl Reach {
    pub fn from_instance(inst: &MetricInstance, radius: &Length) -> Self {
        let n = inst.n();
        let within = (0..n * n).map(|i| inst.distance(i / n, i % n) <= radius).collect();
        Reach { n, within }
    }

    /// Pairs at hop distance at most `radius` in `graph`.
    pub fn from_graph(graph: &ThresholdGraph, radius: usize) -> Self {
        let n = graph.n();
        let mut within = vec![false; n * n];
        for u in 0..n {
            for (v, d) in graph.bfs([u], Some(radius)).into_iter().enumerate() {
                within[u * n + v] = d.is_some();
            }
        }
        Reach { n, within }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, client: usize, center: usize) -> bool {
        self.within[client * self.n + center]
    }
}

/// A failing scenario and the clients that could not be placed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioFailure {
    pub failed: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "crate::numeric::serialize_length")]
    pub radius_checked: Length,
    pub scenarios_checked: usize,
    pub pass: bool,
    pub first_failure: Option<ScenarioFailure>,
}

/// Failure sets checked for `centers`: every subset of size
/// `min(alpha, |centers|)`, in lexicographic order.
pub fn scenarios(centers: &[usize], alpha: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut sorted = centers.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().combinations(alpha.min(centers.len()))
}

/// First scenario in which the clients cannot all be assigned to surviving
/// centers within reach, with the number of scenarios examined.
pub fn ft_first_failure(
    reach: &Reach,
    capacities: &[u64],
    centers: &[usize],
    alpha: usize,
) -> (usize, Option<ScenarioFailure>) {
    let mut checked = 0;
    for failed in scenarios(centers, alpha) {
        checked += 1;
        let allowed: Vec<Vec<usize>> = (0..reach.n())
            .map(|u| centers.iter().copied().filter(|c| !failed.contains(c) && reach.get(u, *c)).collect())
            .collect();
        if let Assignment::HallViolation(witness) = capacitated_assignment(&allowed, capacities) {
            return (checked, Some(ScenarioFailure { failed, witness }));
        }
    }
    (checked, None)
}

/// Checks `phi0` itself (an empty failure set in the report) and then every
/// scenario: clients of failed centers must fit into the spare capacity of
/// surviving centers within reach.
pub fn conservative_first_failure(
    reach: &Reach,
    capacities: &[u64],
    centers: &[usize],
    phi0: &[usize],
    alpha: usize,
) -> (usize, Option<ScenarioFailure>) {
    let n = reach.n();
    let mut load = vec![0u64; capacities.len()];
    let mut bad: Vec<usize> = Vec::new();
    for (u, &c) in phi0.iter().enumerate() {
        if !centers.contains(&c) || !reach.get(u, c) {
            bad.push(u);
        } else {
            load[c] += 1;
        }
    }
    if phi0.len() != n {
        bad.extend(phi0.len()..n);
    }
    for (c, &l) in load.iter().enumerate() {
        if l > capacities[c] {
            bad.extend((0..phi0.len()).filter(|&u| phi0[u] == c));
        }
    }
    if !bad.is_empty() {
        bad.sort_unstable();
        bad.dedup();
        return (0, Some(ScenarioFailure { failed: Vec::new(), witness: bad }));
    }
    let spare: Vec<u64> = (0..capacities.len()).map(|c| capacities[c] - load[c]).collect();
    let mut checked = 0;
    for failed in scenarios(centers, alpha) {
        checked += 1;
        let orphans: Vec<usize> = (0..n).filter(|&u| failed.contains(&phi0[u])).collect();
        let allowed: Vec<Vec<usize>> = orphans
            .iter()
            .map(|&u| centers.iter().copied().filter(|c| !failed.contains(c) && reach.get(u, *c)).collect())
            .collect();
        if let Assignment::HallViolation(set) = capacitated_assignment(&allowed, &spare) {
            let witness = set.into_iter().map(|i| orphans[i]).collect();
            return (checked, Some(ScenarioFailure { failed, witness }));
        }
    }
    (checked, None)
}

/// Fault-tolerant check of `centers` at metric radius `radius`.
pub fn verify_ft(inst: &MetricInstance, centers: &[usize], radius: &Length) -> VerificationReport {
    let reach = Reach::from_instance(inst, radius);
    let (scenarios_checked, first_failure) = ft_first_failure(&reach, &inst.capacities, centers, inst.alpha);
    VerificationReport {
        radius_checked: radius.clone(),
        scenarios_checked,
        pass: first_failure.is_none(),
        first_failure,
    }
}

/// Conservative check of `(centers, phi0)` at metric radius `radius`.
pub fn verify_conservative(inst: &MetricInstance, centers: &[usize], phi0: &[usize], radius: &Length) -> VerificationReport {
    let reach = Reach::from_instance(inst, radius);
    let (scenarios_checked, first_failure) =
        conservative_first_failure(&reach, &inst.capacities, centers, phi0, inst.alpha);
    VerificationReport {
        radius_checked: radius.clone(),
        scenarios_checked,
        pass: first_failure.is_none(),
        first_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Variant;
    use crate::numeric::int;

    fn p3(variant: Variant) -> MetricInstance {
        let pts = [(int(0), int(0)), (int(1), int(0)), (int(2), int(0))];
        MetricInstance::from_points("p3", &pts, 2, 1, vec![3; 3], variant).unwrap()
    }

    #[test]
    fn path_of_three() {
        let inst = p3(Variant::FaultTolerant);
        let r1 = verify_ft(&inst, &[0, 1], &Length::from_integer(1));
        assert!(!r1.pass);
        assert_eq!(r1.first_failure.unwrap().failed, vec![1]);
        assert!(verify_ft(&inst, &[0, 1], &Length::from_integer(2)).pass);
    }

    #[test]
    fn alpha_zero_is_one_scenario() {
        let mut inst = p3(Variant::FaultTolerant);
        inst.alpha = 0;
        let r = verify_ft(&inst, &[1], &Length::from_integer(1));
        assert!(r.pass);
        assert_eq!(r.scenarios_checked, 1);
    }

    #[test]
    fn conservative_checks() {
        let inst = p3(Variant::Conservative);
        let two = Length::from_integer(2);
        // nobody assigned to 0, so losing 0 is free; losing 1 moves all to 0
        assert!(verify_conservative(&inst, &[0, 1], &[1, 1, 1], &two).pass);
        // overfilled center
        let mut small = inst.clone();
        small.capacities = vec![3, 2, 3];
        let r = verify_conservative(&small, &[0, 1], &[1, 1, 1], &two);
        assert!(!r.pass);
        let failure = r.first_failure.unwrap();
        assert!(failure.failed.is_empty());
        assert_eq!(failure.witness, vec![0, 1, 2]);
    }
}
