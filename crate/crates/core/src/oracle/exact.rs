//! Brute-force optima. Feasibility at a radius is monotone for exact
//! solutions, so the optimum is found by binary search over the distinct
//! distances, each step trying every center set of size `k`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::instance::MetricInstance;
use crate::numeric::Length;
use crate::oracle::verify::{conservative_first_failure, ft_first_failure, Reach};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_k: usize,
    pub max_alpha: usize,
    /// Cap on initial assignments examined per center set (conservative only).
    pub max_assignments: u64,
}

impl OracleLimits {
    pub const FAULT_TOLERANT: OracleLimits = OracleLimits { max_n: 10, max_k: 10, max_alpha: 3, max_assignments: 0 };
    pub const CONSERVATIVE: OracleLimits =
        OracleLimits { max_n: 9, max_k: 4, max_alpha: 2, max_assignments: 2_000_000 };

    pub fn with_max_n(self, max_n: usize) -> Self {
        OracleLimits { max_n, ..self }
    }

    fn check(&self, n: usize, k: usize, alpha: usize) -> Result<()> {
        if n > self.max_n || k > self.max_k || alpha > self.max_alpha {
            return Err(Error::SizeLimit(format!(
                "n={n}, k={k}, alpha={alpha} exceeds n<={}, k<={}, alpha<={}",
                self.max_n, self.max_k, self.max_alpha
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFt {
    pub opt: Length,
    pub centers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactConservative {
    pub opt: Length,
    pub centers: Vec<usize>,
    pub phi0: Vec<usize>,
}

/// Cheap necessary conditions: every client sees more than `alpha` centers
/// and the centers left after losing the `alpha` largest still hold `n`.
fn plausible(reach: &Reach, capacities: &[u64], centers: &[usize], alpha: usize) -> bool {
    let n = reach.n();
    let mut caps: Vec<u64> = centers.iter().map(|&c| capacities[c]).collect();
    caps.sort_unstable();
    let kept: u64 = caps[..caps.len().saturating_sub(alpha)].iter().sum();
    kept >= n as u64 && (0..n).all(|u| centers.iter().filter(|&&c| reach.get(u, c)).count() > alpha)
}

/// Lexicographically first center set of size `k` that survives every
/// scenario of `alpha` failures within `reach`.
pub fn ft_solution(reach: &Reach, capacities: &[u64], k: usize, alpha: usize) -> Option<Vec<usize>> {
    (0..reach.n())
        .combinations(k)
        .filter(|s| plausible(reach, capacities, s, alpha))
        .find(|s| ft_first_failure(reach, capacities, s, alpha).1.is_none())
}

/// Lexicographically first center set of size `k` with some initial
/// assignment passing the conservative check within `reach`.
pub fn conservative_solution(
    reach: &Reach,
    capacities: &[u64],
    k: usize,
    alpha: usize,
    max_assignments: u64,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    for centers in (0..reach.n()).combinations(k) {
        if !plausible(reach, capacities, &centers, alpha) {
            continue;
        }
        if let Some(phi0) = conservative_assignment(reach, capacities, &centers, alpha, max_assignments)? {
            return Ok(Some((centers, phi0)));
        }
    }
    Ok(None)
}

/// Searches initial assignments for a fixed center set. Clients that reach
/// the same centers are interchangeable, so only the number of clients of
/// each such class sent to each center is enumerated.
fn conservative_assignment(
    reach: &Reach,
    capacities: &[u64],
    centers: &[usize],
    alpha: usize,
    max_assignments: u64,
) -> Result<Option<Vec<usize>>> {
    let n = reach.n();
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for u in 0..n {
        let seen: Vec<usize> = centers.iter().copied().filter(|&c| reach.get(u, c)).collect();
        if seen.is_empty() {
            return Ok(None);
        }
        match classes.iter_mut().find(|(s, _)| *s == seen) {
            Some((_, members)) => members.push(u),
            None => classes.push((seen, vec![u])),
        }
    }
    let mut search = ClassSearch {
        reach,
        capacities,
        centers,
        alpha,
        classes: &classes,
        spare: capacities.to_vec(),
        phi0: vec![usize::MAX; n],
        examined: 0,
        max_assignments,
    };
    search.class(0)
}

struct ClassSearch<'a> {
    reach: &'a Reach,
    capacities: &'a [u64],
    centers: &'a [usize],
    alpha: usize,
    classes: &'a [(Vec<usize>, Vec<usize>)],
    spare: Vec<u64>,
    phi0: Vec<usize>,
    examined: u64,
    max_assignments: u64,
}

impl ClassSearch<'_> {
    fn class(&mut self, index: usize) -> Result<Option<Vec<usize>>> {
        if index == self.classes.len() {
            self.examined += 1;
            if self.examined > self.max_assignments {
                return Err(Error::SizeLimit(format!("more than {} initial assignments", self.max_assignments)));
            }
            let (_, failure) =
                conservative_first_failure(self.reach, self.capacities, self.centers, &self.phi0, self.alpha);
            return Ok(failure.is_none().then(|| self.phi0.clone()));
        }
        self.place(index, 0, 0)
    }

    /// Sends members `next..` of class `index` to its centers `slot..`.
    fn place(&mut self, index: usize, slot: usize, next: usize) -> Result<Option<Vec<usize>>> {
        let (seen, members) = &self.classes[index];
        if next == members.len() {
            return self.class(index + 1);
        }
        if slot == seen.len() {
            return Ok(None);
        }
        let c = seen[slot];
        let most = (members.len() - next).min(self.spare[c] as usize);
        // try heavier loads on earlier centers first
        for take in (0..=most).rev() {
            for &u in &members[next..next + take] {
                self.phi0[u] = c;
            }
            self.spare[c] -= take as u64;
            let found = self.place(index, slot + 1, next + take)?;
            self.spare[c] += take as u64;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Smallest index `i` with `feasible(i)`, assuming monotonicity, or `None`
/// when even the last index fails.
fn first_feasible<T>(len: usize, mut feasible: impl FnMut(usize) -> Result<Option<T>>) -> Result<Option<(usize, T)>> {
    if len == 0 {
        return Ok(None);
    }
    let Some(mut best) = feasible(len - 1)? else {
        return Ok(None);
    };
    let (mut lo, mut hi) = (0, len - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible(mid)? {
            Some(found) => {
                best = found;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    // `best` always belongs to `hi`, and the loop ends with `lo == hi`
    Ok(Some((hi, best)))
}

/// Fault-tolerant optimum; `None` when no radius admits a solution.
pub fn exact_opt_ft(inst: &MetricInstance, limits: OracleLimits) -> Result<Option<ExactFt>> {
    limits.check(inst.n(), inst.k, inst.alpha)?;
    let taus = inst.distinct_distances();
    let found = first_feasible(taus.len(), |i| {
        let reach = Reach::from_instance(inst, &taus[i]);
        Ok(ft_solution(&reach, &inst.capacities, inst.k, inst.alpha))
    })?;
    Ok(found.map(|(i, centers)| ExactFt { opt: taus[i].clone(), centers }))
}

/// Conservative optimum; `None` when no radius admits a solution.
pub fn exact_opt_conservative(inst: &MetricInstance, limits: OracleLimits) -> Result<Option<ExactConservative>> {
    limits.check(inst.n(), inst.k, inst.alpha)?;
    let taus = inst.distinct_distances();
    let found = first_feasible(taus.len(), |i| {
        let reach = Reach::from_instance(inst, &taus[i]);
        conservative_solution(&reach, &inst.capacities, inst.k, inst.alpha, limits.max_assignments)
    })?;
    Ok(found.map(|(i, (centers, phi0))| ExactConservative { opt: taus[i].clone(), centers, phi0 }))
}

/// Exact distance-1 fault-tolerant solution on an unweighted graph.
pub fn exact_distance1_ft(graph: &ThresholdGraph, capacities: &[u64], k: usize, alpha: usize) -> Option<Vec<usize>> {
    if k > graph.n() {
        return None;
    }
    ft_solution(&Reach::from_graph(graph, 1), capacities, k, alpha)
}

/// Exact distance-1 conservative solution on an unweighted graph.
pub fn exact_distance1_conservative(
    graph: &ThresholdGraph,
    capacities: &[u64],
    k: usize,
    alpha: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if k > graph.n() {
        return Ok(None);
    }
    let reach = Reach::from_graph(graph, 1);
    conservative_solution(&reach, capacities, k, alpha, OracleLimits::CONSERVATIVE.max_assignments)
}
