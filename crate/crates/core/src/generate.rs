//! Seeded random instances and graphs for benchmarks and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::instance::{MetricInstance, Variant};
use crate::numeric::rat;

/// Points on the `grid x grid` lattice of the unit square, each capacity
/// drawn from `capacity_choices`. Coordinates are written as decimals, so
/// `grid` must have no prime factors other than 2 and 5.
#[allow(clippy::too_many_arguments)]
pub fn random_points_instance<R: Rng + ?Sized>(
    rng: &mut R,
    name: impl Into<String>,
    n: usize,
    k: usize,
    alpha: usize,
    capacity_choices: &[u64],
    variant: Variant,
    grid: u32,
) -> Result<MetricInstance> {
    if capacity_choices.is_empty() || grid == 0 {
        return Err(Error::InvalidInstance("need capacity choices and a positive grid".into()));
    }
    let g = grid as i64;
    let points: Vec<_> = (0..n).map(|_| (rat(rng.gen_range(0..=g), g), rat(rng.gen_range(0..=g), g))).collect();
    let capacities = (0..n).map(|_| *capacity_choices.choose(rng).expect("nonempty")).collect();
    MetricInstance::from_points(name, &points, k, alpha, capacities, variant)
}

/// A uniformly random spanning tree shape plus each remaining pair with
/// probability `density`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> ThresholdGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    ThresholdGraph::from_edges(n, edges)
}

/// Capacities that are `level` with probability `p` and 0 otherwise, with
/// at least one vertex at `level`.
pub fn random_zero_l<R: Rng + ?Sized>(rng: &mut R, n: usize, level: u64, p: f64) -> Vec<u64> {
    let mut caps: Vec<u64> = (0..n).map(|_| if rng.gen_bool(p) { level } else { 0 }).collect();
    if n > 0 && caps.iter().all(|&c| c == 0) {
        caps[rng.gen_range(0..n)] = level;
    }
    caps
}
