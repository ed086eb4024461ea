//! Instances on which the plain Hall-type relaxation is weak: `G_n` is the
//! cycle on `n = s^2` vertices with every pair at cycle distance at most `s`
//! joined, all capacities `n`, `k = s` and `alpha = s - 1`.

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::instance::{MetricInstance, Variant};
use crate::numeric::int;

/// The graph `G_n` for parameter `s`.
pub fn gap_graph(s: usize) -> ThresholdGraph {
    let n = s * s;
    let edges = (0..n).flat_map(|u| (1..=s).map(move |d| (u, (u + d) % n)));
    ThresholdGraph::from_edges(n, edges)
}

/// The hop metric of `G_n` as a fault-tolerant instance.
pub fn gap_instance(s: usize) -> Result<MetricInstance> {
    if s < 2 || !s.is_multiple_of(2) {
        return Err(Error::InvalidInstance(format!("gap parameter s = {s} must be even and at least 2")));
    }
    let g = gap_graph(s);
    let n = g.n();
    let hops = g.all_pairs();
    let dist: Vec<Vec<_>> = (0..n)
        .map(|u| (0..n).map(|v| int(hops.get(u, v).expect("connected") as i64)).collect())
        .collect();
    MetricInstance::from_matrix(format!("gap-s{s}"), &dist, s, s - 1, vec![n as u64; n], Variant::FaultTolerant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_vertices_of_degree_eight() {
        let g = gap_graph(4);
        assert_eq!(g.n(), 16);
        assert!((0..16).all(|v| g.neighbors(v).len() == 8));
        let inst = gap_instance(4).unwrap();
        assert_eq!((inst.k, inst.alpha), (4, 3));
        assert!(inst.capacities.iter().all(|&c| c == 16));
    }

    #[test]
    fn smallest_is_complete() {
        assert_eq!(gap_graph(2).edge_count(), 6);
        assert!(gap_instance(3).is_err());
        assert!(gap_instance(0).is_err());
    }
}
