//! Unweighted undirected graphs obtained by thresholding a metric, with
//! hop-distance queries, closed neighbourhoods and power graphs.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::numeric::Length;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdGraph {
    adj: Vec<Vec<usize>>,
    tau: Option<Length>,
}

impl ThresholdGraph {
    pub fn empty(n: usize) -> Self {
        ThresholdGraph { adj: vec![Vec::new(); n], tau: None }
    }

    /// Builds a graph from an edge list; self loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        ThresholdGraph { adj, tau: None }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn with_tau(mut self, tau: Length) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn tau(&self) -> Option<&Length> {
        self.tau.as_ref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Multi-source BFS. Entry `v` is the hop distance from the nearest
    /// source, or `None` when unreachable or beyond `limit`.
    pub fn bfs(&self, sources: impl IntoIterator<Item = usize>, limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if limit.is_some_and(|l| du >= l) {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn hop_distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs([u], None)[v]
    }

    pub fn all_pairs(&self) -> HopDistances {
        let n = self.n();
        let mut d = vec![u32::MAX; n * n];
        for u in 0..n {
            for (v, dv) in self.bfs([u], None).into_iter().enumerate() {
                if let Some(dv) = dv {
                    d[u * n + v] = dv as u32;
                }
            }
        }
        HopDistances { n, d }
    }

    /// `N^ell(U)`: every vertex within `ell` hops of some member of `set`,
    /// the set itself included.
    pub fn neighborhood(&self, set: impl IntoIterator<Item = usize>, ell: usize) -> BTreeSet<usize> {
        self.bfs(set, Some(ell))
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect()
    }

    /// Closed neighbourhood `N(v)`, which always contains `v`.
    pub fn closed_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&w| w < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    /// `G^ell`: `u` and `v` adjacent iff `1 <= d(u, v) <= ell`.
    pub fn power_graph(&self, ell: usize) -> ThresholdGraph {
        assert!(ell >= 1, "power graph needs ell >= 1");
        let mut edges = Vec::new();
        for u in 0..self.n() {
            for (v, d) in self.bfs([u], Some(ell)).into_iter().enumerate() {
                if u < v && d.is_some() {
                    edges.push((u, v));
                }
            }
        }
        ThresholdGraph { tau: self.tau.clone(), ..Self::from_edges(self.n(), edges) }
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut parts = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let part: Vec<usize> = self
                .bfs([s], None)
                .into_iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &v in &part {
                seen[v] = true;
            }
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs([0], None).iter().all(Option::is_some)
    }

    /// Subgraph induced by `vertices`, relabelled so that `vertices[i]`
    /// becomes vertex `i`.
    pub fn induced(&self, vertices: &[usize]) -> ThresholdGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter(move |&&w| index[w] != usize::MAX && i < index[w])
                .map(move |&w| (i, index[w]))
        });
        let edges: Vec<_> = edges.collect();
        ThresholdGraph { tau: self.tau.clone(), ..Self::from_edges(vertices.len(), edges) }
    }

    /// Same vertex set, keeping only edges with both endpoints in `mask`.
    pub fn induced_on_mask(&self, mask: &[bool]) -> ThresholdGraph {
        let edges = self.edges().into_iter().filter(|&(u, v)| mask[u] && mask[v]);
        ThresholdGraph { tau: self.tau.clone(), ..Self::from_edges(self.n(), edges) }
    }

    /// Removes every edge whose endpoints both have capacity zero. Rejects
    /// capacity vectors that are not `{0, L}` for a single `L`.
    pub fn strip_zero_zero_edges(&self, capacities: &[u64]) -> Result<ThresholdGraph> {
        zero_l_level(capacities)?;
        if capacities.len() != self.n() {
            return Err(Error::InvalidInstance("capacity vector length mismatch".into()));
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| capacities[u] != 0 || capacities[v] != 0);
        Ok(ThresholdGraph { tau: self.tau.clone(), ..Self::from_edges(self.n(), edges) })
    }
}

/// Returns the common non-zero capacity `L` (or `None` if every capacity is
/// zero); fails when more than one non-zero value occurs.
pub fn zero_l_level(capacities: &[u64]) -> Result<Option<u64>> {
    let mut level = None;
    for &c in capacities.iter().filter(|&&c| c != 0) {
        match level {
            None => level = Some(c),
            Some(l) if l == c => {}
            Some(l) => return Err(Error::NotZeroL(format!("found both {l} and {c}"))),
        }
    }
    Ok(level)
}

/// Dense all-pairs hop distances.
#[derive(Clone, Debug)]
pub struct HopDistances {
    n: usize,
    d: Vec<u32>,
}

impl HopDistances {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.d[u * self.n + v];
        (d != u32::MAX).then_some(d as usize)
    }

    pub fn within(&self, u: usize, v: usize, r: usize) -> bool {
        self.get(u, v).is_some_and(|d| d <= r)
    }

    /// Hop distance from `u` to the nearest member of `set`.
    pub fn to_set(&self, u: usize, set: &[usize]) -> Option<usize> {
        set.iter().filter_map(|&v| self.get(u, v)).min()
    }
}
