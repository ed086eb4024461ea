//! Monarch clustering around midpoints at mutual hop distance three, backup
//! selection per cluster, the directed augmentation `G'`, auxiliary
//! vertices used by the rounding, and the independence notions used by the
//! conservative algorithms.

use std::collections::BTreeSet;

use crate::error::{contract, Error, Result};
use crate::graph::ThresholdGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    /// Midpoints in creation order; `midpoints[0]` is the root of the tree.
    pub midpoints: Vec<usize>,
    /// Tree parent of each midpoint, as an index into `midpoints`.
    pub parent: Vec<Option<usize>>,
    /// Cluster (midpoint index) of every vertex.
    pub cluster_of: Vec<usize>,
    /// Members of each cluster, sorted.
    pub clusters: Vec<Vec<usize>>,
    /// `B_v` per cluster, in non-increasing capacity order.
    pub backups: Vec<Vec<usize>>,
    /// `B`, sorted.
    pub all_backups: Vec<usize>,
}

/// A cluster too small to host the required backups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TooSmallCluster {
    pub midpoint: usize,
    pub size: usize,
}

impl Clustering {
    /// `delta(v)`: the midpoint vertex whose cluster contains `v`.
    pub fn midpoint_of(&self, v: usize) -> usize {
        self.midpoints[self.cluster_of[v]]
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (self.midpoints[p], self.midpoints[i])))
            .collect()
    }

    pub fn is_backup(&self, v: usize) -> bool {
        self.all_backups.binary_search(&v).is_ok()
    }

    pub fn backup_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &b in &self.all_backups {
            mask[b] = true;
        }
        mask
    }

    /// Fills `B_v` with the `alpha` largest-capacity members of each
    /// cluster, ties broken by lowest index.
    pub fn select_backups(mut self, capacities: &[u64], alpha: usize) -> std::result::Result<Clustering, TooSmallCluster> {
        let mut all = Vec::new();
        self.backups = Vec::with_capacity(self.clusters.len());
        for (i, members) in self.clusters.iter().enumerate() {
            if members.len() < alpha {
                return Err(TooSmallCluster { midpoint: self.midpoints[i], size: members.len() });
            }
            let mut ranked = members.clone();
            ranked.sort_by_key(|&v| (std::cmp::Reverse(capacities[v]), v));
            ranked.truncate(alpha);
            all.extend_from_slice(&ranked);
            self.backups.push(ranked);
        }
        all.sort_unstable();
        self.all_backups = all;
        Ok(self)
    }
}

/// Greedy monarch clustering. Midpoints are added lowest index first among
/// the vertices at hop distance exactly three from the current midpoint set;
/// each joins the tree under the earliest midpoint at distance three. Every
/// neighbour of a midpoint joins its cluster, and the remaining vertices
/// (at distance two) join the earliest midpoint at distance two.
pub fn monarch_clustering(graph: &ThresholdGraph) -> Result<Clustering> {
    let n = graph.n();
    if n == 0 || !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut midpoints = vec![0usize];
    let mut parent = vec![None];
    loop {
        let dist = graph.bfs(midpoints.iter().copied(), Some(3));
        let Some(v) = (0..n).find(|&v| dist[v] == Some(3)) else {
            break;
        };
        let from_v = graph.bfs([v], Some(3));
        let p = midpoints.iter().position(|&m| from_v[m] == Some(3)).expect("some midpoint at distance 3");
        midpoints.push(v);
        parent.push(Some(p));
    }
    let from_midpoint: Vec<Vec<Option<usize>>> = midpoints.iter().map(|&m| graph.bfs([m], Some(2))).collect();
    let mut cluster_of = vec![usize::MAX; n];
    for v in 0..n {
        let near = (0..midpoints.len()).find(|&i| from_midpoint[i][v].is_some_and(|d| d <= 1));
        let idx = near.or_else(|| (0..midpoints.len()).find(|&i| from_midpoint[i][v] == Some(2)));
        cluster_of[v] = idx.ok_or_else(|| contract(format!("vertex {v} is farther than 2 from every midpoint")))?;
    }
    let mut clusters = vec![Vec::new(); midpoints.len()];
    for v in 0..n {
        clusters[cluster_of[v]].push(v);
    }
    Ok(Clustering {
        midpoints,
        parent,
        cluster_of,
        clusters,
        backups: Vec::new(),
        all_backups: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out: Vec<Vec<usize>>,
}

impl DirectedGraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, w: usize) -> bool {
        self.out[u].binary_search(&w).is_ok()
    }

    /// Closed out-neighbourhood `N_{G'}(v)`, containing `v`.
    pub fn closed_out(&self, v: usize) -> Vec<usize> {
        let mut list = self.out[v].clone();
        if let Err(pos) = list.binary_search(&v) {
            list.insert(pos, v);
        }
        list
    }

    pub fn closed_out_of_set(&self, set: &[usize]) -> BTreeSet<usize> {
        set.iter().flat_map(|&v| self.closed_out(v)).collect()
    }
}

/// `G'`: both orientations of every edge of `G`, plus an arc `(u, w)` for
/// each `w in B_v` whenever `u` is adjacent to some `t in N(v)`.
pub fn build_gprime(graph: &ThresholdGraph, clustering: &Clustering) -> DirectedGraph {
    let n = graph.n();
    let mut out: Vec<Vec<usize>> = (0..n).map(|u| graph.neighbors(u).to_vec()).collect();
    for (i, &v) in clustering.midpoints.iter().enumerate() {
        let backups = &clustering.backups[i];
        if backups.is_empty() {
            continue;
        }
        let nv = graph.closed_neighbors(v);
        let mut sources = BTreeSet::new();
        for &t in &nv {
            sources.extend(graph.neighbors(t).iter().copied());
        }
        for u in sources {
            out[u].extend(backups.iter().copied().filter(|&w| w != u));
        }
    }
    for list in &mut out {
        list.sort_unstable();
        list.dedup();
    }
    DirectedGraph { out }
}

/// Graph `G` extended with one auxiliary vertex `a_v` per midpoint, placed
/// at `v` and adjacent to all of `N(v)`, with capacity `L(m_v)`.
#[derive(Clone, Debug)]
pub struct AuxiliaryLayer {
    pub base_n: usize,
    /// `(a_v, m_v)` per cluster; `a_v = base_n + cluster index`.
    pub aux: Vec<(usize, usize)>,
    pub graph: ThresholdGraph,
    pub capacities: Vec<u64>,
    /// `delta` over the extended vertex set.
    pub cluster_of: Vec<usize>,
}

impl AuxiliaryLayer {
    pub fn is_auxiliary(&self, v: usize) -> bool {
        v >= self.base_n
    }

    pub fn aux_vertex(&self, cluster: usize) -> usize {
        self.aux[cluster].0
    }

    pub fn m_vertex(&self, cluster: usize) -> usize {
        self.aux[cluster].1
    }
}

pub fn add_auxiliary(clustering: &Clustering, graph: &ThresholdGraph, capacities: &[u64]) -> Result<AuxiliaryLayer> {
    let n = graph.n();
    let g = clustering.midpoints.len();
    let mut edges = graph.edges();
    let mut aux = Vec::with_capacity(g);
    let mut ext_caps = capacities.to_vec();
    let mut cluster_of = clustering.cluster_of.clone();
    for (i, &v) in clustering.midpoints.iter().enumerate() {
        let candidates: Vec<usize> =
            graph.closed_neighbors(v).into_iter().filter(|&u| !clustering.is_backup(u)).collect();
        let m = candidates
            .iter()
            .copied()
            .min_by_key(|&u| (std::cmp::Reverse(capacities[u]), u))
            .ok_or_else(|| contract(format!("N({v}) \\ B is empty")))?;
        let a = n + i;
        for &u in &graph.closed_neighbors(v) {
            edges.push((a, u));
        }
        aux.push((a, m));
        ext_caps.push(capacities[m]);
        cluster_of.push(i);
    }
    Ok(AuxiliaryLayer {
        base_n: n,
        aux,
        graph: ThresholdGraph::from_edges(n + g, edges),
        capacities: ext_caps,
        cluster_of,
    })
}

/// Whether `set` splits into groups of at most `alpha` vertices that are
/// pairwise more than `ell` hops apart. The witness is the component
/// partition of `G^ell[set]`.
pub fn is_alpha_ell_independent(
    set: &[usize],
    alpha: usize,
    ell: usize,
    graph: &ThresholdGraph,
) -> (bool, Vec<Vec<usize>>) {
    let mut members: Vec<usize> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let near: Vec<Vec<Option<usize>>> = members.iter().map(|&v| graph.bfs([v], Some(ell))).collect();
    let mut group = vec![usize::MAX; members.len()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for start in 0..members.len() {
        if group[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        group[start] = id;
        let mut stack = vec![start];
        let mut part = Vec::new();
        while let Some(i) = stack.pop() {
            part.push(members[i]);
            for j in 0..members.len() {
                if group[j] == usize::MAX && near[i][members[j]].is_some() {
                    group[j] = id;
                    stack.push(j);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    let ok = parts.iter().all(|p| p.len() <= alpha);
    (ok, parts)
}

/// Greedy lowest-index scan keeping vertices at hop distance at least 7
/// from everything kept so far.
pub fn maximal_7_independent(graph: &ThresholdGraph) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for v in 0..graph.n() {
        let near = graph.bfs([v], Some(6));
        if chosen.iter().all(|&a| near[a].is_none()) {
            chosen.push(v);
        }
    }
    chosen
}
