#![allow(dead_code)]

use ftkcenter_core::ThresholdGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs hop distances by Floyd-Warshall over the adjacency test, kept
/// independent of the library's BFS.
pub fn floyd(graph: &ThresholdGraph) -> Vec<Vec<Option<usize>>> {
    let n = graph.n();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for v in 0..n {
            if u != v && graph.has_edge(u, v) {
                d[u][v] = Some(1);
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if let (Some(a), Some(b)) = (d[u][w], d[w][v]) {
                    if d[u][v].is_none_or(|c| a + b < c) {
                        d[u][v] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

pub fn within(d: &[Vec<Option<usize>>], u: usize, v: usize, r: usize) -> bool {
    d[u][v].is_some_and(|x| x <= r)
}

/// Whether `set` splits into groups of at most `alpha` vertices with every
/// pair from different groups more than `ell` apart: the groups are forced
/// to be the components of the "within ell" relation.
pub fn alpha_ell_independent(d: &[Vec<Option<usize>>], set: &[usize], alpha: usize, ell: usize) -> bool {
    let mut group: Vec<usize> = (0..set.len()).collect();
    fn find(g: &mut Vec<usize>, i: usize) -> usize {
        if g[i] != i {
            let r = find(g, g[i]);
            g[i] = r;
        }
        g[i]
    }
    for i in 0..set.len() {
        for j in 0..i {
            if within(d, set[i], set[j], ell) {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a] = b;
            }
        }
    }
    let mut sizes = std::collections::HashMap::new();
    for i in 0..set.len() {
        *sizes.entry(find(&mut group, i)).or_insert(0usize) += 1;
    }
    sizes.values().all(|&s| s <= alpha)
}
