//! Integral distance-2 transfers on trees whose internal nodes are fully
//! open, found by a search over candidate supports and accepted only when
//! the transfer check passes.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{contract, Error, Result};
use crate::graph::ThresholdGraph;
use crate::numeric::{int, Rational};
use crate::rounding::transfer::{check_transfer_by_flow, TransferProblem};

/// Upper bound on candidate supports examined by one search.
pub const SEARCH_BUDGET: u64 = 2_000_000;

/// Tries every `choose`-subset of `candidates` (in the given order) on top
/// of `fixed` and returns the first one accepted by `accept`.
pub(crate) fn search_supports(
    fixed: &[usize],
    candidates: &[usize],
    choose: usize,
    mut accept: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<Option<Vec<usize>>> {
    if choose > candidates.len() {
        return Ok(None);
    }
    let mut examined = 0u64;
    for pick in candidates.iter().copied().combinations(choose) {
        examined += 1;
        if examined > SEARCH_BUDGET {
            return Err(Error::SizeLimit(format!("more than {SEARCH_BUDGET} candidate supports")));
        }
        let mut support: Vec<usize> = fixed.iter().copied().chain(pick).collect();
        support.sort_unstable();
        if accept(&support)? {
            return Ok(Some(support));
        }
    }
    Ok(None)
}

/// Orders vertices by decreasing `L_v y_v`, then decreasing `y_v`, then index.
pub(crate) fn by_weight(vertices: &mut [usize], y: &[Rational], caps: &[u64]) {
    vertices.sort_by(|&a, &b| {
        let wa = &y[a] * int(caps[a] as i64);
        let wb = &y[b] * int(caps[b] as i64);
        wb.cmp(&wa).then_with(|| y[b].cmp(&y[a])).then(a.cmp(&b))
    });
}

/// Integral `tree`-restricted distance-2 transfer of `y` over the tree's
/// node set `nodes`. Returns the new vector (equal to `y` off `nodes`).
pub fn tree_transfer(
    tree: &ThresholdGraph,
    nodes: &[usize],
    y: &[Rational],
    caps: &[u64],
    protected: &[bool],
) -> Result<Vec<Rational>> {
    let total: Rational = nodes.iter().map(|&v| y[v].clone()).sum();
    if !total.is_integer() {
        return Err(contract("opening on the tree is not integral"));
    }
    if nodes.iter().any(|&v| protected[v]) {
        return Err(contract("tree contains a protected vertex"));
    }
    let total = total.to_integer().try_into().map_err(|_| contract("tree opening out of range"))?;
    let mut in_tree = vec![false; y.len()];
    for &v in nodes {
        in_tree[v] = true;
    }
    let internal: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| tree.neighbors(v).iter().filter(|&&w| in_tree[w]).count() >= 2)
        .collect();
    if internal.iter().any(|&v| !y[v].is_one()) {
        return Err(contract("an internal tree node is not fully open"));
    }
    let build = |support: &[usize]| -> Vec<Rational> {
        let mut out = y.to_vec();
        for &v in nodes {
            out[v] = Rational::zero();
        }
        for &v in support {
            out[v] = Rational::one();
        }
        out
    };
    let accept = |support: &[usize]| -> Result<bool> {
        let y_new = build(support);
        let problem = TransferProblem {
            y,
            y_new: &y_new,
            host: tree,
            domain: nodes,
            radius: 2,
            protected,
            capacities: caps,
        };
        Ok(check_transfer_by_flow(&problem)?.holds())
    };
    // Keep every fully open node first; fall back to keeping only the
    // internal ones.
    let open: Vec<usize> = nodes.iter().copied().filter(|&v| y[v].is_one()).collect();
    for fixed in [open, internal] {
        if fixed.len() > total {
            continue;
        }
        let mut candidates: Vec<usize> = nodes.iter().copied().filter(|v| !fixed.contains(v)).collect();
        by_weight(&mut candidates, y, caps);
        if let Some(support) = search_supports(&fixed, &candidates, total - fixed.len(), accept)? {
            return Ok(build(&support));
        }
    }
    Err(contract("no integral distance-2 transfer exists on the tree"))
}
