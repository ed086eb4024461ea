//! Checking that `y'` is a host-restricted distance-`r` transfer of `y`:
//! mass on the host vertex set `W` is preserved, every `U subseteq W` keeps at
//! least its original capacity within `r` hops, and nothing outside `W` or
//! inside the protected set moves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::flow::{max_flow, Capacity, FlowNetwork};
use crate::graph::ThresholdGraph;
use crate::numeric::{common_denominator, int, to_u64, Rational};

/// Largest `|W \ B|` for which condition (b) is checked by enumerating `U`.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// The data a transfer is checked against.
#[derive(Clone, Copy, Debug)]
pub struct TransferProblem<'a> {
    pub y: &'a [Rational],
    pub y_new: &'a [Rational],
    /// Host graph over the whole vertex universe; only its edges inside
    /// `domain` are used.
    pub host: &'a ThresholdGraph,
    /// `W`, the host's vertex set.
    pub domain: &'a [usize],
    pub radius: usize,
    /// Membership mask of the protected set `B`.
    pub protected: &'a [bool],
    pub capacities: &'a [u64],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub mass_preserved: bool,
    pub coverage: bool,
    pub fixed_outside: bool,
    /// A `U` violating the coverage condition, when one was found.
    pub witness: Option<Vec<usize>>,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.mass_preserved && self.coverage && self.fixed_outside
    }
}

impl TransferProblem<'_> {
    fn in_domain(&self) -> Vec<bool> {
        let mut mask = vec![false; self.y.len()];
        for &v in self.domain {
            mask[v] = true;
        }
        mask
    }

    /// Vertices of `W \ B`, the only ones whose opening may move.
    fn movable(&self) -> Vec<usize> {
        self.domain.iter().copied().filter(|&v| !self.protected[v]).collect()
    }

    /// `N^r_H(v) \ B` for each movable `v`, restricted to `W`.
    fn reach(&self, movable: &[usize]) -> Vec<Vec<usize>> {
        let inside = self.in_domain();
        let host = self.host.induced_on_mask(&inside);
        movable
            .iter()
            .map(|&v| {
                host.bfs([v], Some(self.radius))
                    .into_iter()
                    .enumerate()
                    .filter(|&(w, d)| d.is_some() && inside[w] && !self.protected[w])
                    .map(|(w, _)| w)
                    .collect()
            })
            .collect()
    }

    fn weight(&self, v: usize, values: &[Rational]) -> Rational {
        &values[v] * int(self.capacities[v] as i64)
    }
}

/// Condition (b) by max flow: supplies `L_v y_v` on `W \ B` must route along
/// arcs of hop length at most `r` into sinks of capacity `L_w y'_w`.
pub fn coverage_by_flow(p: &TransferProblem) -> Result<(bool, Option<Vec<usize>>)> {
    let movable = p.movable();
    let reach = p.reach(&movable);
    let supply: Vec<Rational> = movable.iter().map(|&v| p.weight(v, p.y)).collect();
    let demand: Vec<Rational> = movable.iter().map(|&v| p.weight(v, p.y_new)).collect();
    let scale = common_denominator(supply.iter().chain(&demand));
    let scaled = |r: &Rational| -> Result<u64> {
        to_u64(&(r * Rational::from_integer(scale.clone())).to_integer(), "transfer network")
    };
    let m = movable.len();
    let mut position = vec![usize::MAX; p.y.len()];
    for (i, &v) in movable.iter().enumerate() {
        position[v] = i;
    }
    let mut net = FlowNetwork::new(2 + 2 * m, 0, 1);
    let mut total = 0u64;
    for i in 0..m {
        let s = scaled(&supply[i])?;
        total = total.checked_add(s).ok_or(crate::error::Error::Overflow("transfer network"))?;
        if s > 0 {
            net.add_arc(0, 2 + i, Capacity::Finite(s));
        }
        for &w in &reach[i] {
            net.add_arc(2 + i, 2 + m + position[w], Capacity::Infinite);
        }
        let d = scaled(&demand[i])?;
        if d > 0 {
            net.add_arc(2 + m + i, 1, Capacity::Finite(d));
        }
    }
    let result = max_flow(&net);
    match result.value {
        Capacity::Finite(v) if v == total => Ok((true, None)),
        Capacity::Finite(_) => {
            let side = result.min_cut.expect("finite flow has a cut");
            let witness = (0..m).filter(|&i| side[2 + i]).map(|i| movable[i]).collect();
            Ok((false, Some(witness)))
        }
        Capacity::Infinite => unreachable!("source arcs are finite"),
    }
}

/// Condition (b) by enumerating every `U subseteq W \ B`.
pub fn coverage_by_enumeration(p: &TransferProblem) -> (bool, Option<Vec<usize>>) {
    let movable = p.movable();
    let reach = p.reach(&movable);
    let m = movable.len();
    assert!(m < 64, "enumeration limited to fewer than 64 movable vertices");
    let mut position = vec![usize::MAX; p.y.len()];
    for (i, &v) in movable.iter().enumerate() {
        position[v] = i;
    }
    let reach_masks: Vec<u64> = reach
        .iter()
        .map(|list| list.iter().fold(0u64, |acc, &w| acc | 1 << position[w]))
        .collect();
    let before: Vec<Rational> = movable.iter().map(|&v| p.weight(v, p.y)).collect();
    let after: Vec<Rational> = movable.iter().map(|&v| p.weight(v, p.y_new)).collect();
    for mask in 1u64..(1u64 << m) {
        let mut covered = 0u64;
        let mut need = Rational::zero();
        for i in 0..m {
            if mask >> i & 1 == 1 {
                covered |= reach_masks[i];
                need += &before[i];
            }
        }
        let have: Rational = (0..m).filter(|&i| covered >> i & 1 == 1).map(|i| &after[i]).sum();
        if have < need {
            let witness = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| movable[i]).collect();
            return (false, Some(witness));
        }
    }
    (true, None)
}

pub fn check_transfer(p: &TransferProblem) -> Result<TransferReport> {
    check_with(p, p.movable().len() <= EXHAUSTIVE_LIMIT)
}

/// Like [`check_transfer`] but always decides coverage by max flow.
pub fn check_transfer_by_flow(p: &TransferProblem) -> Result<TransferReport> {
    check_with(p, false)
}

fn check_with(p: &TransferProblem, enumerate: bool) -> Result<TransferReport> {
    let inside = p.in_domain();
    let sum_over = |values: &[Rational]| -> Rational { p.domain.iter().map(|&v| values[v].clone()).sum() };
    let mass_preserved = sum_over(p.y) == sum_over(p.y_new);
    let fixed_outside = (0..p.y.len()).all(|v| (inside[v] && !p.protected[v]) || p.y[v] == p.y_new[v]);
    let (coverage, witness) = if enumerate {
        coverage_by_enumeration(p)
    } else {
        coverage_by_flow(p)?
    };
    Ok(TransferReport { mass_preserved, coverage, fixed_outside, witness })
}

pub fn verify_transfer(p: &TransferProblem) -> Result<bool> {
    Ok(check_transfer(p)?.holds())
}

/// Characteristic vector of `set` over `n` vertices.
pub fn indicator(n: usize, set: &[usize]) -> Vec<Rational> {
    let mut y = vec![Rational::zero(); n];
    for &v in set {
        y[v] = Rational::from_integer(BigInt::from(1));
    }
    y
}
