//! Static rows and min-cut separation for the two Hall-type relaxations:
//! the backup-pinned program over `G'` (scenarios `F` inside `B`) and the
//! `{0, L}` program whose failure term collapses to `alpha * L`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::clustering::{Clustering, DirectedGraph};
use crate::error::{Error, Result};
use crate::flow::{max_flow, Capacity, FlowNetwork};
use crate::graph::{zero_l_level, ThresholdGraph};
use crate::lp::simplex::{LinearProgram, Relation, Row, RowKind};
use crate::numeric::{common_denominator, int, to_u64, Rational};

/// A violated Hall row: `|set| > sum over allowed(set) \ failed of y_u L_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub set: Vec<usize>,
    pub failed: Vec<usize>,
    /// `sum - |set|` (minus `alpha L` for the `{0, L}` program); negative.
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Ok,
    Violated(Violation),
}

/// Minimum over client sets `U` of `sum_{u in allowed(U)} y_u caps_u - |U|`,
/// with `forced` (if any) required to lie in `U`. Returns the value and a
/// minimising `U` (the source side of a minimum cut).
pub fn hall_minimum(
    y: &[Rational],
    caps: &[u64],
    allowed: &[Vec<usize>],
    forced: Option<usize>,
) -> Result<(Rational, Vec<usize>)> {
    let clients = allowed.len();
    let centers = y.len();
    let weights: Vec<Rational> = y.iter().zip(caps).map(|(v, &c)| v * int(c as i64)).collect();
    let scale = common_denominator(&weights);
    let scale_u64 = to_u64(&scale, "separation network")?;
    let (s, t) = (0, 1);
    let mut net = FlowNetwork::new(2 + clients + centers, s, t);
    for (v, list) in allowed.iter().enumerate() {
        let cap = if forced == Some(v) { Capacity::Infinite } else { Capacity::Finite(scale_u64) };
        net.add_arc(s, 2 + v, cap);
        for &u in list {
            net.add_arc(2 + v, 2 + clients + u, Capacity::Infinite);
        }
    }
    for (u, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let scaled = (w * Rational::from_integer(scale.clone())).to_integer();
        net.add_arc(2 + clients + u, t, Capacity::Finite(to_u64(&scaled, "separation network")?));
    }
    let result = max_flow(&net);
    let Capacity::Finite(cut) = result.value else {
        return Err(Error::ContractViolation("separation network has an infinite path".into()));
    };
    let side = result.min_cut.expect("finite flow has a cut");
    let set: Vec<usize> = (0..clients).filter(|&v| side[2 + v]).collect();
    let value = Rational::new(BigInt::from(cut), scale) - int(clients as i64);
    Ok((value, set))
}

/// `sum_{u in support} caps_u y_u >= rhs` as a row over `n` variables.
pub fn hall_row(n: usize, support: impl IntoIterator<Item = usize>, caps: &[u64], rhs: Rational) -> Row {
    let mut coeffs = vec![Rational::zero(); n];
    for u in support {
        coeffs[u] = int(caps[u] as i64);
    }
    Row::new(coeffs, Relation::Ge, rhs, RowKind::HallCut)
}

fn closed_out_minus(gprime: &DirectedGraph, failed: &[usize]) -> Vec<Vec<usize>> {
    (0..gprime.n())
        .map(|v| gprime.closed_out(v).into_iter().filter(|u| !failed.contains(u)).collect())
        .collect()
}

/// Rows of the backup-pinned program that do not depend on `U`:
/// `sum y = k`, `y <= 1`, `y_u = 1` on `B`, and one unit of non-backup
/// opening around every midpoint.
pub fn lpka_static_rows(graph: &ThresholdGraph, clustering: &Clustering, k: usize) -> LinearProgram {
    let n = graph.n();
    let mut lp = LinearProgram::new(n);
    lp.push(Row::new(vec![Rational::one(); n], Relation::Eq, int(k as i64), RowKind::Total));
    for u in 0..n {
        lp.push(unit_row(n, u, Relation::Le, RowKind::UpperBound));
    }
    for &b in &clustering.all_backups {
        lp.push(unit_row(n, b, Relation::Eq, RowKind::Pinned));
    }
    for &v in &clustering.midpoints {
        let mut coeffs = vec![Rational::zero(); n];
        for u in graph.closed_neighbors(v) {
            if !clustering.is_backup(u) {
                coeffs[u] = Rational::one();
            }
        }
        lp.push(Row::new(coeffs, Relation::Ge, Rational::one(), RowKind::Midpoint));
    }
    lp
}

fn unit_row(n: usize, u: usize, relation: Relation, kind: RowKind) -> Row {
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[u] = Rational::one();
    Row::new(coeffs, relation, Rational::one(), kind)
}

/// Minimum Hall slack for one scenario `F` of the backup-pinned program.
pub fn lpka_scenario_minimum(
    y: &[Rational],
    gprime: &DirectedGraph,
    caps: &[u64],
    failed: &[usize],
) -> Result<(Rational, Vec<usize>)> {
    hall_minimum(y, caps, &closed_out_minus(gprime, failed), None)
}

/// Scans `F subseteq B`, `|F| = alpha`, in lexicographic order and reports
/// the first scenario with a negative Hall slack.
pub fn separate_lpka(
    y: &[Rational],
    gprime: &DirectedGraph,
    clustering: &Clustering,
    caps: &[u64],
    alpha: usize,
) -> Result<Separation> {
    for failed in clustering.all_backups.iter().copied().combinations(alpha) {
        let (value, set) = lpka_scenario_minimum(y, gprime, caps, &failed)?;
        if value < Rational::zero() {
            return Ok(Separation::Violated(Violation { set, failed, value }));
        }
    }
    Ok(Separation::Ok)
}

/// Smallest Hall slack over all scenarios `F subseteq B`, `|F| = alpha`,
/// with the lexicographically first minimising scenario.
pub fn lpka_minimum(
    y: &[Rational],
    gprime: &DirectedGraph,
    clustering: &Clustering,
    caps: &[u64],
    alpha: usize,
) -> Result<Violation> {
    let mut best: Option<Violation> = None;
    for failed in clustering.all_backups.iter().copied().combinations(alpha) {
        let (value, set) = lpka_scenario_minimum(y, gprime, caps, &failed)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Violation { set, failed, value });
        }
    }
    Ok(best.expect("at least one scenario"))
}

/// Smallest slack of the unmodified Hall rows
/// `|U| <= sum_{u in N_G(U) \ F} y_u L_u` over all `F subseteq V`,
/// `|F| = alpha`. These are the rows of the plain relaxation whose
/// integrality gap motivates pinning backups.
pub fn relaxed_ilp_minimum(y: &[Rational], graph: &ThresholdGraph, caps: &[u64], alpha: usize) -> Result<Violation> {
    let n = graph.n();
    let mut best: Option<Violation> = None;
    for failed in (0..n).combinations(alpha) {
        let allowed: Vec<Vec<usize>> = (0..n)
            .map(|v| graph.closed_neighbors(v).into_iter().filter(|u| !failed.contains(u)).collect())
            .collect();
        let (value, set) = hall_minimum(y, caps, &allowed, None)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Violation { set, failed, value });
        }
    }
    Ok(best.expect("at least one scenario"))
}

fn l_neighborhoods(graph: &ThresholdGraph, caps: &[u64]) -> Vec<Vec<usize>> {
    (0..graph.n())
        .map(|v| graph.closed_neighbors(v).into_iter().filter(|&u| caps[u] > 0).collect())
        .collect()
}

/// Rows of the `{0, L}` program that do not depend on `U`: `sum y = k`,
/// `y <= 1`, and one unit of opening on the `L`-vertices around every vertex.
pub fn lpu_static_rows(graph: &ThresholdGraph, caps: &[u64], k: usize) -> Result<LinearProgram> {
    zero_l_level(caps)?;
    let n = graph.n();
    let mut lp = LinearProgram::new(n);
    lp.push(Row::new(vec![Rational::one(); n], Relation::Eq, int(k as i64), RowKind::Total));
    for u in 0..n {
        lp.push(unit_row(n, u, Relation::Le, RowKind::UpperBound));
    }
    for list in l_neighborhoods(graph, caps) {
        let mut coeffs = vec![Rational::zero(); n];
        for u in list {
            coeffs[u] = Rational::one();
        }
        lp.push(Row::new(coeffs, Relation::Ge, Rational::one(), RowKind::Coverage));
    }
    Ok(lp)
}

/// `min over nonempty U` of `sum_{u in N(U)^L} y_u L - |U| - alpha L`,
/// computed with one min cut per vertex forced into `U`.
pub fn lpu_minimum(y: &[Rational], graph: &ThresholdGraph, caps: &[u64], alpha: usize) -> Result<Violation> {
    let level = zero_l_level(caps)?.unwrap_or(0);
    let allowed = l_neighborhoods(graph, caps);
    let penalty = int((alpha as u64 * level) as i64);
    let mut best: Option<Violation> = None;
    for v in 0..graph.n() {
        let (value, set) = hall_minimum(y, caps, &allowed, Some(v))?;
        let value = value - &penalty;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Violation { set, failed: Vec::new(), value });
        }
    }
    best.ok_or_else(|| Error::InvalidInstance("empty graph".into()))
}

pub fn separate_lpu(y: &[Rational], graph: &ThresholdGraph, caps: &[u64], alpha: usize) -> Result<Separation> {
    let worst = lpu_minimum(y, graph, caps, alpha)?;
    if worst.value < Rational::zero() {
        Ok(Separation::Violated(worst))
    } else {
        Ok(Separation::Ok)
    }
}

/// The row `sum_{u in N(U)^L} L y_u >= |U| + alpha L` for a violated `U`.
pub fn lpu_row(graph: &ThresholdGraph, caps: &[u64], alpha: usize, set: &[usize]) -> Result<Row> {
    let level = zero_l_level(caps)?.unwrap_or(0);
    let support = graph.neighborhood(set.iter().copied(), 1).into_iter().filter(|&u| caps[u] > 0);
    Ok(hall_row(graph.n(), support, caps, int((set.len() as u64 + alpha as u64 * level) as i64)))
}

/// The row `sum_{u in N_{G'}(U) \ F} L_u y_u >= |U|` for a violated `(U, F)`.
pub fn lpka_row(gprime: &DirectedGraph, caps: &[u64], violation: &Violation) -> Row {
    let support = gprime
        .closed_out_of_set(&violation.set)
        .into_iter()
        .filter(|u| !violation.failed.contains(u));
    hall_row(gprime.n(), support, caps, int(violation.set.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::{build_gprime, monarch_clustering};
    use crate::numeric::rat;

    fn brute_lpu(y: &[Rational], graph: &ThresholdGraph, caps: &[u64], alpha: usize) -> Rational {
        let n = graph.n();
        let level = zero_l_level(caps).unwrap().unwrap_or(0);
        let mut best: Option<Rational> = None;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let nb = graph.neighborhood(set.iter().copied(), 1);
            let sum: Rational = nb.iter().filter(|&&u| caps[u] > 0).map(|&u| &y[u] * int(level as i64)).sum();
            let value = sum - int(set.len() as i64) - int((alpha as u64 * level) as i64);
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
        best.unwrap()
    }

    #[test]
    fn single_vertex_is_fine() {
        let g = ThresholdGraph::empty(1);
        let c = monarch_clustering(&g).unwrap().select_backups(&[1], 0).unwrap();
        let gp = build_gprime(&g, &c);
        assert_eq!(separate_lpka(&[int(1)], &gp, &c, &[1], 0).unwrap(), Separation::Ok);
        assert_eq!(separate_lpu(&[int(1)], &g, &[1], 0).unwrap(), Separation::Ok);
    }

    #[test]
    fn zero_opening_violates_with_everything() {
        let g = ThresholdGraph::path(4);
        let c = monarch_clustering(&g).unwrap().select_backups(&[2; 4], 0).unwrap();
        let gp = build_gprime(&g, &c);
        let y = vec![Rational::zero(); 4];
        match separate_lpka(&y, &gp, &c, &[2; 4], 0).unwrap() {
            Separation::Violated(v) => {
                assert_eq!(v.set, vec![0, 1, 2, 3]);
                assert_eq!(v.value, int(-4));
            }
            Separation::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn gap_instance_quarter_opening_is_not_lpu_feasible() {
        // Singletons already fail: 9 * (1/4) * 16 - 1 = 35 < 3 * 16.
        let n = 16;
        let edges = (0..n).flat_map(|u| (1..=4).map(move |d| (u, (u + d) % n)));
        let g = ThresholdGraph::from_edges(n, edges);
        let y = vec![rat(1, 4); n];
        let caps = vec![16; n];
        let worst = lpu_minimum(&y, &g, &caps, 3).unwrap();
        assert_eq!(worst.value, int(-13));
        assert_eq!(worst.set.len(), 1);
        assert!(matches!(separate_lpu(&y, &g, &caps, 3).unwrap(), Separation::Violated(_)));
    }

    #[test]
    fn lpu_matches_enumeration_on_a_small_case() {
        let g = ThresholdGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let caps = [3, 0, 3, 3, 0];
        let y = vec![rat(1, 2), rat(1, 3), int(1), rat(1, 6), Rational::zero()];
        for alpha in 0..3 {
            assert_eq!(lpu_minimum(&y, &g, &caps, alpha).unwrap().value, brute_lpu(&y, &g, &caps, alpha));
        }
    }

    #[test]
    fn lpu_rejects_mixed_capacities() {
        let g = ThresholdGraph::path(2);
        assert!(matches!(lpu_minimum(&[int(1), int(0)], &g, &[1, 2], 0), Err(Error::NotZeroL(_))));
    }
}
