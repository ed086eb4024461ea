//! Acceptance run: one PASS/FAIL line per criterion. Every check here is
//! exact (rational or integer comparisons); no tolerances are involved.

mod common;

use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use common::{alpha_ell_independent, floyd, rng, within};
use ftkcenter_core::bottleneck::{solve_components, Outcome};
use ftkcenter_core::clustering::{build_gprime, maximal_7_independent, monarch_clustering};
use ftkcenter_core::conservative::{algorithm2, build_backup_loop, conservative_reassign_flow};
use ftkcenter_core::generate::{random_connected_graph, random_points_instance, random_zero_l};
use ftkcenter_core::lp::separation::{lpka_minimum, lpu_minimum, relaxed_ilp_minimum};
use ftkcenter_core::lp::{separate_lpka, separate_lpu, solve_lpka, solve_lpu, CuttingPlaneOutcome, Separation};
use ftkcenter_core::numeric::rat;
use ftkcenter_core::oracle::{
    exact_distance1_conservative, exact_distance1_ft, exact_opt_conservative, exact_opt_ft, gap_instance,
    OracleLimits,
};
use ftkcenter_core::pipeline::{ExactFt, FtGeneral};
use ftkcenter_core::report::{solve_instance, Algorithm, SolveOptions, SolveResult};
use ftkcenter_core::rounding::transfer::{coverage_by_enumeration, coverage_by_flow};
use ftkcenter_core::rounding::{indicator, round_general, round_uniform, verify_transfer, TransferProblem};
use ftkcenter_core::{Length, MetricInstance, Rational, ThresholdGraph, Variant};

type Check = std::result::Result<String, String>;

/// Instances per algorithm for the factor criterion.
const FACTOR_INSTANCES: usize = 200;

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 factor bounds against the exact oracle", factor_bounds),
        ("2 integrality gap instance s=4", gap_reproduction),
        ("3 transfer certificates", transfer_certificates),
        ("4 separation against enumeration", separation_equivalence),
        ("5 conservative reassignment flow", conservative_flow),
        ("6 structural invariants", structural_invariants),
        ("7 residual feasibility after zeroing backups", residual_feasibility),
        ("8 bottleneck soundness", bottleneck_soundness),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_instance(r: &mut impl Rng, alg: Algorithm, index: usize) -> MetricInstance {
    let n = r.gen_range(4..=9);
    let k = r.gen_range(2..=4.min(n));
    let max_alpha = if alg == Algorithm::FtZeroL { k - 1 } else { 2.min(k - 1) };
    let alpha = r.gen_range(0..=max_alpha);
    let variant = if alg.is_conservative() { Variant::Conservative } else { Variant::FaultTolerant };
    let name = format!("{}-{index}", alg.name());
    let mut inst = random_points_instance(r, name, n, k, alpha, &[1], variant, 10).unwrap();
    let caps = if alg.needs_zero_l() {
        let level = r.gen_range(2..=n as u64);
        random_zero_l(r, n, level, 0.7)
    } else {
        (0..n).map(|_| *[0, 1, 2, 3, 5, n as u64].choose(r).unwrap()).collect()
    };
    inst.capacities = caps;
    inst
}

fn oracle_opt(inst: &MetricInstance, conservative: bool) -> Option<Length> {
    if conservative {
        exact_opt_conservative(inst, OracleLimits::CONSERVATIVE).unwrap().map(|e| e.opt)
    } else {
        exact_opt_ft(inst, OracleLimits::FAULT_TOLERANT).unwrap().map(|e| e.opt)
    }
}

/// Solves and checks `verified_radius <= factor * opt` and `tau_star <= opt`.
fn check_factor(inst: &MetricInstance, opts: &SolveOptions, alg: Algorithm, factor: u64, opt: &Length) -> std::result::Result<(), String> {
    let label = format!("{} (exact inner: {})", inst.name, opts.exact_inner);
    let result = solve_instance(inst, alg, opts).map_err(|e| format!("{label}: {e}"))?;
    let SolveResult::Solved(report) = result else {
        return Err(format!("{label}: certified infeasible although OPT = {opt}"));
    };
    ensure(report.tau_star <= *opt, || format!("{label}: tau* {} > OPT {opt}", report.tau_star))?;
    let radius = report.verified_radius.ok_or_else(|| format!("{label}: output does not verify at its bound"))?;
    ensure(radius <= opt.times(factor), || format!("{label}: radius {radius} > {factor} * {opt}"))
}

fn factor_bounds() -> Check {
    let mut r = rng(1);
    let mut summary = Vec::new();
    for alg in Algorithm::ALL {
        let mut solved = 0;
        let mut index = 0;
        while solved < FACTOR_INSTANCES {
            index += 1;
            let inst = random_instance(&mut r, alg, index);
            let Some(opt) = oracle_opt(&inst, alg.is_conservative()) else {
                continue;
            };
            solved += 1;
            let a = inst.alpha as u64;
            match alg {
                Algorithm::ConsZeroL => check_factor(&inst, &SolveOptions::default(), alg, 7, &opt)?,
                Algorithm::FtZeroL => check_factor(&inst, &SolveOptions::default(), alg, 6, &opt)?,
                Algorithm::FtGeneral => check_factor(&inst, &SolveOptions::default(), alg, 10, &opt)?,
                Algorithm::ConsGeneral => {
                    check_factor(&inst, &SolveOptions::default(), alg, 9 + 6 * a, &opt)?;
                    let exact = SolveOptions { exact_inner: true, ..SolveOptions::default() };
                    check_factor(&inst, &exact, alg, 1 + 6 * a, &opt)?;
                }
            }
        }
        summary.push(format!("{}: {solved}/{index}", alg.name()));
    }
    Ok(format!("feasible/generated per algorithm: {}", summary.join(", ")))
}

fn gap_reproduction() -> Check {
    let inst = gap_instance(4).map_err(|e| e.to_string())?;
    let graph = inst.threshold_graph(&Length::from_integer(1));
    let degrees_ok = (0..16).all(|v| graph.neighbors(v).len() == 8);
    ensure(degrees_ok, || "some vertex does not have 8 neighbours".into())?;
    let y = vec![rat(1, 4); 16];
    let worst = relaxed_ilp_minimum(&y, &graph, &inst.capacities, inst.alpha).map_err(|e| e.to_string())?;
    ensure(worst.value >= Rational::zero(), || format!("y = 1/4 violates a row: {worst:?}"))?;
    let limits = OracleLimits::FAULT_TOLERANT.with_max_n(16);
    let opt = exact_opt_ft(&inst, limits).map_err(|e| e.to_string())?.ok_or("no solution at all")?;
    ensure(opt.opt == Length::from_integer(2), || format!("OPT = {}, expected 2", opt.opt))?;
    Ok(format!("relaxed rows slack {} at radius 1, OPT = {}", worst.value, opt.opt))
}

fn transfer_certificates() -> Check {
    let mut r = rng(3);
    let mut general_runs = 0;
    while general_runs < 60 {
        let n = r.gen_range(4..=10);
        let graph = random_connected_graph(&mut r, n, 0.15);
        let alpha = r.gen_range(0..=2);
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(1..=4)).collect();
        let Ok(clustering) = monarch_clustering(&graph).unwrap().select_backups(&caps, alpha) else {
            continue;
        };
        let gprime = build_gprime(&graph, &clustering);
        let Some((k, y)) = (1..=n).find_map(|k| {
            match solve_lpka(&graph, &clustering, &gprime, &caps, k, alpha, 3).unwrap() {
                CuttingPlaneOutcome::Feasible { y, .. } => Some((k, y)),
                CuttingPlaneOutcome::InfeasibleAtTau => None,
            }
        }) else {
            continue;
        };
        let rounding = round_general(&y, &graph, &clustering, &caps).map_err(|e| format!("round_general: {e}"))?;
        ensure(rounding.centers.len() == k, || "rounding does not open k centers".into())?;
        let y3 = indicator(n, &rounding.centers);
        let all: Vec<usize> = (0..n).collect();
        let problem = TransferProblem {
            y: &y,
            y_new: &y3,
            host: &graph,
            domain: &all,
            radius: 8,
            protected: &clustering.backup_mask(n),
            capacities: &caps,
        };
        ensure(verify_transfer(&problem).unwrap(), || format!("round_general output on {:?} is no transfer", graph.edges()))?;
        general_runs += 1;
    }
    let mut uniform_runs = 0;
    while uniform_runs < 60 {
        let n = r.gen_range(3..=10);
        let base = random_connected_graph(&mut r, n, 0.2);
        let level = r.gen_range(1..=4);
        let caps = random_zero_l(&mut r, n, level, 0.6);
        let graph = base.strip_zero_zero_edges(&caps).unwrap();
        if !graph.is_connected() {
            continue;
        }
        let alpha = r.gen_range(0..=2);
        let Some((k, y)) = (alpha + 1..=n).find_map(|k| match solve_lpu(&graph, &caps, k, alpha).unwrap() {
            CuttingPlaneOutcome::Feasible { y, .. } => Some((k, y)),
            CuttingPlaneOutcome::InfeasibleAtTau => None,
        }) else {
            continue;
        };
        let centers = round_uniform(&y, &graph, &caps, k).map_err(|e| format!("round_uniform: {e}"))?;
        let y_new = indicator(n, &centers);
        let all: Vec<usize> = (0..n).collect();
        let none = vec![false; n];
        let problem = TransferProblem {
            y: &y,
            y_new: &y_new,
            host: &graph,
            domain: &all,
            radius: 5,
            protected: &none,
            capacities: &caps,
        };
        ensure(verify_transfer(&problem).unwrap(), || "round_uniform output is no transfer".into())?;
        uniform_runs += 1;
    }
    let quarters = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    let (mut agree, mut positive) = (0, 0);
    for _ in 0..1000 {
        let n = r.gen_range(2..=12);
        let graph = random_connected_graph(&mut r, n, 0.1);
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(0..=3)).collect();
        let y: Vec<Rational> = (0..n).map(|_| quarters.choose(&mut r).unwrap().clone()).collect();
        let y_new: Vec<Rational> = (0..n).map(|_| if r.gen_bool(0.5) { Rational::one() } else { Rational::zero() }).collect();
        let protected: Vec<bool> = (0..n).map(|_| r.gen_bool(0.15)).collect();
        let all: Vec<usize> = (0..n).collect();
        let problem = TransferProblem {
            y: &y,
            y_new: &y_new,
            host: &graph,
            domain: &all,
            radius: r.gen_range(1..=3),
            protected: &protected,
            capacities: &caps,
        };
        let by_flow = coverage_by_flow(&problem).unwrap().0;
        let by_enumeration = coverage_by_enumeration(&problem).0;
        ensure(by_flow == by_enumeration, || format!("coverage disagrees on y={y:?}, y'={y_new:?}"))?;
        agree += 1;
        positive += by_flow as usize;
    }
    Ok(format!(
        "{general_runs} general roundings at radius 8, {uniform_runs} uniform at radius 5, {agree}/1000 coverage pairs agree ({positive} covered)"
    ))
}

/// Closed out-neighbourhood of `set` in `G'`, straight from its definition.
fn gprime_reach(graph: &ThresholdGraph, clustering: &ftkcenter_core::clustering::Clustering, set: &[usize]) -> Vec<usize> {
    let n = graph.n();
    let mut hit = vec![false; n];
    for &u in set {
        hit[u] = true;
        for w in 0..n {
            if graph.has_edge(u, w) {
                hit[w] = true;
            }
        }
        for (i, &v) in clustering.midpoints.iter().enumerate() {
            let touches = (0..n).any(|t| (t == v || graph.has_edge(v, t)) && graph.has_edge(u, t));
            if touches {
                for &b in &clustering.backups[i] {
                    hit[b] = true;
                }
            }
        }
    }
    (0..n).filter(|&w| hit[w]).collect()
}

fn separation_equivalence() -> Check {
    let mut r = rng(4);
    let sixths: Vec<Rational> = (0..=6).map(|i| rat(i, 6)).collect();
    let (mut lpka_cases, mut lpu_cases, mut violated) = (0, 0, 0);
    while lpka_cases < 100 {
        let n = r.gen_range(2..=7);
        let graph = random_connected_graph(&mut r, n, 0.25);
        let alpha = r.gen_range(0..=2);
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(0..=4)).collect();
        let Ok(clustering) = monarch_clustering(&graph).unwrap().select_backups(&caps, alpha) else {
            continue;
        };
        let gprime = build_gprime(&graph, &clustering);
        let y: Vec<Rational> = (0..n).map(|_| sixths.choose(&mut r).unwrap().clone()).collect();
        let mut brute: Option<Rational> = None;
        for failed in clustering.all_backups.iter().copied().combinations(alpha) {
            for mask in 0u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let value: Rational = gprime_reach(&graph, &clustering, &set)
                    .into_iter()
                    .filter(|w| !failed.contains(w))
                    .map(|w| &y[w] * Rational::from_integer((caps[w] as i64).into()))
                    .sum::<Rational>()
                    - Rational::from_integer((set.len() as i64).into());
                if brute.as_ref().is_none_or(|b| value < *b) {
                    brute = Some(value);
                }
            }
        }
        let brute = brute.unwrap();
        let min = lpka_minimum(&y, &gprime, &clustering, &caps, alpha).unwrap();
        ensure(min.value == brute, || format!("lpka minimum {} != enumeration {brute}", min.value))?;
        let verdict = separate_lpka(&y, &gprime, &clustering, &caps, alpha).unwrap();
        ensure(matches!(verdict, Separation::Violated(_)) == (brute < Rational::zero()), || "lpka verdict differs".into())?;
        violated += (brute < Rational::zero()) as usize;
        lpka_cases += 1;
    }
    while lpu_cases < 100 {
        let n = r.gen_range(1..=7);
        let graph = random_connected_graph(&mut r, n, 0.25);
        let alpha = r.gen_range(0..=2);
        let level = r.gen_range(1..=4);
        let caps = random_zero_l(&mut r, n, level, 0.6);
        let y: Vec<Rational> = (0..n).map(|_| sixths.choose(&mut r).unwrap().clone()).collect();
        let mut brute: Option<Rational> = None;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let covered: Rational = (0..n)
                .filter(|&w| caps[w] > 0 && set.iter().any(|&u| u == w || graph.has_edge(u, w)))
                .map(|w| &y[w] * Rational::from_integer((level as i64).into()))
                .sum();
            let value = covered - Rational::from_integer(((set.len() as u64 + alpha as u64 * level) as i64).into());
            if brute.as_ref().is_none_or(|b| value < *b) {
                brute = Some(value);
            }
        }
        let brute = brute.unwrap();
        let min = lpu_minimum(&y, &graph, &caps, alpha).unwrap();
        ensure(min.value == brute, || format!("lpu minimum {} != enumeration {brute}", min.value))?;
        let verdict = separate_lpu(&y, &graph, &caps, alpha).unwrap();
        ensure(matches!(verdict, Separation::Violated(_)) == (brute < Rational::zero()), || "lpu verdict differs".into())?;
        lpu_cases += 1;
    }
    Ok(format!("{lpka_cases} backup-pinned cases ({violated} violated), {lpu_cases} {{0, L}} cases, exact agreement"))
}

fn conservative_flow() -> Check {
    let mut r = rng(5);
    let (mut runs, mut scenarios) = (0, 0);
    let mut attempts = 0;
    while runs < 80 && attempts < 5000 {
        attempts += 1;
        let n = r.gen_range(3..=9);
        let graph = random_connected_graph(&mut r, n, 0.2);
        let alpha = r.gen_range(1..=2);
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(1..=5)).collect();
        let k = r.gen_range(alpha + 1..=n);
        let exact = r.gen_bool(0.5);
        let (inner, beta): (Box<dyn ftkcenter_core::bottleneck::UnweightedSolver>, usize) =
            if exact { (Box::new(ExactFt::default()), 1) } else { (Box::new(FtGeneral { alpha_bound: 3 }), 9) };
        let Outcome::Solved(sol) = algorithm2(&graph, &caps, k, alpha, inner.as_ref()).map_err(|e| e.to_string())? else {
            continue;
        };
        runs += 1;
        let d = floyd(&graph);
        let hops = graph.all_pairs();
        for failed in sol.centers.iter().copied().combinations(alpha.min(sol.centers.len())) {
            scenarios += 1;
            let moved = conservative_reassign_flow(&sol, &hops, &failed, alpha).map_err(|e| format!("scenario {failed:?}: {e}"))?;
            let orphans = sol.phi0.iter().filter(|c| failed.contains(c)).count() as u64;
            ensure(moved.flow_value == orphans && moved.required == orphans, || format!("flow {} for {orphans} clients", moved.flow_value))?;
            let mut load = vec![0u64; n];
            for y in 0..n {
                let c = moved.phi[y];
                load[c] += 1;
                if failed.contains(&sol.phi0[y]) {
                    ensure(!failed.contains(&c), || format!("client {y} stays on a failed center"))?;
                    ensure(within(&d, y, c, beta + 6 * alpha), || format!("client {y} lands too far"))?;
                } else {
                    ensure(c == sol.phi0[y], || format!("client {y} moved without cause"))?;
                }
            }
            ensure(load.iter().zip(&caps).all(|(l, c)| l <= c), || "capacity exceeded".into())?;
        }
    }
    ensure(runs >= 50, || format!("only {runs} algorithm runs succeeded"))?;
    Ok(format!("{runs} runs, {scenarios} scenarios, flow always saturating"))
}

fn structural_invariants() -> Check {
    let mut r = rng(6);
    for case in 0..100 {
        let n = r.gen_range(5..=30);
        let density = r.gen_range(0.0..0.15);
        let graph = random_connected_graph(&mut r, n, density);
        let d = floyd(&graph);
        let alpha = r.gen_range(1..=2);
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(0..=40)).collect();
        let run = build_backup_loop(&graph, &caps, alpha).map_err(|e| e.to_string())?;
        ensure(alpha_ell_independent(&d, &run.backups, alpha, 6), || format!("case {case}: backups not independent"))?;
        ensure(run.history.windows(2).all(|w| w[0] < w[1]), || format!("case {case}: L(B) not increasing"))?;
        let c = monarch_clustering(&graph).map_err(|e| e.to_string())?;
        for (i, p) in c.parent.iter().enumerate() {
            if let Some(p) = p {
                ensure(d[c.midpoints[i]][c.midpoints[*p]] == Some(3), || format!("case {case}: tree edge not at distance 3"))?;
            }
        }
        for (i, &v) in c.midpoints.iter().enumerate() {
            for u in 0..n {
                if within(&d, u, v, 1) {
                    ensure(c.cluster_of[u] == i, || format!("case {case}: N({v}) leaks out of its cluster"))?;
                }
            }
            ensure(c.clusters[i].iter().all(|&u| within(&d, u, v, 2)), || format!("case {case}: cluster of {v} too wide"))?;
        }
        ensure(c.clusters.iter().map(Vec::len).sum::<usize>() == n, || format!("case {case}: clusters do not partition"))?;
        let a = maximal_7_independent(&graph);
        ensure(a.iter().tuple_combinations().all(|(&x, &y)| !within(&d, x, y, 6)), || format!("case {case}: anchors too close"))?;
        ensure((0..n).all(|u| a.iter().any(|&x| within(&d, u, x, 6))), || format!("case {case}: anchors do not cover"))?;
    }
    Ok("100 graphs with n <= 30: backup loop, monarch clustering and 7-independent sets".into())
}

fn residual_feasibility() -> Check {
    let mut r = rng(7);
    let (mut instances, mut independent_sets, mut anchor_sets) = (0, 0, 0);
    let mut attempts = 0;
    while instances < 60 && attempts < 5000 {
        attempts += 1;
        let n = r.gen_range(3..=7);
        let density = r.gen_range(0.0..0.4);
        let graph = random_connected_graph(&mut r, n, density);
        let alpha = r.gen_range(1..=2);
        let k = r.gen_range(alpha + 1..=n.min(4));
        let zero_l = r.gen_bool(0.5);
        let level = r.gen_range(1..=n as u64);
        let caps: Vec<u64> =
            if zero_l { random_zero_l(&mut r, n, level, 0.7) } else { (0..n).map(|_| r.gen_range(0..=4)).collect() };
        let Some((optimal, _)) = exact_distance1_conservative(&graph, &caps, k, alpha).map_err(|e| e.to_string())? else {
            continue;
        };
        instances += 1;
        let d = floyd(&graph);
        let residual = |zeroed: &[usize]| -> bool {
            let mut reduced = caps.clone();
            for &w in zeroed {
                reduced[w] = 0;
            }
            exact_distance1_ft(&graph, &reduced, k - zeroed.len(), 0).is_some()
        };
        for size in 1..=optimal.len() {
            for w in optimal.iter().copied().combinations(size) {
                if alpha_ell_independent(&d, &w, alpha, 4) {
                    independent_sets += 1;
                    ensure(residual(&w), || format!("zeroing {w:?} inside {optimal:?} breaks feasibility"))?;
                }
            }
        }
        // 7-independent anchor sets, with random alpha-subsets of N(a) as B(a)
        for _ in 0..4 {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut r);
            let mut anchors: Vec<usize> = Vec::new();
            for v in order {
                if anchors.iter().all(|&a| !within(&d, a, v, 6)) && r.gen_bool(0.7) {
                    anchors.push(v);
                }
            }
            let mut backups = Vec::new();
            for &a in &anchors {
                let mut near: Vec<usize> = (0..n).filter(|&u| within(&d, a, u, 1)).collect();
                near.shuffle(&mut r);
                backups.extend(near.into_iter().take(alpha));
            }
            if backups.len() >= k {
                continue;
            }
            anchor_sets += 1;
            ensure(residual(&backups), || format!("anchors {anchors:?} with backups {backups:?} break feasibility"))?;
        }
    }
    ensure(instances >= 40, || format!("only {instances} feasible instances"))?;
    Ok(format!("{instances} feasible instances, {independent_sets} independent subsets, {anchor_sets} anchor backup sets"))
}

fn bottleneck_soundness() -> Check {
    let mut r = rng(8);
    let (mut compared, mut sweeps) = (0, 0);
    for _ in 0..150 {
        let n = r.gen_range(2..=8);
        let graph = if r.gen_bool(0.5) {
            random_connected_graph(&mut r, n, 0.2)
        } else {
            let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().filter(|_| r.gen_bool(0.25)).collect();
            ThresholdGraph::from_edges(n, edges)
        };
        let caps: Vec<u64> = (0..n).map(|_| r.gen_range(0..=4)).collect();
        let k = r.gen_range(1..=n);
        let alpha = r.gen_range(0..k.min(3));
        let split = solve_components(&graph, &caps, k, alpha, &ExactFt::default()).map_err(|e| e.to_string())?;
        let direct = exact_distance1_ft(&graph, &caps, k, alpha);
        ensure(matches!(split, Outcome::Solved(_)) == direct.is_some(), || {
            format!("components and direct solve disagree on {:?} caps {caps:?} k={k} alpha={alpha}", graph.edges())
        })?;
        compared += 1;
    }
    for (index, alg) in Algorithm::ALL.into_iter().cycle().take(120).enumerate() {
        let inst = random_instance(&mut r, alg, index);
        let Some(opt) = oracle_opt(&inst, alg.is_conservative()) else {
            continue;
        };
        let SolveResult::Solved(report) = solve_instance(&inst, alg, &SolveOptions::default()).map_err(|e| e.to_string())? else {
            return Err(format!("{} certified infeasible below OPT {opt}", inst.name));
        };
        ensure(report.tau_star <= opt, || format!("{}: tau* {} > OPT {opt}", inst.name, report.tau_star))?;
        sweeps += 1;
    }
    Ok(format!("{compared} component splits match the direct solve, tau* <= OPT on {sweeps} sweeps"))
}
