//! End-to-end solve: sweep, re-verification of the output on the metric,
//! and an optional comparison against the exact oracle.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bottleneck::{sweep, SweepOutcome, UnweightedSolver};
use crate::error::{Error, Result};
use crate::instance::MetricInstance;
use crate::numeric::{serialize_length, serialize_length_opt, Length};
use crate::oracle::{exact_opt_conservative, exact_opt_ft, verify_conservative, verify_ft, OracleLimits};
use crate::pipeline::{ConsGeneral, ConsZeroL, FtGeneral, FtZeroL};

/// Default largest `alpha` accepted by the fixed-`alpha` algorithms.
pub const DEFAULT_ALPHA_BOUND: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    ConsZeroL,
    ConsGeneral,
    FtGeneral,
    FtZeroL,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::ConsZeroL, Algorithm::ConsGeneral, Algorithm::FtGeneral, Algorithm::FtZeroL];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ConsZeroL => "cons-0l",
            Algorithm::ConsGeneral => "cons-general",
            Algorithm::FtGeneral => "ft-general",
            Algorithm::FtZeroL => "ft-0l",
        }
    }

    pub fn is_conservative(self) -> bool {
        matches!(self, Algorithm::ConsZeroL | Algorithm::ConsGeneral)
    }

    pub fn needs_zero_l(self) -> bool {
        matches!(self, Algorithm::ConsZeroL | Algorithm::FtZeroL)
    }

    /// Whether the running time grows like `n^alpha`, so `alpha` is bounded.
    pub fn has_alpha_bound(self) -> bool {
        matches!(self, Algorithm::ConsGeneral | Algorithm::FtGeneral)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub alpha_bound: usize,
    /// Run the exact oracle and report `opt` when the instance is small enough.
    pub with_oracle: bool,
    /// Solve the residual instance of `cons-general` exactly.
    pub exact_inner: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { alpha_bound: DEFAULT_ALPHA_BOUND, with_oracle: false, exact_inner: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    #[serde(serialize_with = "serialize_length")]
    pub tau_star: Length,
    #[serde(serialize_with = "serialize_length")]
    pub radius_bound: Length,
    pub centers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_assignment: Option<Vec<usize>>,
    pub verified: bool,
    /// Smallest instance distance at which the output verifies.
    #[serde(serialize_with = "serialize_length_opt")]
    pub verified_radius: Option<Length>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_length_opt")]
    pub opt: Option<Length>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_observed: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfeasibilityCertificate {
    #[serde(serialize_with = "serialize_length")]
    pub infeasible_at: Length,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveResult {
    Solved(SolveReport),
    Infeasible(InfeasibilityCertificate),
}

pub fn solver_for(alg: Algorithm, opts: &SolveOptions) -> Box<dyn UnweightedSolver> {
    match alg {
        Algorithm::ConsZeroL => Box::new(ConsZeroL),
        Algorithm::ConsGeneral => Box::new(ConsGeneral { exact: opts.exact_inner, alpha_bound: opts.alpha_bound }),
        Algorithm::FtGeneral => Box::new(FtGeneral { alpha_bound: opts.alpha_bound }),
        Algorithm::FtZeroL => Box::new(FtZeroL),
    }
}

/// Rejects inputs the selected algorithm does not handle.
pub fn check_input(inst: &MetricInstance, alg: Algorithm, opts: &SolveOptions) -> Result<()> {
    if alg.needs_zero_l() {
        crate::graph::zero_l_level(&inst.capacities)?;
    }
    if alg.has_alpha_bound() && inst.alpha > opts.alpha_bound {
        return Err(Error::AlphaBound { alpha: inst.alpha, bound: opts.alpha_bound });
    }
    Ok(())
}

fn passes(inst: &MetricInstance, alg: Algorithm, centers: &[usize], phi0: Option<&[usize]>, radius: &Length) -> bool {
    match (alg.is_conservative(), phi0) {
        (true, Some(phi0)) => verify_conservative(inst, centers, phi0, radius).pass,
        (true, None) => false,
        (false, _) => verify_ft(inst, centers, radius).pass,
    }
}

/// Smallest instance distance at most `bound` at which the output verifies.
/// Verification is monotone in the radius, so a binary search suffices.
fn smallest_verified(
    inst: &MetricInstance,
    alg: Algorithm,
    centers: &[usize],
    phi0: Option<&[usize]>,
    bound: &Length,
) -> Option<Length> {
    if !passes(inst, alg, centers, phi0, bound) {
        return None;
    }
    let taus: Vec<Length> = inst.distinct_distances().into_iter().filter(|t| t <= bound).collect();
    let (mut lo, mut hi) = (0, taus.len());
    // invariant: the radius at index `hi` (or `bound` itself) passes
    while lo < hi {
        let mid = (lo + hi) / 2;
        if passes(inst, alg, centers, phi0, &taus[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(taus.get(hi).cloned().unwrap_or_else(|| bound.clone()))
}

/// The exact optimum for the algorithm's variant, or `None` when the
/// instance exceeds the oracle limits or has no solution.
pub fn exact_opt(inst: &MetricInstance, conservative: bool) -> Result<Option<Length>> {
    let found = if conservative {
        exact_opt_conservative(inst, OracleLimits::CONSERVATIVE).map(|r| r.map(|e| e.opt))
    } else {
        exact_opt_ft(inst, OracleLimits::FAULT_TOLERANT).map(|r| r.map(|e| e.opt))
    };
    match found {
        Err(Error::SizeLimit(_)) => Ok(None),
        other => other,
    }
}

pub fn solve_instance(inst: &MetricInstance, alg: Algorithm, opts: &SolveOptions) -> Result<SolveResult> {
    check_input(inst, alg, opts)?;
    let solver = solver_for(alg, opts);
    let (tau_star, solution) = match sweep(inst, solver.as_ref())? {
        SweepOutcome::Solved { tau_star, solution } => (tau_star, solution),
        SweepOutcome::Infeasible { tau, reason } => {
            return Ok(SolveResult::Infeasible(InfeasibilityCertificate { infeasible_at: tau, reason }))
        }
    };
    let radius_bound = tau_star.times(solver.stretch(inst.alpha) as u64);
    let phi0 = solution.initial_assignment;
    let verified_radius = smallest_verified(inst, alg, &solution.centers, phi0.as_deref(), &radius_bound);
    let opt = if opts.with_oracle { exact_opt(inst, alg.is_conservative())? } else { None };
    let factor_observed = match (&verified_radius, &opt) {
        (Some(r), Some(o)) if o.is_zero() && r.is_zero() => Some(1.0),
        (Some(r), Some(o)) => r.ratio(o),
        _ => None,
    };
    Ok(SolveResult::Solved(SolveReport {
        algorithm: alg.name().to_string(),
        tau_star,
        radius_bound,
        centers: solution.centers,
        initial_assignment: if alg.is_conservative() { phi0 } else { None },
        verified: verified_radius.is_some(),
        verified_radius,
        opt,
        factor_observed,
    }))
}
