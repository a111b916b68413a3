use serde::Serialize;

use super::classify::Class;
use super::optimizer::{minimize_g_from, MinimizationResult, OptimizerConfig};
use crate::error::{Error, Result};
use crate::fock::FockCoefficients;

/// `5/32`: `φ_1` is a strict local minimizer exactly on `(5/32, 1/2)`.
pub const MU0_LOWER: f64 = 5.0 / 32.0;
pub const MU0_UPPER: f64 = 0.5;

/// Margin by which a competitor must undercut `G_μ(φ_1)`.
const UNDERCUT: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct Mu0Probe {
    pub mu: f64,
    pub g_min: f64,
    pub g_phi1: f64,
    pub class: Class,
    pub n_zeros: usize,
    /// A state strictly below `G_μ(φ_1)` was found.
    pub beats_phi1: bool,
}

/// Empirical bracket for the threshold above which `φ_1` is the global
/// minimizer. Only valid for the truncation and search budget used.
#[derive(Clone, Debug, Serialize)]
pub struct Mu0Estimate {
    pub lower: f64,
    pub upper: f64,
    pub empirical: bool,
    pub truncation: usize,
    pub probes: Vec<Mu0Probe>,
}

fn probe(mu: f64, config: &OptimizerConfig, pool: &mut Vec<FockCoefficients>) -> Result<Mu0Probe> {
    let r: MinimizationResult = minimize_g_from(mu, config, pool)?;
    let g_phi1 = 0.5 + mu;
    let beats_phi1 = r.g_value < g_phi1 - UNDERCUT;
    if beats_phi1 {
        pool.insert(0, r.u.clone());
        pool.truncate(4);
    }
    Ok(Mu0Probe { mu, g_min: r.g_value, g_phi1, class: r.class, n_zeros: r.zero_count, beats_phi1 })
}

/// Bisection on `(5/32, 1/2)` between "some state beats `φ_1`" and "`φ_1`
/// wins", down to a bracket of width `tol`.
///
/// Minimizers that beat `φ_1` are kept as warm starts for later probes, since
/// the competing branch is hard to reach from scratch near the transition.
pub fn estimate_mu0(config: &OptimizerConfig, tol: f64) -> Result<Mu0Estimate> {
    let mut pool = Vec::new();
    let mut probes = Vec::new();
    let mut lo = MU0_LOWER;
    let mut hi = MU0_UPPER - tol.min(1e-3);
    let first = probe(lo, config, &mut pool)?;
    let last = probe(hi, config, &mut pool)?;
    let (beats_lo, beats_hi) = (first.beats_phi1, last.beats_phi1);
    probes.push(first);
    probes.push(last);
    if beats_hi {
        return Err(Error::InconsistentBracket(format!(
            "a state beats phi1 at mu = {hi}, inside the range where phi1 is the global minimizer"
        )));
    }
    if !beats_lo {
        // φ_1 already wins at 5/32: the threshold sits at the lower bound.
        return Ok(Mu0Estimate { lower: lo, upper: lo, empirical: true, truncation: config.truncation, probes });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let p = probe(mid, config, &mut pool)?;
        if p.beats_phi1 {
            lo = mid;
        } else {
            hi = mid;
        }
        probes.push(p);
    }
    // Re-check the lower end with the final warm starts: a competitor must
    // still be found there, otherwise the bracket is not monotone.
    let recheck = probe(lo, config, &mut pool)?;
    let ok = recheck.beats_phi1;
    probes.push(recheck);
    if !ok {
        return Err(Error::InconsistentBracket(format!(
            "phi1 wins at mu = {lo} on re-check after losing there earlier"
        )));
    }
    Ok(Mu0Estimate { lower: lo, upper: hi, empirical: true, truncation: config.truncation, probes })
}
