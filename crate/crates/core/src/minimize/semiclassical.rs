use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// `κ_∞`: below it every minimizer has infinitely many zeros.
pub const KAPPA_INF: f64 = 5.0 / 32.0;
/// `κ_0`: above it the Gaussian is the unique minimizer.
pub const KAPPA_ZERO: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `μ_eff > 1/2`: `φ_{0,h}` is the unique minimizer.
    Gaussian,
    /// `μ_eff = 1/2`: `φ_{0,h}`, `φ_{1,h}` and the `ψ_b` family tie.
    Degenerate,
    /// `5/32 ≤ μ_eff < 1/2`: `φ_{1,h}` is a strict local minimizer and the
    /// unique global one above an unknown `κ_1`.
    Intermediate,
    /// `μ_eff < 5/32`: infinitely many zeros.
    Vortices,
}

impl Regime {
    pub fn of(mu_eff: f64) -> Self {
        if mu_eff > KAPPA_ZERO {
            Regime::Gaussian
        } else if mu_eff == KAPPA_ZERO {
            Regime::Degenerate
        } else if mu_eff >= KAPPA_INF {
            Regime::Intermediate
        } else {
            Regime::Vortices
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiclassicalReport {
    pub na: f64,
    pub h: f64,
    /// `Ω_h² = 1 − h²`
    pub omega_sq: f64,
    /// `4πh² / (N a Ω_h²)`
    pub mu_eff: f64,
    /// `h` solving `h = √(κ N a Ω_h² / 4π)` at `κ = 5/32`.
    pub h_kappa_inf: f64,
    /// Same at `κ = 1/2`.
    pub h_kappa_zero: f64,
    pub e_phi0: f64,
    pub e_phi1: f64,
    pub regime: Regime,
}

/// `E_h(φ_{0,h}) = g/(4πh) + h` and `E_h(φ_{1,h}) = g/(8πh) + 2h` for a
/// coupling `g = N a Ω_h²`.
pub fn phi_energies(coupling: f64, h: f64) -> (f64, f64) {
    (coupling / (4.0 * PI * h) + h, coupling / (8.0 * PI * h) + 2.0 * h)
}

/// Self-consistent threshold: `h² = κ N a (1 − h²)/(4π)` gives
/// `h² = c/(1 + c)` with `c = κ N a / 4π`.
pub fn threshold_h(na: f64, kappa: f64) -> f64 {
    let c = kappa * na / (4.0 * PI);
    (c / (1.0 + c)).sqrt()
}

pub fn semiclassical(na: f64, h: f64) -> Result<SemiclassicalReport> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidParameter(format!("h must lie in (0, 1), got {h}")));
    }
    if !(na > 0.0) || !na.is_finite() {
        return Err(Error::InvalidParameter(format!("N a must be positive, got {na}")));
    }
    let omega_sq = 1.0 - h * h;
    let mu_eff = 4.0 * PI * h * h / (na * omega_sq);
    let (e_phi0, e_phi1) = phi_energies(na * omega_sq, h);
    Ok(SemiclassicalReport {
        na,
        h,
        omega_sq,
        mu_eff,
        h_kappa_inf: threshold_h(na, KAPPA_INF),
        h_kappa_zero: threshold_h(na, KAPPA_ZERO),
        e_phi0,
        e_phi1,
        regime: Regime::of(mu_eff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_fixed_point() {
        for na in [0.5, 3.0, 40.0] {
            for kappa in [KAPPA_INF, KAPPA_ZERO] {
                let h = threshold_h(na, kappa);
                let r = semiclassical(na, h).unwrap();
                assert!((r.mu_eff - kappa).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn energies_at_fixed_coupling() {
        let (e0, e1) = phi_energies(4.0 * PI, 0.5);
        assert!((e0 - 2.5).abs() < 1e-15);
        assert!((e1 - 2.0).abs() < 1e-15);
    }
}
