use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{
    angular_momentum, apply_translation, catalog_coefficients, magnetic_momentum, mass,
    FockCoefficients, WaveSpec,
};

/// Overlap needed for a catalog label.
pub const CLASS_THRESHOLD: f64 = 1.0 - 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Class {
    Phi0,
    Phi1,
    PsiBFit { b: f64 },
    Unclassified,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Phi0 => f.write_str("phi0"),
            Class::Phi1 => f.write_str("phi1"),
            Class::PsiBFit { .. } => f.write_str("psi_b"),
            Class::Unclassified => f.write_str("unclassified"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: Class,
    /// Overlap with the chosen label, or the best of the three otherwise.
    pub overlap: f64,
    /// Solution of `P = 1/(1+b²)²` after centering, when `0 < P ≤ 1`.
    pub b_fit: Option<f64>,
    /// `P` after translating to `Q = 0`.
    pub centered_p: f64,
}

/// `b ≥ 0` with `P(ψ_b) = 1/(1+b²)² = p`.
pub fn fit_b(p: f64) -> Option<f64> {
    if p > 0.0 && p <= 1.0 {
        Some((1.0 / p.sqrt() - 1.0).max(0.0).sqrt())
    } else {
        None
    }
}

/// `max_θ |Σ conj(c_n) e^{inθ} a_n|` by a grid search and golden-section refinement.
pub fn rotation_overlap(c: &[Complex64], a: &[Complex64]) -> f64 {
    let terms: Vec<(usize, Complex64)> = c
        .iter()
        .zip(a)
        .enumerate()
        .map(|(n, (x, y))| (n, x.conj() * y))
        .filter(|(_, t)| t.norm() > 0.0)
        .collect();
    let f = |theta: f64| {
        terms
            .iter()
            .map(|(n, t)| t * Complex64::from_polar(1.0, *n as f64 * theta))
            .sum::<Complex64>()
            .norm()
    };
    let grid = 720;
    let h = 2.0 * PI / grid as f64;
    let (best_i, _) = (0..grid)
        .map(|i| (i, f(i as f64 * h)))
        .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
    let (mut lo, mut hi) = ((best_i as f64 - 1.0) * h, (best_i as f64 + 1.0) * h);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let x1 = hi - inv_phi * (hi - lo);
        let x2 = lo + inv_phi * (hi - lo);
        if f(x1) < f(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    f(0.5 * (lo + hi)).max(f(best_i as f64 * h))
}

/// Labels `u` as `φ_0`, `φ_1`, `ψ_b` or none, up to phase, rotation and
/// magnetic translation.
pub fn classify(u: &FockCoefficients) -> Classification {
    let m = mass(u);
    if !(m > 0.0) {
        return Classification { class: Class::Unclassified, overlap: 0.0, b_fit: None, centered_p: 0.0 };
    }
    let unit = u.scaled(Complex64::new(1.0 / m.sqrt(), 0.0));
    let alpha = magnetic_momentum(&unit);
    let centered = apply_translation(&unit, alpha).unwrap_or(unit);
    let a = centered.as_slice();
    let p = angular_momentum(&centered);
    let b_fit = fit_b(p);

    let over0 = a[0].norm();
    let over1 = a.get(1).map_or(0.0, |x| x.norm());
    let over_psi = b_fit
        .and_then(|b| catalog_coefficients(&WaveSpec::PsiB { b }, centered.truncation()).ok())
        .map_or(0.0, |c| rotation_overlap(c.as_slice(), a));
    let (class, overlap) = if over0 >= CLASS_THRESHOLD {
        (Class::Phi0, over0)
    } else if over1 >= CLASS_THRESHOLD {
        (Class::Phi1, over1)
    } else if over_psi >= CLASS_THRESHOLD {
        (Class::PsiBFit { b: b_fit.unwrap() }, over_psi)
    } else {
        (Class::Unclassified, over0.max(over1).max(over_psi))
    };
    Classification { class, overlap, b_fit, centered_p: p }
}
