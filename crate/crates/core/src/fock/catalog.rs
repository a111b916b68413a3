use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::symmetry::displacement_matrix;
use super::FockCoefficients;
use crate::error::{Error, Result};

/// Mass allowed beyond the truncation when expanding a closed form.
pub const CATALOG_TAIL_TOLERANCE: f64 = 1e-14;

/// Closed-form stationary waves and their relatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WaveSpec {
    PhiN { n: usize },
    /// `φ_n^α(z) = (z − ᾱ)^n e^{−|z|²/2 − |α|²/2 + αz} / √(π n!)`.
    PhiNAlpha { n: usize, alpha: Complex64 },
    /// The single-zero family joining `φ_1` (b = 0) to `−φ_0` (b → ∞).
    PsiB { b: f64 },
    /// `(a0 φ_0 + a1 φ_1) e^{cz}`; not normalized.
    EqualityFamily { a0: Complex64, a1: Complex64, c: Complex64 },
    /// `φ_{k,h}` for `k ∈ {0, 1}`, in the `h`-scaled basis where it is the
    /// `k`-th unit vector.
    SemiclassicalPhi { k: usize, h: f64 },
}

impl WaveSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WaveSpec::PsiB { b } if !(b >= 0.0 && b.is_finite()) => {
                Err(Error::InvalidParameter(format!("psi_b needs b >= 0, got {b}")))
            }
            WaveSpec::SemiclassicalPhi { h, .. } if !(h > 0.0 && h < 1.0) => {
                Err(Error::InvalidParameter(format!("h must lie in (0, 1), got {h}")))
            }
            WaveSpec::SemiclassicalPhi { k, .. } if k > 1 => Err(Error::InvalidParameter(
                format!("semiclassical catalog holds k = 0, 1 only, got {k}"),
            )),
            WaveSpec::PhiNAlpha { alpha, .. } if !alpha.is_finite() => {
                Err(Error::InvalidParameter("alpha must be finite".into()))
            }
            WaveSpec::EqualityFamily { a0, a1, c }
                if !(a0.is_finite() && a1.is_finite() && c.is_finite()) =>
            {
                Err(Error::InvalidParameter("equality family parameters must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    /// `G_μ` in closed form where one is known (unit-mass members only).
    pub fn expected_g(&self, mu: f64) -> Option<f64> {
        match *self {
            WaveSpec::PhiN { n } | WaveSpec::PhiNAlpha { n, .. } if n <= 1 => {
                Some(if n == 0 { 1.0 } else { 0.5 + mu })
            }
            WaveSpec::PhiN { n } => Some(central_ratio(n) + mu * n as f64),
            WaveSpec::PsiB { b } => Some(1.0 + (mu - 0.5) / (1.0 + b * b).powi(2)),
            _ => None,
        }
    }

    /// Stationary frequency `λ(φ_n) = (2n)! / (π (n!)² 2^{2n+1})`.
    pub fn frequency(&self) -> Option<f64> {
        match *self {
            WaveSpec::PhiN { n } | WaveSpec::PhiNAlpha { n, .. } => {
                Some(central_ratio(n) / (2.0 * PI))
            }
            _ => None,
        }
    }
}

/// `(2n)! / (2^{2n} (n!)²)`, i.e. `8πH(φ_n)`.
fn central_ratio(n: usize) -> f64 {
    let n = n as f64;
    (ln_gamma(2.0 * n + 1.0) - 2.0 * ln_gamma(n + 1.0) - 2.0 * n * std::f64::consts::LN_2).exp()
}

/// Coefficients of a catalog wave truncated at `N`.
///
/// Fails with [`Error::TruncationTooSmall`] when the discarded modes would
/// carry more than [`CATALOG_TAIL_TOLERANCE`] of the mass.
pub fn catalog_coefficients(spec: &WaveSpec, truncation: usize) -> Result<FockCoefficients> {
    spec.validate()?;
    let extended = truncation + 64 + 2 * truncation.min(64);
    let full: Vec<Complex64> = match *spec {
        WaveSpec::PhiN { n } | WaveSpec::SemiclassicalPhi { k: n, .. } => {
            return FockCoefficients::basis(n, truncation).map_err(|_| {
                Error::TruncationTooSmall { tail: 1.0, threshold: CATALOG_TAIL_TOLERANCE }
            });
        }
        WaveSpec::PhiNAlpha { n, alpha } => {
            let r = alpha.norm();
            let rows = extended.max(n + 32 + (8.0 * r * r + 8.0 * r * (n as f64 + 1.0).sqrt()) as usize);
            let d = displacement_matrix(-alpha.conj(), rows, n + 1);
            d.column(n).iter().copied().collect()
        }
        WaveSpec::PsiB { b } => psi_b(b, extended),
        WaveSpec::EqualityFamily { a0, a1, c } => equality_family(a0, a1, c, extended),
    };
    let total: f64 = full.iter().map(|a| a.norm_sqr()).sum();
    let tail: f64 = full.iter().skip(truncation + 1).map(|a| a.norm_sqr()).sum();
    let threshold = CATALOG_TAIL_TOLERANCE * total.max(f64::MIN_POSITIVE);
    if tail > threshold {
        return Err(Error::TruncationTooSmall { tail, threshold });
    }
    let mut kept = full;
    kept.truncate(truncation + 1);
    FockCoefficients::new(kept)
}

// ψ_b = C (z − β) e^{γz} e^{−|z|²/2}, C = e^{−γ²/2}/√(π(1+b²)), so
// a_n = e^{−γ²/2}/√(1+b²) · (n − βγ) γ^{n−1}/√(n!), a_0 = −e^{−γ²/2} β/√(1+b²).
fn psi_b(b: f64, truncation: usize) -> Vec<Complex64> {
    let s = 1.0 + b * b;
    let gamma = b / s;
    let beta = b * (2.0 + b * b) / s;
    let k = (-0.5 * gamma * gamma).exp() / s.sqrt();
    let mut out = Vec::with_capacity(truncation + 1);
    out.push(-k * beta);
    // t = γ^{n−1}/√((n−1)!)
    let mut t = 1.0f64;
    for n in 1..=truncation {
        let nf = n as f64;
        out.push(k * (nf - beta * gamma) * t / nf.sqrt());
        t *= gamma / nf.sqrt();
    }
    out.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
}

// (a0 + a1 z) e^{cz} in the φ_n basis: a_n = a0 s_n + a1 √n s_{n−1}, s_n = c^n/√(n!).
fn equality_family(a0: Complex64, a1: Complex64, c: Complex64, truncation: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(truncation + 1);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut s = Complex64::new(1.0, 0.0);
    for n in 0..=truncation {
        let nf = n as f64;
        out.push(a0 * s + a1 * nf.sqrt() * prev);
        prev = s;
        s *= c / (nf + 1.0).sqrt();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{functionals, magnetic_momentum, mass};

    #[test]
    fn psi_b_endpoints() {
        let u = catalog_coefficients(&WaveSpec::PsiB { b: 0.0 }, 16).unwrap();
        assert_eq!(u, FockCoefficients::basis(1, 16).unwrap());
        let far = catalog_coefficients(&WaveSpec::PsiB { b: 1e4 }, 16).unwrap();
        assert!((far.get(0) + 1.0).norm() < 1e-6);
    }

    #[test]
    fn psi_b_is_centered_unit_mass() {
        for b in [0.3, 0.7, 1.0, 2.5] {
            let u = catalog_coefficients(&WaveSpec::PsiB { b }, 64).unwrap();
            assert!((mass(&u) - 1.0).abs() < 1e-13);
            assert!(magnetic_momentum(&u).norm() < 1e-13);
        }
    }

    #[test]
    fn phi_n_values() {
        let u = catalog_coefficients(&WaveSpec::PhiN { n: 0 }, 8).unwrap();
        assert_eq!(u.get(0), Complex64::new(1.0, 0.0));
        let r = functionals(&catalog_coefficients(&WaveSpec::PhiN { n: 3 }, 8).unwrap(), 0.2);
        assert!((r.g - WaveSpec::PhiN { n: 3 }.expected_g(0.2).unwrap()).abs() < 1e-14);
        assert!((WaveSpec::PhiN { n: 0 }.frequency().unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters() {
        assert!(catalog_coefficients(&WaveSpec::PsiB { b: -1.0 }, 8).is_err());
        assert!(catalog_coefficients(&WaveSpec::SemiclassicalPhi { k: 0, h: 1.0 }, 8).is_err());
        assert!(matches!(
            catalog_coefficients(&WaveSpec::EqualityFamily {
                a0: Complex64::new(1.0, 0.0),
                a1: Complex64::new(0.0, 0.0),
                c: Complex64::new(3.0, 0.0)
            }, 4),
            Err(Error::TruncationTooSmall { .. })
        ));
    }
}
