use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockCoefficients;

/// Coefficients below this are treated as zero when forming the polynomial.
pub const TRIM_THRESHOLD: f64 = 1e-13;

#[derive(Clone, Debug, Serialize)]
pub struct ZeroReport {
    pub radius: f64,
    pub degree: usize,
    pub roots: Vec<Complex64>,
    /// `|p(z)| / Σ|c_k||z|^k` at each root.
    pub residuals: Vec<f64>,
    pub count: usize,
}

/// Monomial coefficients `c_n = a_n / √(n!)` of the holomorphic factor.
pub fn monomial_coefficients(u: &FockCoefficients) -> Vec<Complex64> {
    let mut s = 1.0f64;
    u.as_slice()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n > 0 {
                s /= (n as f64).sqrt();
            }
            a * s
        })
        .collect()
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
        scale = scale * r + x.norm();
    }
    (p, dp, scale)
}

/// Zeros of `Σ a_n zⁿ/√(n!)` via a balanced companion matrix, polished by
/// Newton steps, and the number with `|z| ≤ R`.
pub fn count_zeros(u: &FockCoefficients, radius: f64) -> Result<ZeroReport> {
    let a = u.as_slice();
    let Some(last) = a.iter().rposition(|x| x.norm() >= TRIM_THRESHOLD) else {
        return Err(Error::DegenerateInput("all coefficients are negligible".into()));
    };
    let first = a.iter().position(|x| x.norm() >= TRIM_THRESHOLD).unwrap();
    let c_all = monomial_coefficients(u);
    let c = &c_all[first..=last];
    let d = last - first;
    let mut roots = vec![Complex64::new(0.0, 0.0); first];
    if d > 0 {
        // z = ρw equalizes the constant and leading magnitudes.
        let rho = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
        let e: Vec<Complex64> = c.iter().enumerate().map(|(k, x)| x * rho.powi(k as i32)).collect();
        let mut comp = DMatrix::<Complex64>::zeros(d, d);
        for k in 0..d {
            comp[(0, k)] = -e[d - 1 - k] / e[d];
        }
        for i in 1..d {
            comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        let eig = comp.schur().eigenvalues().ok_or(Error::NoConvergence)?;
        for w in eig.iter() {
            let mut z = w * rho;
            for _ in 0..4 {
                let (p, dp, _) = horner(c, z);
                if dp.norm() == 0.0 {
                    break;
                }
                let next = z - p / dp;
                if horner(c, next).0.norm() < p.norm() {
                    z = next;
                } else {
                    break;
                }
            }
            roots.push(z);
        }
    }
    let residuals = roots
        .iter()
        .map(|&z| {
            if z.norm() == 0.0 {
                return 0.0;
            }
            let (p, _, scale) = horner(c, z);
            if scale > 0.0 { p.norm() / scale } else { 0.0 }
        })
        .collect();
    let count = roots.iter().filter(|z| z.norm() <= radius).count();
    Ok(ZeroReport { radius, degree: last, roots, residuals, count })
}

/// Winding number of `p(R e^{it})` with `samples` points; independent of
/// the root finder.
pub fn winding_number(u: &FockCoefficients, radius: f64, samples: usize) -> i64 {
    let c = monomial_coefficients(u);
    let mut total = 0.0;
    let mut prev = horner(&c, Complex64::new(radius, 0.0)).0;
    for i in 1..=samples {
        let t = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
        let cur = horner(&c, Complex64::from_polar(radius, t)).0;
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}
