use nalgebra::DMatrix;
use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::{mass, FockCoefficients};
use crate::error::{Error, Result};

/// Output mass allowed past the truncation, relative to `M(u)`.
pub const TRANSLATION_TAIL_TOLERANCE: f64 = 1e-10;

/// `u ↦ e^{iγ} u`.
pub fn apply_phase(u: &FockCoefficients, gamma: f64) -> FockCoefficients {
    u.scaled(Complex64::from_polar(1.0, gamma))
}

/// `u(z) ↦ u(e^{iθ} z)`, i.e. `a_n ↦ e^{inθ} a_n`.
pub fn apply_rotation(u: &FockCoefficients, theta: f64) -> FockCoefficients {
    let coeffs = u
        .as_slice()
        .iter()
        .enumerate()
        .map(|(n, a)| a * Complex64::from_polar(1.0, n as f64 * theta))
        .collect();
    FockCoefficients::new(coeffs).expect("rotation keeps entries finite")
}

/// Matrix of the magnetic translation
/// `R_α u(z) = u(z + α) e^{(z̄α − zᾱ)/2}` restricted to `rows × cols` modes.
///
/// On the holomorphic factor this is `f(z) ↦ f(z + α) e^{−ᾱz − |α|²/2}`, which
/// gives, with `x = |α|²` and `F_k^{(a)} = √(k!/(k+a)!) L_k^{(a)}(x)`,
///
/// ```text
/// D_{mn} = e^{−x/2} (−ᾱ)^{m−n} F_n^{(m−n)}   m ≥ n
/// D_{mn} = e^{−x/2}   α^{n−m}  F_m^{(n−m)}   m < n
/// ```
pub fn displacement_matrix(alpha: Complex64, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let mut d = DMatrix::<Complex64>::zeros(rows, cols);
    if alpha == Complex64::new(0.0, 0.0) {
        for k in 0..rows.min(cols) {
            d[(k, k)] = Complex64::new(1.0, 0.0);
        }
        return d;
    }
    let x = alpha.norm_sqr();
    let ln_r = alpha.norm().ln();
    let max_a = rows.max(cols);
    for a in 0..max_a {
        // Entries on the a-th sub/super diagonal: k runs over the smaller index.
        let len_lower = if a < rows { (rows - a).min(cols) } else { 0 };
        let len_upper = if a > 0 && a < cols { (cols - a).min(rows) } else { 0 };
        let len = len_lower.max(len_upper);
        if len == 0 {
            continue;
        }
        // e^{−x/2} |α|^a / √(a!), with the phase kept separately.
        let magnitude = (-0.5 * x + a as f64 * ln_r - 0.5 * ln_gamma(a as f64 + 1.0)).exp();
        if magnitude == 0.0 {
            continue;
        }
        let lower = Complex64::from_polar(magnitude, a as f64 * (-alpha.conj()).arg());
        let upper = Complex64::from_polar(magnitude, a as f64 * alpha.arg());
        let af = a as f64;
        // F̂_k = √(a!) F_k^{(a)}, which obeys the same three-term recurrence.
        let mut prev = 0.0f64;
        let mut cur = 1.0f64;
        for k in 0..len {
            if k < len_lower {
                d[(k + a, k)] = lower * cur;
            }
            if k < len_upper {
                d[(k, k + a)] = upper * cur;
            }
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + af - x) * cur - (kf * (kf + af)).sqrt() * prev)
                / ((kf + 1.0) * (kf + 1.0 + af)).sqrt();
            prev = cur;
            cur = next;
        }
    }
    d
}

/// Magnetic translation by `α`, keeping the input truncation.
///
/// The image is computed on an enlarged mode range; if more than
/// [`TRANSLATION_TAIL_TOLERANCE`]` · M(u)` lands beyond the truncation the
/// call fails rather than silently dropping mass.
pub fn apply_translation(u: &FockCoefficients, alpha: Complex64) -> Result<FockCoefficients> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("translation {alpha} is not finite")));
    }
    let n = u.truncation();
    let r = alpha.norm();
    let extra = 16 + (4.0 * r * r + 8.0 * r * ((n + 1) as f64).sqrt()).ceil() as usize;
    let rows = n + 1 + extra;
    let d = displacement_matrix(alpha, rows, n + 1);
    let a = nalgebra::DVector::from_column_slice(u.as_slice());
    let image = d * a;
    let full = FockCoefficients::new(image.as_slice().to_vec())?;
    let threshold = TRANSLATION_TAIL_TOLERANCE * mass(u);
    let tail = full.tail_mass_beyond(n);
    if tail > threshold {
        return Err(Error::TruncationTooSmall { tail, threshold });
    }
    Ok(full.resized(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translated_gaussian_is_coherent_state() {
        let alpha = Complex64::new(0.3, -0.4);
        let u = FockCoefficients::basis(0, 40).unwrap();
        let t = apply_translation(&u, alpha).unwrap();
        let mut expect = (-0.5 * alpha.norm_sqr()).exp();
        for n in 0..=10 {
            if n > 0 {
                expect /= (n as f64).sqrt();
            }
            let want = (-alpha.conj()).powu(n as u32) * expect;
            assert!((t.get(n) - want).norm() < 1e-14, "mode {n}");
        }
    }

    #[test]
    fn zero_shift_is_identity() {
        let d = displacement_matrix(Complex64::new(0.0, 0.0), 3, 4);
        assert_eq!(d[(2, 2)], Complex64::new(1.0, 0.0));
        assert_eq!(d[(0, 3)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn tight_truncation_is_reported() {
        let u = FockCoefficients::basis(5, 5).unwrap();
        let err = apply_translation(&u, Complex64::new(0.5, 0.0)).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall { .. }));
    }
}
