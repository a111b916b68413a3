use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients `a_0..a_N` of a Bargmann-Fock function in the special Hermite
/// basis `φ_n(z) = z^n e^{-|z|²/2} / √(π n!)`.
///
/// The vector always holds `truncation + 1` finite entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoefficientFile", into = "CoefficientFile")]
pub struct FockCoefficients {
    coeffs: Vec<Complex64>,
}

/// On-disk layout: `{"truncation": N, "coeffs": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    truncation: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<CoefficientFile> for FockCoefficients {
    type Error = Error;

    fn try_from(file: CoefficientFile) -> Result<Self> {
        if file.coeffs.len() != file.truncation + 1 {
            return Err(Error::LengthMismatch {
                declared: file.truncation,
                found: file.coeffs.len(),
            });
        }
        FockCoefficients::new(
            file.coeffs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<FockCoefficients> for CoefficientFile {
    fn from(u: FockCoefficients) -> Self {
        CoefficientFile {
            truncation: u.truncation(),
            coeffs: u.coeffs.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl FockCoefficients {
    /// Wraps a coefficient vector; rejects empty input and non-finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "coefficient vector must hold at least a_0".into(),
            ));
        }
        if let Some(i) = coeffs.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(FockCoefficients { coeffs })
    }

    pub fn zeros(truncation: usize) -> Self {
        FockCoefficients {
            coeffs: vec![Complex64::new(0.0, 0.0); truncation + 1],
        }
    }

    /// The basis function `φ_n` padded to `truncation`.
    pub fn basis(n: usize, truncation: usize) -> Result<Self> {
        if n > truncation {
            return Err(Error::OutOfRange(format!(
                "mode {n} exceeds truncation {truncation}"
            )));
        }
        let mut u = Self::zeros(truncation);
        u.coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(u)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Pads with zeros or cuts to the requested truncation.
    pub fn resized(&self, truncation: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(truncation + 1, Complex64::new(0.0, 0.0));
        FockCoefficients { coeffs }
    }

    /// Mass carried by modes strictly above `n`.
    pub fn tail_mass_beyond(&self, n: usize) -> f64 {
        self.coeffs.iter().skip(n + 1).map(|a| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        FockCoefficients {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }

    /// Rescales to unit mass. Fails on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let m = super::mass(self);
        if m <= 0.0 || !m.is_finite() {
            return Err(Error::DegenerateInput("cannot normalize zero vector".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / m.sqrt(), 0.0)))
    }

    /// Hermitian inner product `Σ conj(a_n) b_n` over the common modes.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_length_mismatch() {
        let err = FockCoefficients::from_json_str(r#"{"truncation": 2, "coeffs": [[1,0],[0,0]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Json(_)));
        assert!(err.to_string().contains("declares truncation 2"));
    }

    #[test]
    fn reads_wire_format() {
        let u = FockCoefficients::from_json_str(r#"{"truncation": 1, "coeffs": [[1,0],[0,-0.5]]}"#)
            .unwrap();
        assert_eq!(u.truncation(), 1);
        assert_eq!(u.get(1), Complex64::new(0.0, -0.5));
        let s = u.to_json_string().unwrap();
        assert_eq!(s, r#"{"truncation":1,"coeffs":[[1.0,0.0],[0.0,-0.5]]}"#);
    }

    #[test]
    fn rejects_non_finite() {
        let err = FockCoefficients::new(vec![Complex64::new(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFinite(0)));
        assert!(FockCoefficients::new(vec![]).is_err());
    }
}
