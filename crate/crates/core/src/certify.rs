//! Positivity of every block `S^{(j)}` over a range of `j`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::spectra::{
    build_b_block, centro_decompose, scaled_block, symmetric_eigenvalues, verify_null_vectors,
    BlockMatrix, Parity,
};
use crate::sturm::{positivity_certificate, CertificateSummary, SturmCertificate};

/// Largest `j` for which exact null-vector and eigenvalue checks run by default.
pub const DEFAULT_EXACT_LIMIT: usize = 200;

/// Relative floor for the smallest eigenvalue of a scaled reduced block.
pub const EIGEN_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct BlockCertificate {
    pub j: usize,
    pub parity: Parity,
    /// Exact `S = c·y yᵀ, c ≥ 0` check, used for `j ≤ 5`.
    pub exact_rank_one: Option<bool>,
    pub null_vectors: Option<bool>,
    pub min_eigenvalue: Option<f64>,
    pub norm_s: Option<f64>,
    /// Smallest eigenvalue of scaled `S` above the floor; informational.
    pub spectral_gap: Option<f64>,
    pub sturm: Option<SturmCertificate>,
    pub pass: bool,
    pub reason: Option<String>,
}

impl BlockCertificate {
    pub fn summary(&self) -> Option<CertificateSummary> {
        self.sturm.as_ref().map(CertificateSummary::from)
    }

    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::CertificateFailed { j: self.j, reason: self.reason.unwrap_or_default() })
        }
    }
}

/// Exact test that a symmetric matrix is `c·y yᵀ` with `c ≥ 0` (zero allowed).
pub fn is_rank_one_psd(m: &BlockMatrix) -> bool {
    let n = m.order();
    let Some(i) = (0..n).find(|&i| !m.get(i, i).is_zero()) else {
        return m.is_zero();
    };
    let pivot = m.get(i, i);
    if pivot.signum() < 0 {
        return false;
    }
    (0..n).all(|k| {
        (0..n).all(|l| {
            // X_kl X_ii = X_ki X_il
            let lhs: QSqrt2 = m.get(k, l) * pivot;
            lhs == m.get(k, i) * m.get(i, l)
        })
    })
}

/// Certificate for one block. Null vectors and eigenvalues are checked when
/// `j ≤ exact_limit`; the Sturm certificate always runs for `j ≥ 6`.
pub fn certify_block(j: usize, exact_limit: usize) -> Result<BlockCertificate> {
    let parity = Parity::of(j);
    let mut cert = BlockCertificate {
        j,
        parity,
        exact_rank_one: None,
        null_vectors: None,
        min_eigenvalue: None,
        norm_s: None,
        spectral_gap: None,
        sturm: None,
        pass: true,
        reason: None,
    };
    let fail = |c: &mut BlockCertificate, why: String| {
        if c.pass {
            c.pass = false;
            c.reason = Some(why);
        }
    };
    if j <= 5 || j <= exact_limit {
        let s = centro_decompose(&build_b_block(j))?.s;
        if j <= 5 {
            let ok = is_rank_one_psd(&s);
            cert.exact_rank_one = Some(ok);
            if !ok {
                fail(&mut cert, "S is not a nonnegative rank-one matrix".into());
            }
        }
        if j >= 4 {
            let ok = verify_null_vectors(j)?;
            cert.null_vectors = Some(ok);
            if !ok {
                fail(&mut cert, "null vectors not annihilated".into());
            }
        }
        let ev = symmetric_eigenvalues(&scaled_block(&s))?;
        let norm = ev.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let min = ev.first().copied().unwrap_or(0.0);
        cert.min_eigenvalue = Some(min);
        cert.norm_s = Some(norm);
        cert.spectral_gap = ev.iter().copied().find(|&x| x > EIGEN_FLOOR * norm);
        if min < -EIGEN_FLOOR * norm {
            fail(&mut cert, format!("scaled S has eigenvalue {min:e}"));
        }
    }
    if j >= 6 {
        let sturm = positivity_certificate(j)?;
        if let crate::sturm::Verdict::Fail(r) = &sturm.verdict {
            fail(&mut cert, r.clone());
        }
        cert.sturm = Some(sturm);
    }
    Ok(cert)
}

/// Certificates for `j = 0..=max_j`, computed in parallel, in order.
pub fn certify_range(max_j: usize, exact_limit: usize) -> Result<Vec<BlockCertificate>> {
    (0..=max_j).into_par_iter().map(|j| certify_block(j, exact_limit)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_blocks_are_rank_one() {
        for j in 0..=5 {
            let c = certify_block(j, 0).unwrap();
            assert!(c.pass && c.exact_rank_one == Some(true), "j = {j}");
        }
    }

    #[test]
    fn e_block_three_is_not() {
        let s = centro_decompose(&crate::spectra::build_e_block(3)).unwrap().s;
        assert!(!is_rank_one_psd(&s) || s.is_zero());
    }

    #[test]
    fn small_range_passes() {
        assert!(certify_range(30, 30).unwrap().iter().all(|c| c.pass));
    }
}
