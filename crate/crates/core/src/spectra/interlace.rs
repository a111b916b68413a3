use serde::Serialize;

use super::block::build_b_block;
use super::centro::{centro_decompose, rank_one_split};
use super::eigen::{block_to_hp, dense_eigenvalues, tridiagonal_eigenvalues, Hp, Scalar};
use crate::error::{Error, Result};

/// Relative tolerance for the rank-one interlacing checks.
pub const INTERLACING_TOLERANCE: f64 = 1e-9;

/// Eigenvalues `λ` of `T^{(j)}` and `λ'` of `S^{(j)} = T^{(j)} + K^{(j)}`.
///
/// Since `K` is positive semidefinite of rank one with trace `δ`,
/// `λ_1 ≤ λ'_1 ≤ λ_2 ≤ … ≤ λ_p ≤ λ'_p` and `Σ(λ'_i − λ_i) = δ`. Both are
/// checked with slack `1e−9·δ`, which is far tighter than `1e−9·‖S‖`: the
/// unscaled spectra span dozens of orders of magnitude, so the solve runs in
/// 256-bit floating point.
#[derive(Clone, Debug, Serialize)]
pub struct InterlacingReport {
    pub j: usize,
    pub delta: f64,
    pub norm_s: f64,
    pub eig_t: Vec<f64>,
    pub eig_s: Vec<f64>,
    /// `|Σ(λ'−λ) − δ| / δ`
    pub trace_error: f64,
    /// Largest interlacing violation divided by `δ` (0 when none).
    pub worst_violation: f64,
    pub holds: bool,
}

pub fn interlacing_check(j: usize) -> Result<InterlacingReport> {
    if j % 2 == 0 || j < 7 {
        return Err(Error::WrongParityInput(j));
    }
    let decomp = centro_decompose(&build_b_block(j))?;
    let split = rank_one_split(&decomp)?;
    let p = split.t.order();

    let t = block_to_hp(&split.t);
    let diag: Vec<Hp> = (0..p).map(|k| t[k][k].clone()).collect();
    let off: Vec<Hp> = (0..p.saturating_sub(1)).map(|k| t[k + 1][k].clone()).collect();
    let lam = tridiagonal_eigenvalues(&diag, &off)?;
    let lam_s = dense_eigenvalues(block_to_hp(&decomp.s))?;

    let delta = Hp::from_ratio(&split.delta);
    let shift = lam_s
        .iter()
        .zip(&lam)
        .fold(Hp::zero(), |acc, (a, b)| acc + a.clone() - b.clone());
    let trace_error = ((shift - delta.clone()) / delta.clone()).abs().to_f64();

    let mut worst = Hp::zero();
    for i in 0..p {
        // λ_i ≤ λ'_i
        let lower = lam[i].clone() - lam_s[i].clone();
        if lower > worst {
            worst = lower;
        }
        // λ'_i ≤ λ_{i+1}
        if i + 1 < p {
            let upper = lam_s[i].clone() - lam[i + 1].clone();
            if upper > worst {
                worst = upper;
            }
        }
    }
    let worst_violation = (worst / delta.clone()).to_f64();
    let norm_s = lam_s
        .iter()
        .map(|x| x.abs().to_f64())
        .fold(0.0, f64::max);
    Ok(InterlacingReport {
        j,
        delta: delta.to_f64(),
        norm_s,
        eig_t: lam.iter().map(Scalar::to_f64).collect(),
        eig_s: lam_s.iter().map(Scalar::to_f64).collect(),
        trace_error,
        worst_violation,
        holds: trace_error <= INTERLACING_TOLERANCE && worst_violation <= INTERLACING_TOLERANCE,
    })
}
