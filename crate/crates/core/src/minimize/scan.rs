use rayon::prelude::*;
use serde::Serialize;

use super::classify::Class;
use super::optimizer::{minimize_g, OptimizerConfig};
use crate::error::Result;

pub const CSV_HEADER: &str = "mu,G_min,P,H,Qabs,class,b_fit,n_zeros,G_phi0,G_phi1,G_psi1";

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub mu: f64,
    pub g_min: f64,
    pub p: f64,
    pub h: f64,
    pub q_abs: f64,
    pub class: Class,
    pub b_fit: Option<f64>,
    pub n_zeros: usize,
    pub g_phi0: f64,
    pub g_phi1: f64,
    /// `G_μ(ψ_1) = 1 + (μ − 1/2)/4`.
    pub g_psi1: f64,
    pub converged: bool,
}

impl ScanRow {
    pub fn to_csv_line(&self) -> String {
        let b = self.b_fit.map(|b| format!("{b:.11e}")).unwrap_or_default();
        format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{},{},{},{:.11e},{:.11e},{:.11e}",
            self.mu,
            self.g_min,
            self.p,
            self.h,
            self.q_abs,
            self.class,
            b,
            self.n_zeros,
            self.g_phi0,
            self.g_phi1,
            self.g_psi1
        )
    }
}

/// Minimizes at every grid point (in ascending order) and attaches the
/// closed-form catalog energies.
pub fn scan_mu(grid: &[f64], config: &OptimizerConfig) -> Result<Vec<ScanRow>> {
    let mut mus = grid.to_vec();
    mus.sort_by(f64::total_cmp);
    mus.par_iter()
        .map(|&mu| {
            let r = minimize_g(mu, config)?;
            Ok(ScanRow {
                mu,
                g_min: r.g_value,
                p: r.p_value,
                h: r.h_value,
                q_abs: r.q().norm(),
                class: r.class,
                b_fit: r.b_fit,
                n_zeros: r.zero_count,
                g_phi0: 1.0,
                g_phi1: 0.5 + mu,
                g_psi1: 1.0 + (mu - 0.5) / 4.0,
                converged: r.converged,
            })
        })
        .collect()
}

pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

/// Rows with `μ < 1/2` whose minimum undercuts `G_μ(φ_1)` yet has `P ≤ 1`.
///
/// `μ ↦ G_μ(u)` is a line of slope `P(u)` through `G_{1/2}(u) ≥ 1 = G_{1/2}(φ_1)`,
/// so with `P(u) ≤ 1` it stays above `G_μ(φ_1)` for all `μ < 1/2`.
pub fn lemma_violations(rows: &[ScanRow]) -> Vec<f64> {
    rows.iter()
        .filter(|r| r.mu < 0.5 && r.g_min < r.g_phi1 - 1e-9 && r.p <= 1.0)
        .map(|r| r.mu)
        .collect()
}
