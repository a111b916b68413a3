//! Minimization of `G_μ = 8πH + μP` on the unit mass sphere.

mod classify;
mod gradient;
mod mu0;
mod optimizer;
mod scan;
mod semiclassical;
mod zeros;

pub use classify::{classify, fit_b, rotation_overlap, Class, Classification, CLASS_THRESHOLD};
pub use gradient::{g_value, lagrange_residual, project_tangent, wirtinger_gradient, Objective};
pub use mu0::{estimate_mu0, Mu0Estimate, MU0_LOWER, MU0_UPPER};
pub use optimizer::{
    descend, initial_points, minimize_g, minimize_g_from, Descent, MinimizationResult,
    OptimizerConfig, DEFAULT_ZERO_RADIUS,
};
pub use scan::{lemma_violations, rows_to_csv, scan_mu, ScanRow, CSV_HEADER};
pub use semiclassical::{
    phi_energies, semiclassical, threshold_h, Regime, SemiclassicalReport, KAPPA_INF, KAPPA_ZERO,
};
pub use zeros::{count_zeros, monomial_coefficients, winding_number, ZeroReport, TRIM_THRESHOLD};
