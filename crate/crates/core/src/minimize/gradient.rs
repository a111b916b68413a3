use num_complex::Complex64;

use crate::fock::{FockCoefficients, PairWeights};

/// `G_μ = 8πH + μP` together with the quantities the optimizer reuses.
#[derive(Clone, Debug)]
pub struct Objective {
    pub mu: f64,
    weights: PairWeights,
}

impl Objective {
    pub fn new(mu: f64, truncation: usize) -> Self {
        Objective { mu, weights: PairWeights::new(truncation) }
    }

    pub fn truncation(&self) -> usize {
        self.weights.truncation()
    }

    pub fn value(&self, a: &[Complex64]) -> f64 {
        let p: f64 = a.iter().enumerate().map(|(n, x)| n as f64 * x.norm_sqr()).sum();
        self.weights.quartic(a) + self.mu * p
    }

    /// `2 ∂G_μ/∂ā_k`, so that `d/dt G(a + t e_k) = Re g_k` and
    /// `d/dt G(a + i t e_k) = Im g_k`.
    ///
    /// ```text
    /// g_k = 4 Σ_j w_{j,k} c̃_j conj(a_{j−k}) + 2μ k a_k,   c̃_j = Σ_n w_{j,n} a_n a_{j−n}
    /// ```
    pub fn value_and_gradient(&self, a: &[Complex64]) -> (f64, Vec<Complex64>) {
        let n_max = a.len() - 1;
        let c = self.weights.pair_sums(a);
        let quartic: f64 = c.iter().map(|x| x.norm_sqr()).sum();
        let mut p = 0.0;
        let mut g = vec![Complex64::new(0.0, 0.0); a.len()];
        for (k, gk) in g.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, cj) in c.iter().enumerate().skip(k).take(n_max + 1) {
                let row = self.weights.row(j);
                acc += row[k - self.weights.row_start(j)] * cj * a[j - k].conj();
            }
            *gk = 4.0 * acc + 2.0 * self.mu * k as f64 * a[k];
            p += k as f64 * a[k].norm_sqr();
        }
        (quartic + self.mu * p, g)
    }
}

/// Wirtinger gradient `2 ∂G_μ/∂ā` of `G_μ = 8πH + μP` at `u`.
pub fn wirtinger_gradient(u: &FockCoefficients, mu: f64) -> Vec<Complex64> {
    Objective::new(mu, u.truncation()).value_and_gradient(u.as_slice()).1
}

/// `8πH + μP` without building a full report.
pub fn g_value(u: &FockCoefficients, mu: f64) -> f64 {
    Objective::new(mu, u.truncation()).value(u.as_slice())
}

/// Real inner product `Re Σ conj(x_n) y_n`.
pub(crate) fn real_dot(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Tangent part `g − Re⟨g, u⟩ u / M(u)` of a gradient at `u`.
pub fn project_tangent(u: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let m = real_dot(u, u);
    let lambda = real_dot(u, g) / m;
    g.iter().zip(u).map(|(gi, ui)| gi - lambda * ui).collect()
}

/// `‖∇G_μ(u) − λu‖` with `λ = Re⟨∇G_μ(u), u⟩`, for unit-mass `u`.
pub fn lagrange_residual(u: &FockCoefficients, mu: f64) -> f64 {
    let g = wirtinger_gradient(u, mu);
    real_dot(&project_tangent(u.as_slice(), &g), &project_tangent(u.as_slice(), &g)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::functionals;

    #[test]
    fn value_matches_report() {
        let u = FockCoefficients::new(
            (0..9).map(|n| Complex64::new((n as f64).cos(), 0.3 * n as f64)).collect(),
        )
        .unwrap();
        let r = functionals(&u, 0.37);
        assert!((g_value(&u, 0.37) - r.g).abs() < 1e-12 * r.g);
    }

    #[test]
    fn stationary_modes() {
        for n in [0, 1, 3] {
            let u = FockCoefficients::basis(n, 12).unwrap();
            assert!(lagrange_residual(&u, 0.3) < 1e-14);
        }
    }

    #[test]
    fn finite_differences() {
        let a: Vec<Complex64> = (0..13)
            .map(|n| Complex64::new((1.7 * n as f64).sin(), (0.9 * n as f64).cos()) / (1.0 + n as f64))
            .collect();
        let obj = Objective::new(0.6, 12);
        let (_, g) = obj.value_and_gradient(&a);
        let h = 1e-6;
        for k in 0..a.len() {
            for (dir, part) in [(Complex64::new(1.0, 0.0), g[k].re), (Complex64::new(0.0, 1.0), g[k].im)] {
                let mut plus = a.clone();
                let mut minus = a.clone();
                plus[k] += h * dir;
                minus[k] -= h * dir;
                let fd = (obj.value(&plus) - obj.value(&minus)) / (2.0 * h);
                assert!((fd - part).abs() <= 1e-6 * part.abs().max(1.0), "k = {k}");
            }
        }
    }
}
