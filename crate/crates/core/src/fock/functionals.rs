use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::FockCoefficients;

/// `M(u) = Σ |a_n|²`.
pub fn mass(u: &FockCoefficients) -> f64 {
    u.as_slice().iter().map(|a| a.norm_sqr()).sum()
}

/// `P(u) = Σ n |a_n|²`.
pub fn angular_momentum(u: &FockCoefficients) -> f64 {
    u.as_slice()
        .iter()
        .enumerate()
        .map(|(n, a)| n as f64 * a.norm_sqr())
        .sum()
}

/// `Q(u) = Σ √(n+1) a_n conj(a_{n+1})`.
pub fn magnetic_momentum(u: &FockCoefficients) -> Complex64 {
    u.as_slice()
        .windows(2)
        .enumerate()
        .map(|(n, w)| ((n + 1) as f64).sqrt() * w[0] * w[1].conj())
        .sum()
}

/// Square roots of binomial probabilities `√(C(j,n) / 2^j)` for all pairs
/// `n + m = j` with `n, m ≤ N`.
///
/// These are the only weights the quartic term needs:
/// `(j!/2^j) |Σ a_n a_m / √(n! m!)|² = |Σ √(C(j,n)/2^j) a_n a_m|²`.
/// Rows are built outward from the central binomial so nothing overflows or
/// underflows before the true value does.
#[derive(Clone, Debug)]
pub struct PairWeights {
    truncation: usize,
    rows: Vec<Vec<f64>>,
}

impl PairWeights {
    pub fn new(truncation: usize) -> Self {
        let n_max = truncation;
        let mut rows = Vec::with_capacity(2 * n_max + 1);
        // Central probability b(j, ⌊j/2⌋), advanced incrementally in j.
        let mut central = 1.0f64;
        for j in 0..=2 * n_max {
            if j > 0 {
                let prev = j - 1;
                if prev % 2 == 0 {
                    let m = (prev / 2) as f64;
                    central *= (2.0 * m + 1.0) / (2.0 * (m + 1.0));
                }
            }
            let lo = j.saturating_sub(n_max);
            let hi = j.min(n_max);
            let mid = j / 2;
            let mut probs = vec![0.0f64; j + 1];
            probs[mid] = central;
            for n in mid..j {
                probs[n + 1] = probs[n] * (j - n) as f64 / (n + 1) as f64;
            }
            for n in (1..=mid).rev() {
                probs[n - 1] = probs[n] * n as f64 / (j - n + 1) as f64;
            }
            rows.push(probs[lo..=hi].iter().map(|p| p.sqrt()).collect());
        }
        PairWeights { truncation, rows }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Lowest first index `n` in row `j`.
    pub(crate) fn row_start(&self, j: usize) -> usize {
        j.saturating_sub(self.truncation)
    }

    pub(crate) fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    /// `c̃_j = Σ_{n+m=j} √(C(j,n)/2^j) a_n a_m` for every `j ≤ 2N`.
    pub fn pair_sums(&self, a: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(a.len(), self.truncation + 1);
        (0..self.rows.len())
            .map(|j| {
                let lo = self.row_start(j);
                self.rows[j]
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        let n = lo + i;
                        *w * a[n] * a[j - n]
                    })
                    .sum()
            })
            .collect()
    }

    /// `8πH(u) = Σ_j |c̃_j|²`.
    pub fn quartic(&self, a: &[Complex64]) -> f64 {
        self.pair_sums(a).iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `H(u) = (1/8π) Σ_j (j!/2^j) |Σ_{n+p=j} a_n a_p / √(n! p!)|²`.
pub fn hamiltonian(u: &FockCoefficients) -> f64 {
    PairWeights::new(u.truncation()).quartic(u.as_slice()) / (8.0 * PI)
}

/// Every conserved and derived functional of one state at a given `μ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub mu: f64,
    pub mass: f64,
    pub angular_momentum: f64,
    pub magnetic_momentum: [f64; 2],
    pub hamiltonian: f64,
    /// `B = 4πH + (MP − |Q|²)/4 − M²/2`
    pub b: f64,
    /// `E = 4πH + MP/4 − M²/2 = B + |Q|²/4`
    pub e: f64,
    /// `G_μ = 8πH + μP`
    pub g: f64,
    /// `F_μ = 8πH + M(μP − M)`
    pub f: f64,
}

impl FunctionalReport {
    pub fn q(&self) -> Complex64 {
        Complex64::new(self.magnetic_momentum[0], self.magnetic_momentum[1])
    }
}

pub fn functionals(u: &FockCoefficients, mu: f64) -> FunctionalReport {
    let m = mass(u);
    let p = angular_momentum(u);
    let q = magnetic_momentum(u);
    let h = hamiltonian(u);
    let e = 4.0 * PI * h + 0.25 * m * p - 0.5 * m * m;
    let b = e - 0.25 * q.norm_sqr();
    FunctionalReport {
        mu,
        mass: m,
        angular_momentum: p,
        magnetic_momentum: [q.re, q.im],
        hamiltonian: h,
        b,
        e,
        g: 8.0 * PI * h + mu * p,
        f: 8.0 * PI * h + m * (mu * p - m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(n: usize, trunc: usize) -> FockCoefficients {
        FockCoefficients::basis(n, trunc).unwrap()
    }

    // Direct quadruple sum from the closed form of H, with exact factorials.
    fn hamiltonian_quadruple_sum(a: &[Complex64]) -> f64 {
        let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
        let n = a.len();
        let mut acc = c(0.0, 0.0);
        for k in 0..n {
            for l in 0..n {
                for m in 0..n {
                    if k + l < m || k + l - m >= n {
                        continue;
                    }
                    let q = k + l - m;
                    let w = fact(k + l)
                        / 2f64.powi((k + l) as i32)
                        / (fact(k) * fact(l) * fact(m) * fact(q)).sqrt();
                    acc += w * a[k].conj() * a[l].conj() * a[m] * a[q];
                }
            }
        }
        acc.re / (8.0 * PI)
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass(&FockCoefficients::new(vec![c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap()), 1.0);
        assert_eq!(mass(&FockCoefficients::zeros(5)), 0.0);
    }

    #[test]
    fn momenta_examples() {
        assert_eq!(angular_momentum(&basis(1, 4)), 1.0);
        assert_eq!(magnetic_momentum(&basis(0, 4)), c(0.0, 0.0));
        let s = 1.0 / 2f64.sqrt();
        let u = FockCoefficients::new(vec![c(s, 0.), c(s, 0.), c(0., 0.)]).unwrap();
        assert!((magnetic_momentum(&u) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hamiltonian_examples() {
        assert!((8.0 * PI * hamiltonian(&basis(0, 6)) - 1.0).abs() < 1e-15);
        // (2n)!/(2^{2n} n!²) at n = 2 is 6/16
        assert!((8.0 * PI * hamiltonian(&basis(2, 6)) - 0.375).abs() < 1e-15);
        assert!((hamiltonian(&basis(2, 6)) - 3.0 / (64.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn hamiltonian_matches_quadruple_sum() {
        let a: Vec<Complex64> = (0..7)
            .map(|n| c((n as f64 * 0.7).sin(), (n as f64 * 1.3).cos() * 0.5))
            .collect();
        let u = FockCoefficients::new(a.clone()).unwrap();
        let direct = hamiltonian_quadruple_sum(&a);
        assert!((hamiltonian(&u) - direct).abs() < 1e-13 * direct.abs().max(1.0));
    }

    #[test]
    fn weights_survive_large_truncation() {
        let w = PairWeights::new(400);
        // C(800, 400) / 2^800 ≈ 0.02820...
        let central = w.row(800)[400 - w.row_start(800)];
        let expect = (1.0 / (400.0 * PI)).sqrt() * (1.0 - 1.0 / 3200.0);
        assert!((central * central - expect).abs() / expect < 1e-6);
        assert!(w.rows.iter().flatten().all(|x| x.is_finite()));
    }

    #[test]
    fn b_vanishes_on_first_modes() {
        for mu in [0.1, 0.5, 0.9] {
            assert!(functionals(&basis(0, 8), mu).b.abs() < 1e-15);
            assert!(functionals(&basis(1, 8), mu).b.abs() < 1e-15);
            assert!((functionals(&basis(2, 8), mu).b - 3.0 / 16.0).abs() < 1e-15);
        }
    }
}
