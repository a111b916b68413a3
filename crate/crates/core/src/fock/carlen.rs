use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// `ln ‖φ_n‖_p`, from `‖φ_n‖_p^p = (π n!)^{−p/2} π (2/p)^{np/2+1} Γ(np/2 + 1)`.
pub fn ln_lp_norm(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    let ln_pow = -0.5 * p * (PI.ln() + ln_gamma(nf + 1.0))
        + PI.ln()
        + (0.5 * nf * p + 1.0) * (2.0 / p).ln()
        + ln_gamma(0.5 * nf * p + 1.0);
    ln_pow / p
}

/// `(p/2π)^{1/p} ‖φ_n‖_p − (q/2π)^{1/q} ‖φ_n‖_q`, nonnegative for `1 ≤ p ≤ q`.
pub fn carlen_gap(n: usize, p: f64, q: f64) -> Result<f64> {
    if !(p >= 1.0) || !(q >= p) || !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p <= q < inf, got p = {p}, q = {q}"
        )));
    }
    let side = |r: f64| ((r / (2.0 * PI)).ln() / r + ln_lp_norm(n, r)).exp();
    Ok(side(p) - side(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_is_extremal() {
        for (p, q) in [(1.0, 2.0), (2.0, 4.0), (3.0, 10.0)] {
            assert!(carlen_gap(0, p, q).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn l2_norm_is_one() {
        for n in [0, 1, 5, 40] {
            assert!(ln_lp_norm(n, 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(carlen_gap(1, 0.5, 2.0).is_err());
        assert!(carlen_gap(1, 3.0, 2.0).is_err());
    }
}
