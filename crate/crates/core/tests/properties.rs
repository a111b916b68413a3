use std::f64::consts::PI;

use lll_core::fock::{
    angular_momentum, apply_phase, apply_rotation, apply_translation, carlen_gap, functionals, ln_lp_norm,
    magnetic_momentum, mass, FockCoefficients,
};
use lll_core::minimize::{phi_energies, semiclassical};
use lll_core::spectra::build_b_block;
use num_complex::Complex64;
use proptest::prelude::*;

fn coeffs(len: usize) -> impl Strategy<Value = FockCoefficients> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len..=len).prop_filter_map("zero state", |v| {
        let a: Vec<Complex64> = v
            .into_iter()
            .enumerate()
            .map(|(n, (re, im))| Complex64::new(re, im) * (-(n as f64) / 4.0).exp())
            .collect();
        FockCoefficients::new(a).ok()?.normalized().ok()
    })
}

fn alpha() -> impl Strategy<Value = Complex64> {
    (0.0f64..1.5, 0.0f64..(2.0 * PI)).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Composite Simpson rule on `[0, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, b: f64, n: usize) -> f64 {
    let h = b / n as f64;
    let inner: f64 = (1..n).map(|i| f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(0.0) + inner + f(b)) * h / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e_is_nonnegative(u in coeffs(12)) {
        let r = functionals(&u, 0.5);
        prop_assert!(r.e >= -1e-13, "E = {}", r.e);
    }

    #[test]
    fn f_half_is_twice_e(u in coeffs(12)) {
        let r = functionals(&u, 0.5);
        prop_assert!((r.f - 2.0 * r.e).abs() < 1e-12);
    }

    #[test]
    fn f_bounded_by_p_above_half(u in coeffs(10), mu in 0.5f64..3.0) {
        let r = functionals(&u, mu);
        prop_assert!(r.f >= (mu - 0.5) * r.angular_momentum * r.mass - 1e-12);
    }

    #[test]
    fn phase_and_rotation_keep_b(u in coeffs(10), gamma in 0.0f64..6.3, theta in 0.0f64..6.3) {
        let b = functionals(&u, 0.5).b;
        let moved = apply_rotation(&apply_phase(&u, gamma), theta);
        prop_assert!((functionals(&moved, 0.5).b - b).abs() < 1e-13);
    }

    #[test]
    fn translation_laws(u in coeffs(14), a in alpha()) {
        let u = u.resized(96);
        let t = apply_translation(&u, a).unwrap();
        let q = magnetic_momentum(&u);
        prop_assert!((mass(&t) - 1.0).abs() < 1e-12);
        prop_assert!((magnetic_momentum(&t) - (q - a)).norm() < 1e-11);
        let p = angular_momentum(&u) - 2.0 * (a.conj() * q).re + a.norm_sqr();
        prop_assert!((angular_momentum(&t) - p).abs() < 1e-11);
        let (b0, b1) = (functionals(&u, 0.5).b, functionals(&t, 0.5).b);
        prop_assert!((b0 - b1).abs() <= 1e-10 * b0.abs().max(1e-3));
    }

    #[test]
    fn b_is_the_block_quadratic_form(u in coeffs(7)) {
        // B(u) = Σ_j Σ_{k,l} B^{(j)}_{kl} conj(A_jk) A_jl,  A_jk = a_k a_{j−k}/√(k!(j−k)!)
        let n = u.truncation();
        let fact: Vec<f64> = (0..=2 * n).scan(1.0, |f, k| { if k > 0 { *f *= k as f64; } Some(*f) }).collect();
        let a = |k: usize| u.get(k);
        let mut total = 0.0;
        for j in 0..=2 * n {
            let block = build_b_block(j);
            let big_a: Vec<Complex64> = (0..=j)
                .map(|k| if k <= n && j - k <= n { a(k) * a(j - k) / (fact[k] * fact[j - k]).sqrt() } else { Complex64::new(0.0, 0.0) })
                .collect();
            for k in 0..=j {
                for l in 0..=j {
                    total += block.get(k, l).to_f64() * (big_a[k].conj() * big_a[l]).re;
                }
            }
        }
        let b = functionals(&u, 0.5).b;
        prop_assert!((total - b).abs() < 1e-12, "blocks {total} vs functional {b}");
    }
}

#[test]
fn carlen_norms_match_quadrature() {
    // ‖φ_n‖_p^p = 2π ∫ (rⁿ e^{−r²/2}/√(π n!))^p r dr
    let n = 3;
    let norm = |p: f64| {
        let c = 1.0 / (PI * 6.0f64).sqrt();
        let f = |r: f64| (c * r.powi(n) * (-0.5 * r * r).exp()).powf(p) * r;
        (2.0 * PI * simpson(f, 14.0, 20_000)).powf(1.0 / p)
    };
    for p in [2.0, 6.0] {
        assert!((norm(p).ln() - ln_lp_norm(n as usize, p)).abs() < 1e-10, "p = {p}");
    }
    let side = |r: f64| (r / (2.0 * PI)).powf(1.0 / r) * norm(r);
    let gap = carlen_gap(3, 2.0, 6.0).unwrap();
    assert!((gap - (side(2.0) - side(6.0))).abs() < 1e-10);
    assert!(gap > 0.0);
}

#[test]
fn semiclassical_energies_match_quadrature() {
    for (na, h) in [(10.0, 0.5), (40.0, 0.3), (3.0, 0.8)] {
        let g = na * (1.0 - h * h);
        // E_h(u) = 2π ∫ (r²|u|² + g/2 |u|⁴) r dr, radial u
        let energy = |u: &dyn Fn(f64) -> f64| {
            let f = |r: f64| {
                let x = u(r).powi(2);
                (r * r * x + 0.5 * g * x * x) * r
            };
            2.0 * PI * simpson(f, 20.0 * h.sqrt(), 20_000)
        };
        let phi0 = |r: f64| (-r * r / (2.0 * h)).exp() / (PI * h).sqrt();
        let phi1 = |r: f64| r / h.sqrt() * (-r * r / (2.0 * h)).exp() / (PI * h).sqrt();
        let (e0, e1) = phi_energies(g, h);
        assert!((energy(&phi0) - e0).abs() < 1e-10 * e0, "φ_0 at ({na}, {h})");
        assert!((energy(&phi1) - e1).abs() < 1e-10 * e1, "φ_1 at ({na}, {h})");
        let r = semiclassical(na, h).unwrap();
        assert_eq!((r.e_phi0, r.e_phi1), (e0, e1));
    }
}
