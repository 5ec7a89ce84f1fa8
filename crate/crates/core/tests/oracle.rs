//! Euler-Maclaurin evaluator against the limit-representation oracle.

mod common;

use std::f64::consts::PI;

use common::{extrapolated_oracle, richardson_two_point};
use num_complex::Complex64;
use zetabound::{hurwitz_zeta, hurwitz_zeta_limit_oracle, riemann_zeta, EMConfig, HurwitzArgs};

#[test]
fn zeta_one_half_from_oracle() {
    let two_point = richardson_two_point(0.5, 1.0, 1_000_000, 2_000_000);
    let three_point = extrapolated_oracle(Complex64::new(0.5, 0.0), 1.0, 250_000).re;
    // the two extrapolations confirm each other
    assert!((two_point - three_point).abs() < 1e-10);
    assert!((three_point - (-1.4603545088095868)).abs() < 1e-12);

    let em = riemann_zeta(Complex64::new(0.5, 0.0), &EMConfig::default()).unwrap();
    assert!((em.value.re - three_point).abs() < 1e-10);
}

#[test]
fn basel_from_oracle() {
    let oracle = hurwitz_zeta_limit_oracle(&HurwitzArgs::real(2.0, 1.0).unwrap(), 1_000_000)
        .unwrap()
        .re;
    let em = riemann_zeta(Complex64::new(2.0, 0.0), &EMConfig::default()).unwrap();
    // oracle error is about N^{-2}/2
    assert!((oracle - em.value.re).abs() < 1e-12);
    assert!((em.value.re - PI * PI / 6.0).abs() < 1e-12);
}

#[test]
fn half_shift_at_one_half() {
    let oracle = extrapolated_oracle(Complex64::new(0.5, 0.0), 0.5, 250_000).re;
    let expected = (2f64.sqrt() - 1.0) * -1.4603545088095868;
    assert!((oracle - expected).abs() < 1e-11);
    assert!((oracle + 0.6049).abs() < 1e-4);
}

#[test]
fn agreement_with_unextrapolated_oracle() {
    // |EM - oracle(N)| <= max(10 N^{-σ}, EM estimate), N = 1e6
    let n = 1_000_000usize;
    let cfg = EMConfig::default();
    for &(sigma, t) in &[
        (0.2, 0.0),
        (0.5, 3.0),
        (0.9, -7.0),
        (1.5, 0.0),
        (2.5, 10.0),
        (3.0, 0.0),
    ] {
        for &w in &[0.3, 1.0, 4.5] {
            let s = Complex64::new(sigma, t);
            let args = HurwitzArgs::new(s, w).unwrap();
            let em = hurwitz_zeta(&args, &cfg).unwrap();
            let oracle = hurwitz_zeta_limit_oracle(&args, n).unwrap();
            let allowed = (10.0 * (n as f64).powf(-sigma)).max(em.abs_error_estimate);
            assert!(
                (em.value - oracle).norm() <= allowed,
                "s={s} w={w}: diff {} allowed {allowed}",
                (em.value - oracle).norm()
            );
        }
    }
}

#[test]
fn error_estimate_is_honest_on_validation_grid() {
    let sigmas = [0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.0, 3.0];
    let shifts = [0.25, 0.5, 1.0, 2.0];
    let heights = [0.0, 5.0];
    let configs = [(4, 1), (4, 2), (8, 2), (8, 3), (16, 2)];
    let mut total = 0;
    let mut honest = 0;
    let mut worst_ratio: f64 = 0.0;
    for &sigma in &sigmas {
        for &w in &shifts {
            for &t in &heights {
                let s = Complex64::new(sigma, t);
                let reference = extrapolated_oracle(s, w, 2_000);
                let args = HurwitzArgs::new(s, w).unwrap();
                for &(n, k) in &configs {
                    let r = hurwitz_zeta(&args, &EMConfig::fixed(n, k)).unwrap();
                    let err = (r.value - reference).norm();
                    total += 1;
                    if err <= r.abs_error_estimate {
                        honest += 1;
                    }
                    worst_ratio = worst_ratio.max(err / r.abs_error_estimate);
                }
            }
        }
    }
    let rate = honest as f64 / total as f64;
    assert!(
        rate >= 0.99,
        "honest in {honest}/{total}, worst ratio {worst_ratio}"
    );
}
