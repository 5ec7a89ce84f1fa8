#![allow(dead_code)]

use num_complex::Complex64;
use zetabound::{hurwitz_zeta_limit_oracle, HurwitzArgs};

/// Limit-representation values at three lengths, with the `x^{-s}` and
/// `x^{-s-1}` error terms eliminated (coefficients solved for, not assumed).
pub fn extrapolated_oracle(s: Complex64, w: f64, base_n: usize) -> Complex64 {
    let ns = [base_n, 2 * base_n, 4 * base_n];
    let args = HurwitzArgs::new(s, w).unwrap();
    let rows: Vec<[Complex64; 4]> = ns
        .iter()
        .map(|&n| {
            let x = Complex64::new(n as f64 + w, 0.0);
            let u = x.powc(-s);
            let v = u / x;
            let o = hurwitz_zeta_limit_oracle(&args, n).unwrap();
            [Complex64::new(1.0, 0.0), u, v, o]
        })
        .collect();
    let det3 = |c: [[Complex64; 3]; 3]| {
        c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
            - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
            + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0])
    };
    let m = |col0: usize| {
        let pick = |r: &[Complex64; 4]| [r[col0], r[1], r[2]];
        [pick(&rows[0]), pick(&rows[1]), pick(&rows[2])]
    };
    det3(m(3)) / det3(m(0))
}

/// Two-point elimination of the leading `x^{-s}` term only.
pub fn richardson_two_point(s: f64, w: f64, n1: usize, n2: usize) -> f64 {
    let args = HurwitzArgs::real(s, w).unwrap();
    let o1 = hurwitz_zeta_limit_oracle(&args, n1).unwrap().re;
    let o2 = hurwitz_zeta_limit_oracle(&args, n2).unwrap().re;
    let u1 = (n1 as f64 + w).powf(-s);
    let u2 = (n2 as f64 + w).powf(-s);
    (o1 * u2 - o2 * u1) / (u2 - u1)
}
