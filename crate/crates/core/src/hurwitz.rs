//! Hurwitz zeta `ζ(s, w) = Σ_{n≥0} (n + w)^{-s}` for complex `s ≠ 1` and real
//! `w > 0`.
//!
//! The production path is Euler-Maclaurin summation: `N` terms summed
//! directly, then the integral and boundary terms at `x = N + w` and `K`
//! Bernoulli corrections
//!
//! ```text
//! ζ(s, w) ≈ Σ_{n<N} (n+w)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!         + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)⋯(s+2k-2) · x^{-s-2k+1}
//! ```
//!
//! The truncation estimate is twice the magnitude of the first omitted
//! correction. The reported `abs_error_estimate` also carries a rounding
//! floor proportional to the summed term magnitudes, which dominates when
//! `w^{-σ}` is large.
//!
//! [`hurwitz_zeta_limit_oracle`] is the slow reference path for `Re(s) > 0`.

use num_complex::Complex64;
use serde::Serialize;

use crate::bernoulli::em_coefficients;
use crate::error::{Result, ZetaError};
use crate::sum::ComplexSum;

/// A complex number; the codomain of every evaluator.
pub type ComplexValue = Complex64;

/// Half-width of the band around `s = 1` that is treated as the pole.
pub const POLE_BAND: f64 = 1e-8;
/// Largest number of Bernoulli correction terms.
pub const MAX_K: usize = 60;
/// Largest direct-sum length reached by auto-escalation.
pub const MAX_N: usize = 1 << 20;

const DEFAULT_N: usize = 32;
const DEFAULT_K: usize = 4;
const DEFAULT_TARGET: f64 = 1e-15;
const MAX_SHIFT_TERMS: f64 = (1u64 << 26) as f64;

/// Validated arguments of `ζ(s, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HurwitzArgs {
    pub s: ComplexValue,
    pub w: f64,
}

impl HurwitzArgs {
    pub fn new(s: ComplexValue, w: f64) -> Result<Self> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(ZetaError::Domain(format!("s = {s} is not finite")));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(ZetaError::Domain(format!(
                "w must be a positive real, got {w}"
            )));
        }
        if s == Complex64::new(1.0, 0.0) {
            return Err(ZetaError::Pole {
                distance: 0.0,
                band: 0.0,
            });
        }
        Ok(Self { s, w })
    }

    pub fn real(sigma: f64, w: f64) -> Result<Self> {
        Self::new(Complex64::new(sigma, 0.0), w)
    }
}

/// Parameters of the Euler-Maclaurin evaluator.
///
/// With `target_abs_error` set, `n_terms` and `k_bernoulli` are starting
/// values: `K` is raised one at a time (while the correction terms keep
/// shrinking) and `N` doubles until the truncation estimate drops below the
/// target or `max_n`/`max_k` are exhausted. Without a target the pair is
/// used as given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EMConfig {
    pub n_terms: usize,
    pub k_bernoulli: usize,
    pub target_abs_error: Option<f64>,
    pub max_n: usize,
    pub max_k: usize,
    pub pole_band: f64,
}

impl Default for EMConfig {
    fn default() -> Self {
        Self {
            n_terms: DEFAULT_N,
            k_bernoulli: DEFAULT_K,
            target_abs_error: Some(DEFAULT_TARGET),
            max_n: MAX_N,
            max_k: MAX_K,
            pole_band: POLE_BAND,
        }
    }
}

impl EMConfig {
    /// Fixed `(N, K)`, no escalation.
    pub fn fixed(n_terms: usize, k_bernoulli: usize) -> Self {
        Self {
            n_terms,
            k_bernoulli,
            target_abs_error: None,
            ..Self::default()
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_abs_error = Some(target);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_terms == 0 {
            return Err(ZetaError::Parameter("n_terms must be at least 1".into()));
        }
        if self.k_bernoulli > MAX_K || self.max_k > MAX_K {
            return Err(ZetaError::Parameter(format!(
                "at most {MAX_K} Bernoulli corrections are supported"
            )));
        }
        if self.max_n < self.n_terms {
            return Err(ZetaError::Parameter(format!(
                "max_n = {} is below n_terms = {}",
                self.max_n, self.n_terms
            )));
        }
        if let Some(t) = self.target_abs_error {
            if !(t.is_finite() && t > 0.0) {
                return Err(ZetaError::Parameter(format!(
                    "target error must be positive, got {t}"
                )));
            }
        }
        if !(self.pole_band.is_finite() && self.pole_band >= 0.0) {
            return Err(ZetaError::Parameter(format!(
                "pole band must be non-negative, got {}",
                self.pole_band
            )));
        }
        Ok(())
    }
}

/// Value of an evaluator together with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: ComplexValue,
    /// Truncation estimate plus rounding floor.
    pub abs_error_estimate: f64,
    /// Twice the first omitted Euler-Maclaurin correction.
    pub truncation_estimate: f64,
    pub n_used: usize,
    pub k_used: usize,
}

/// Rejects `s` inside the pole band.
pub fn check_pole(s: ComplexValue, band: f64) -> Result<()> {
    let distance = (s - 1.0).norm();
    if distance < band || distance == 0.0 {
        return Err(ZetaError::Pole { distance, band });
    }
    Ok(())
}

/// `x^{-s}` for `x > 0`; real `s` goes through `powf`.
#[inline]
fn pow_neg(x: f64, ln_x: f64, s: Complex64) -> Complex64 {
    if s.im == 0.0 {
        Complex64::new(x.powf(-s.re), 0.0)
    } else {
        let modulus = (-s.re * ln_x).exp();
        let (sin, cos) = (s.im * ln_x).sin_cos();
        Complex64::new(modulus * cos, -modulus * sin)
    }
}

/// Relative rounding weight of a computed power `x^{-s}`.
#[inline]
fn power_weight(s: Complex64, ln_x: f64) -> f64 {
    4.0 + s.norm() * ln_x.abs()
}

fn ensure_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(ZetaError::Overflow(format!(
            "{what} is not representable in binary64"
        )))
    }
}

/// Smallest `K` with `Re(s) + 2K + 1 > 0`, i.e. a convergent remainder.
fn min_tail_terms(sigma: f64) -> usize {
    if sigma + 1.0 > 0.0 {
        0
    } else {
        ((-sigma - 1.0) / 2.0).floor() as usize + 1
    }
}

/// One Euler-Maclaurin evaluation at a fixed `N`, reusable for every `K`.
struct EmPlan {
    s: Complex64,
    n: usize,
    ln_x: f64,
    /// direct sum + integral + boundary term
    base: ComplexSum,
    magnitude: f64,
    /// `tail[k]` is the `k`-th correction, `tail[0]` unused.
    tail: Vec<Complex64>,
}

impl EmPlan {
    fn new(s: Complex64, w: f64, n: usize) -> Result<Self> {
        let mut base = ComplexSum::new();
        let mut magnitude = 0.0;
        for j in (0..n).rev() {
            let x = j as f64 + w;
            let ln_x = x.ln();
            let term = pow_neg(x, ln_x, s);
            base.add(term);
            magnitude += term.norm() * power_weight(s, ln_x);
        }

        let x = n as f64 + w;
        let ln_x = x.ln();
        let x_pow = ensure_finite(pow_neg(x, ln_x, s), "(N+w)^{-s}")?;
        let integral = ensure_finite(x * x_pow / (s - 1.0), "(N+w)^{1-s}/(s-1)")?;
        let half = 0.5 * x_pow;
        let weight = power_weight(s, ln_x);
        base.add(integral);
        base.add(half);
        magnitude += (integral.norm() + half.norm()) * weight;

        let coeffs = em_coefficients();
        let inv_x2 = 1.0 / (x * x);
        let mut tail = Vec::with_capacity(coeffs.len());
        tail.push(Complex64::new(0.0, 0.0));
        // rising factorial s(s+1)...(s+2k-2) times x^{-(2k-1)}
        let mut rising = s / x;
        for (k, &c) in coeffs.iter().enumerate().skip(1) {
            tail.push(c * x_pow * rising);
            let kk = 2.0 * k as f64;
            rising = rising * (s + (kk - 1.0)) * (s + kk) * inv_x2;
        }

        Ok(Self {
            s,
            n,
            ln_x,
            base,
            magnitude,
            tail,
        })
    }

    fn term_norm(&self, k: usize) -> f64 {
        self.tail.get(k).map_or(f64::INFINITY, |t| t.norm())
    }

    fn result(&self, k: usize) -> Result<EvalResult> {
        let mut acc = self.base;
        let mut magnitude = self.magnitude;
        let weight = power_weight(self.s, self.ln_x);
        for j in (1..=k).rev() {
            let t = self.tail[j];
            acc.add(t);
            magnitude += t.norm() * (weight + 2.0 * j as f64);
        }
        let value = ensure_finite(acc.total(), "zeta(s, w)")?;
        let truncation_estimate = 2.0 * self.term_norm(k + 1);
        let rounding = 2.0 * f64::EPSILON * magnitude;
        let abs_error_estimate = truncation_estimate + rounding;
        if !abs_error_estimate.is_finite() {
            return Err(ZetaError::Overflow("error estimate is not finite".into()));
        }
        Ok(EvalResult {
            value,
            abs_error_estimate,
            truncation_estimate,
            n_used: self.n,
            k_used: k,
        })
    }
}

/// Evaluates `ζ(s, w)` by Euler-Maclaurin summation.
pub fn hurwitz_zeta(args: &HurwitzArgs, cfg: &EMConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let HurwitzArgs { s, w } = *args;
    check_pole(s, cfg.pole_band)?;
    if !w.powf(-s.re).is_finite() {
        return Err(ZetaError::Overflow(format!(
            "w^(-sigma) overflows for w = {w:e}, sigma = {}",
            s.re
        )));
    }
    let k_min = min_tail_terms(s.re);
    if k_min > cfg.max_k {
        return Err(ZetaError::Domain(format!(
            "Re(s) = {} needs more than {} Bernoulli corrections",
            s.re, cfg.max_k
        )));
    }

    let Some(target) = cfg.target_abs_error else {
        if cfg.k_bernoulli < k_min {
            return Err(ZetaError::Parameter(format!(
                "Re(s) + 2K + 1 must be positive; K = {} is too small for Re(s) = {}",
                cfg.k_bernoulli, s.re
            )));
        }
        return EmPlan::new(s, w, cfg.n_terms)?.result(cfg.k_bernoulli);
    };

    let mut n = cfg.n_terms;
    let mut best: Option<EvalResult> = None;
    loop {
        let plan = EmPlan::new(s, w, n)?;
        for k in cfg.k_bernoulli.max(k_min)..=cfg.max_k {
            let r = plan.result(k)?;
            if best.is_none_or(|b| r.truncation_estimate < b.truncation_estimate) {
                best = Some(r);
            }
            if r.truncation_estimate <= target {
                return Ok(r);
            }
            // asymptotic series started to diverge at this N
            if k > k_min && plan.term_norm(k + 2) >= plan.term_norm(k + 1) {
                break;
            }
        }
        if n.saturating_mul(2) > cfg.max_n {
            break;
        }
        n *= 2;
    }
    Err(ZetaError::Precision {
        target,
        max_n: cfg.max_n,
        max_k: cfg.max_k,
        best: Box::new(best.expect("at least one evaluation")),
    })
}

/// `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(s: ComplexValue, cfg: &EMConfig) -> Result<EvalResult> {
    hurwitz_zeta(&HurwitzArgs::new(s, 1.0)?, cfg)
}

/// The limit representation `Σ_{n=0}^{N} (n+w)^{-s} - (N+w)^{1-s}/(1-s)`,
/// valid for `Re(s) > 0`. Converges like `(N+w)^{-σ}`; reference use only.
pub fn hurwitz_zeta_limit_oracle(args: &HurwitzArgs, n_terms: usize) -> Result<ComplexValue> {
    let HurwitzArgs { s, w } = *args;
    if s.re <= 0.0 {
        return Err(ZetaError::Domain(format!(
            "limit representation needs Re(s) > 0, got {}",
            s.re
        )));
    }
    check_pole(s, POLE_BAND)?;
    if n_terms == 0 {
        return Err(ZetaError::Parameter("n_terms must be at least 1".into()));
    }
    let mut acc = ComplexSum::new();
    for j in (0..=n_terms).rev() {
        let x = j as f64 + w;
        acc.add(pow_neg(x, x.ln(), s));
    }
    let x = n_terms as f64 + w;
    let one_minus_s = 1.0 - s;
    let x_pow = if s.im == 0.0 {
        Complex64::new(x.powf(one_minus_s.re), 0.0)
    } else {
        Complex64::new(x, 0.0).powc(one_minus_s)
    };
    acc.add(-x_pow / one_minus_s);
    ensure_finite(acc.total(), "limit representation")
}

/// Result of stripping integer shifts from `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftReduction {
    /// `w - ⌈w⌉ + 1`, in `(0, 1]`.
    pub reduced_w: f64,
    /// `Σ_{j=0}^{m-1} (reduced_w + j)^{-s}` with `m = ⌈w⌉ - 1`, so that
    /// `ζ(s, w) = ζ(s, reduced_w) - correction`.
    pub correction: ComplexValue,
}

/// Applies `ζ(s, w) = ζ(s, w + 1) + w^{-s}` until the shift lies in `(0, 1]`.
pub fn shift_reduce(args: &HurwitzArgs) -> Result<ShiftReduction> {
    let HurwitzArgs { s, w } = *args;
    if w <= 1.0 {
        return Ok(ShiftReduction {
            reduced_w: w,
            correction: Complex64::new(0.0, 0.0),
        });
    }
    let m = w.ceil() - 1.0;
    if m > MAX_SHIFT_TERMS {
        return Err(ZetaError::Parameter(format!(
            "shift w = {w:e} needs more than {MAX_SHIFT_TERMS} reduction steps"
        )));
    }
    // exact: w lies in (m, m + 1] ⊂ [m, 2m]
    let reduced_w = w - m;
    let mut acc = ComplexSum::new();
    for j in (0..m as usize).rev() {
        let x = reduced_w + j as f64;
        acc.add(pow_neg(x, x.ln(), s));
    }
    Ok(ShiftReduction {
        reduced_w,
        correction: ensure_finite(acc.total(), "shift correction")?,
    })
}
