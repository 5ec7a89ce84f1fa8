//! The closed-form upper bound `ζ(σ, w) < (1-σ-w) / ((1-σ) w^σ)` for real
//! `σ > 0, σ ≠ 1`, the defect sequence `λ_N` behind it, and the real-axis
//! certificates that follow.
//!
//! `λ_N = Σ_{n=1}^{N} [(n+w)^{-σ} - ∫_{n-1}^{n} (x+w)^{-σ} dx]` is negative and
//! strictly decreasing, and
//!
//! ```text
//! Σ_{n=0}^{N} (n+w)^{-σ} - (N+w)^{1-σ}/(1-σ) = bound(σ, w) + λ_N
//! ```
//!
//! holds exactly for every `N`, so `ζ(σ, w) = bound + lim λ_N < bound`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{
    CertificateKind, Certification, CompositeCertificate, Conclusion, Evidence, Interval, Refusal,
    ScanRecord, Sign, Subject, ZeroFreeCertificate,
};
use crate::dirichlet::{dirichlet_l, DirichletCharacter};
use crate::error::{Result, ZetaError};
use crate::hurwitz::{hurwitz_zeta, riemann_zeta, ComplexValue, EMConfig, HurwitzArgs, POLE_BAND};
use crate::sum::{two_sum, CompensatedSum};

/// Indices at which [`verify_inequality`] samples `λ_N`.
pub const LAMBDA_SAMPLE_POINTS: [usize; 4] = [1, 10, 100, 1000];

const MAX_SCAN_POINTS: usize = 10_000_000;

/// A real point `(σ, w)` with `σ > 0` outside the pole band and `w > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealArgs {
    pub sigma: f64,
    pub w: f64,
}

impl RealArgs {
    pub fn new(sigma: f64, w: f64) -> Result<Self> {
        Self::with_band(sigma, w, POLE_BAND)
    }

    pub fn with_band(sigma: f64, w: f64, band: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(ZetaError::Domain(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(ZetaError::Domain(format!("w must be positive, got {w}")));
        }
        let distance = (sigma - 1.0).abs();
        if distance < band || distance == 0.0 {
            return Err(ZetaError::Pole { distance, band });
        }
        Ok(Self { sigma, w })
    }
}

/// `(1-σ-w) / ((1-σ) w^σ)` in binary64.
pub fn theorem_bound(args: &RealArgs) -> Result<f64> {
    let RealArgs { sigma, w } = *args;
    let w_pow = w.powf(sigma);
    if !(w_pow.is_finite() && w_pow > 0.0) {
        return Err(ZetaError::Overflow(format!(
            "w^sigma is not representable for w = {w:e}, sigma = {sigma}"
        )));
    }
    let bound = (1.0 - sigma - w) / ((1.0 - sigma) * w_pow);
    if !bound.is_finite() {
        return Err(ZetaError::Overflow(format!(
            "bound is not representable for sigma = {sigma}, w = {w:e}"
        )));
    }
    Ok(bound)
}

/// Exact sign of `1 - (σ + w)` for the binary64 inputs.
fn numerator_sign(sigma: f64, w: f64) -> Ordering {
    let (s, e) = two_sum(sigma, w);
    match s.partial_cmp(&1.0).expect("finite") {
        Ordering::Equal => 0.0.partial_cmp(&e).expect("finite"),
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
    }
}

/// Exact sign of the closed-form bound (no rounding involved).
pub fn bound_sign(args: &RealArgs) -> Ordering {
    let num = numerator_sign(args.sigma, args.w);
    if args.sigma < 1.0 {
        num
    } else {
        num.reverse()
    }
}

/// `1 - σ <= w`, decided exactly.
pub fn hypothesis_holds(sigma: f64, w: f64) -> bool {
    numerator_sign(sigma, w) != Ordering::Greater
}

/// The `n`-th summand of `λ_N`, with the inner integral in closed form:
/// `(n+w)^{-σ} - [(n+w)^{1-σ} - (n-1+w)^{1-σ}] / (1-σ)`.
pub fn lambda_term(n: usize, args: &RealArgs) -> Result<f64> {
    if n == 0 {
        return Err(ZetaError::Parameter("lambda index starts at 1".into()));
    }
    let RealArgs { sigma, w } = *args;
    let right = n as f64 + w;
    let left = (n - 1) as f64 + w;
    let a = 1.0 - sigma;
    // x1^a - x0^a = x0^a · expm1(a · ln(1 + 1/x0)), stable for σ near 1 and large n
    let integral = left.powf(a) * (a * (1.0 / left).ln_1p()).exp_m1() / a;
    let term = right.powf(-sigma) - integral;
    if !term.is_finite() {
        return Err(ZetaError::Overflow(format!(
            "lambda term {n} is not finite"
        )));
    }
    Ok(term)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaSample {
    pub n: usize,
    pub lambda: f64,
}

/// `λ_1 ..= λ_{n_max}` by compensated accumulation of [`lambda_term`].
pub fn lambda_sequence(args: &RealArgs, n_max: usize) -> Result<Vec<LambdaSample>> {
    if n_max == 0 {
        return Err(ZetaError::Parameter("n_max must be at least 1".into()));
    }
    let mut acc = CompensatedSum::new();
    (1..=n_max)
        .map(|n| {
            acc.add(lambda_term(n, args)?);
            Ok(LambdaSample {
                n,
                lambda: acc.total(),
            })
        })
        .collect()
}

/// Comparison of `ζ(σ, w)` with the closed-form bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub args: RealArgs,
    pub bound: f64,
    pub zeta_value: f64,
    /// `bound - zeta_value`; positive by the theorem.
    pub margin: f64,
    pub lambda_tail: Vec<LambdaSample>,
    pub error_estimate: f64,
    pub n_used: usize,
    pub k_used: usize,
    /// `margin < -error_estimate`. Never expected to be set.
    pub violation: bool,
}

impl BoundReport {
    /// The margin is positive and clears `factor` times the error estimate.
    pub fn clears(&self, factor: f64) -> bool {
        self.margin > 0.0 && self.margin > factor * self.error_estimate
    }
}

pub fn verify_inequality(args: &RealArgs, cfg: &EMConfig) -> Result<BoundReport> {
    let eval = hurwitz_zeta(&HurwitzArgs::real(args.sigma, args.w)?, cfg)?;
    let bound = theorem_bound(args)?;
    let zeta_value = eval.value.re;
    let error_estimate = eval.abs_error_estimate + 4.0 * f64::EPSILON * bound.abs();
    let margin = bound - zeta_value;
    let last = *LAMBDA_SAMPLE_POINTS.last().expect("non-empty");
    let lambdas = lambda_sequence(args, last)?;
    let lambda_tail = LAMBDA_SAMPLE_POINTS
        .iter()
        .map(|&n| lambdas[n - 1])
        .collect();
    Ok(BoundReport {
        args: *args,
        bound,
        zeta_value,
        margin,
        lambda_tail,
        error_estimate,
        n_used: eval.n_used,
        k_used: eval.k_used,
        violation: margin < -error_estimate,
    })
}

/// Negativity of `ζ(σ, w)` at a single point from the theorem alone.
///
/// Issued iff `σ ∈ (0, 1)` and `1 - σ <= w` (checked exactly). Otherwise a
/// [`Refusal`] explains which hypothesis failed.
pub fn certify_negative(args: &RealArgs) -> Certification {
    certify_negative_on(
        Subject::Hurwitz { w: args.w },
        args.w,
        Interval::point(args.sigma),
    )
}

/// Negativity of `ζ(σ, w)` for every `σ` in `interval`.
///
/// `1 - σ` is largest at the left end, so the hypothesis is checked there.
pub fn certify_negative_on(subject: Subject, w: f64, interval: Interval) -> Certification {
    let refuse = |reason: String| {
        Certification::Refused(Refusal {
            subject: subject.clone(),
            interval,
            reason,
        })
    };
    if !(w.is_finite() && w > 0.0) {
        return refuse(format!("w = {w} is not a positive real"));
    }
    let Interval { lo, hi, .. } = interval;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return refuse(format!("{interval} is not a valid interval"));
    }
    if lo < 0.0 || (lo == 0.0 && interval.lo_closed) {
        return refuse(format!(
            "{interval} reaches sigma <= 0; the bound needs sigma > 0"
        ));
    }
    if hi > 1.0 || (hi == 1.0 && interval.hi_closed) {
        return refuse(format!("{interval} is not contained in (0, 1)"));
    }
    if !hypothesis_holds(lo, w) {
        return refuse(format!(
            "1 - sigma <= w fails at sigma = {lo}: 1 - sigma > {w}"
        ));
    }
    let bound_at_worst = if lo > 0.0 {
        theorem_bound(&RealArgs { sigma: lo, w }).unwrap_or(f64::NAN)
    } else {
        // σ → 0+: bound → (1 - w)
        1.0 - w
    };
    Certification::Issued(ZeroFreeCertificate {
        kind: CertificateKind::TheoremExact,
        subject,
        interval,
        evidence: vec![Evidence::Hypothesis {
            w,
            sigma_worst: lo,
            holds: true,
            bound_at_worst,
        }],
        conclusion: Conclusion::Negative,
    })
}

/// What a sign scan evaluates.
#[derive(Debug, Clone, Copy)]
pub enum ScanSubject<'a> {
    Hurwitz { w: f64 },
    Riemann,
    DirichletL(&'a DirichletCharacter),
}

impl ScanSubject<'_> {
    pub fn subject(&self) -> Subject {
        match self {
            ScanSubject::Hurwitz { w } => Subject::Hurwitz { w: *w },
            ScanSubject::Riemann => Subject::Riemann,
            ScanSubject::DirichletL(chi) => Subject::DirichletL {
                modulus: chi.modulus(),
                index: chi.index(),
            },
        }
    }

    fn evaluate(&self, sigma: f64, cfg: &EMConfig) -> Result<ScanRecord> {
        let s = ComplexValue::new(sigma, 0.0);
        let (value, error_estimate, bound) = match self {
            ScanSubject::Hurwitz { w } => {
                let r = hurwitz_zeta(&HurwitzArgs::real(sigma, *w)?, cfg)?;
                let b = theorem_bound(&RealArgs::with_band(sigma, *w, cfg.pole_band)?)?;
                (r.value, r.abs_error_estimate, Some(b))
            }
            ScanSubject::Riemann => {
                let r = riemann_zeta(s, cfg)?;
                let b = theorem_bound(&RealArgs::with_band(sigma, 1.0, cfg.pole_band)?)?;
                (r.value, r.abs_error_estimate, Some(b))
            }
            ScanSubject::DirichletL(chi) => {
                let d = dirichlet_l(chi, s, cfg)?;
                (d.value, d.abs_error_estimate, None)
            }
        };
        Ok(ScanRecord {
            sigma,
            subject: self.subject().id(),
            value,
            error_estimate,
            bound,
            sign: Sign::classify(value, error_estimate),
        })
    }
}

/// Grid `lo, lo + step, …` up to `hi`, snapped to 12 decimals so that
/// `0.01 + 5·0.01` is reported as `0.06`.
pub fn scan_grid(lo: f64, hi: f64, step: f64, pole_band: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(ZetaError::Parameter(format!(
            "invalid scan range [{lo}, {hi}]"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(ZetaError::Parameter(format!(
            "step must be positive, got {step}"
        )));
    }
    if lo <= 0.0 {
        return Err(ZetaError::Domain(format!(
            "scan range must satisfy sigma > 0, got {lo}"
        )));
    }
    if lo < 1.0 && hi > 1.0 {
        return Err(ZetaError::Domain(format!(
            "scan range [{lo}, {hi}] straddles the pole at 1"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() + 1.0;
    if count > MAX_SCAN_POINTS as f64 {
        return Err(ZetaError::Parameter(format!(
            "scan would have {count} points"
        )));
    }
    let points: Vec<f64> = (0..count as usize)
        .map(|i| snap(lo + i as f64 * step))
        .collect();
    for &sigma in &points {
        let distance = (sigma - 1.0).abs();
        if distance < pole_band || distance == 0.0 {
            return Err(ZetaError::Pole {
                distance,
                band: pole_band,
            });
        }
    }
    Ok(points)
}

fn snap(x: f64) -> f64 {
    let scaled = (x * 1e12).round();
    if scaled.abs() < 1e15 {
        scaled / 1e12
    } else {
        x
    }
}

/// Evaluates every grid point independently, in parallel, keeping grid order.
pub fn scan_points(
    subject: ScanSubject<'_>,
    lo: f64,
    hi: f64,
    step: f64,
    cfg: &EMConfig,
) -> Result<Vec<(f64, Result<ScanRecord>)>> {
    cfg.validate()?;
    if let ScanSubject::DirichletL(chi) = subject {
        if !chi.is_real() {
            return Err(ZetaError::Parameter(
                "sign scans need a real character (values in {-1, 0, 1})".into(),
            ));
        }
    }
    let grid = scan_grid(lo, hi, step, cfg.pole_band)?;
    Ok(grid
        .into_par_iter()
        .map(|sigma| (sigma, subject.evaluate(sigma, cfg)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome {
    pub subject: Subject,
    pub records: Vec<ScanRecord>,
    pub min_abs_value: f64,
    /// Common strict sign of every record, if there is one.
    pub sign: Option<Sign>,
    /// Grid points that are indeterminate or disagree with the first sign.
    pub offending: Vec<f64>,
}

impl ScanOutcome {
    pub fn from_records(subject: Subject, records: Vec<ScanRecord>) -> Self {
        let min_abs_value = records
            .iter()
            .map(|r| r.value.norm())
            .fold(f64::INFINITY, f64::min);
        let first = records.first().map(|r| r.sign);
        let offending: Vec<f64> = records
            .iter()
            .filter(|r| r.sign == Sign::Indeterminate || Some(r.sign) != first)
            .map(|r| r.sigma)
            .collect();
        let sign = match first {
            Some(s) if s != Sign::Indeterminate && offending.is_empty() => Some(s),
            _ => None,
        };
        Self {
            subject,
            records,
            min_abs_value,
            sign,
            offending,
        }
    }

    /// A `numeric_scan` certificate, if every value has the same strict sign.
    pub fn certificate(&self) -> Option<ZeroFreeCertificate> {
        let sign = self.sign?;
        let lo = self.records.first()?.sigma;
        let hi = self.records.last()?.sigma;
        Some(ZeroFreeCertificate {
            kind: CertificateKind::NumericScan,
            subject: self.subject.clone(),
            interval: Interval::closed(lo, hi),
            evidence: vec![Evidence::Scan {
                records: self.records.clone(),
                min_abs_value: self.min_abs_value,
                sign,
            }],
            conclusion: Conclusion::NoZeros,
        })
    }
}

/// Sign scan over `[lo, hi]`. The first evaluation error aborts the scan
/// with the records before it attached.
pub fn scan_sign(
    subject: ScanSubject<'_>,
    lo: f64,
    hi: f64,
    step: f64,
    cfg: &EMConfig,
) -> Result<ScanOutcome> {
    let mut records = Vec::new();
    for (sigma, r) in scan_points(subject, lo, hi, step, cfg)? {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => {
                return Err(ZetaError::ScanAborted {
                    sigma,
                    partial: records,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(ScanOutcome::from_records(subject.subject(), records))
}

/// Grid used to corroborate the Riemann certificate numerically.
pub const RIEMANN_SCAN: (f64, f64, f64) = (0.01, 0.99, 0.01);

/// `ζ(σ) < 0` on `(0, 1)`: the theorem with `w = 1` (where `1 - σ <= 1`
/// always holds), corroborated by a sign scan.
pub fn certify_riemann_zero_free(cfg: &EMConfig) -> Result<CompositeCertificate> {
    let interval = Interval::open(0.0, 1.0 - cfg.pole_band);
    let exact = match certify_negative_on(Subject::Riemann, 1.0, interval) {
        Certification::Issued(c) => c,
        Certification::Refused(r) => return Err(ZetaError::Domain(r.reason)),
    };
    let mut parts = vec![exact];
    let (lo, hi, step) = RIEMANN_SCAN;
    let corroboration_failure = match scan_sign(ScanSubject::Riemann, lo, hi, step, cfg) {
        Ok(outcome) => corroborate(&outcome, &mut parts),
        Err(e) => Some(format!("scan failed: {e}")),
    };
    Ok(CompositeCertificate {
        subject: Subject::Riemann,
        interval,
        parts,
        corroboration_failure,
        conclusion: Conclusion::NoZeros,
    })
}

/// Appends the scan certificate when it shows strictly negative values,
/// otherwise describes what went wrong.
pub(crate) fn corroborate(
    outcome: &ScanOutcome,
    parts: &mut Vec<ZeroFreeCertificate>,
) -> Option<String> {
    match (outcome.certificate(), outcome.sign) {
        (Some(cert), Some(Sign::Neg)) => {
            parts.push(cert);
            None
        }
        (Some(_), _) => Some("scan found positive values".to_string()),
        (None, _) => Some(format!(
            "scan has indeterminate or sign-changing points at sigma = {:?}",
            outcome.offending
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityPoint {
    pub sigma: f64,
    pub w: f64,
    pub bound: f64,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub points: Vec<PositivityPoint>,
}

impl PositivityReport {
    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| !p.positive).count()
    }

    pub fn all_positive(&self) -> bool {
        self.failures() == 0
    }
}

/// For `σ > 1` the bound must be positive: checks every `(σ, w)` pair.
pub fn bound_positivity_check(w_grid: &[f64], sigma_grid: &[f64]) -> Result<PositivityReport> {
    let mut points = Vec::with_capacity(w_grid.len() * sigma_grid.len());
    for &sigma in sigma_grid {
        if sigma.is_nan() || sigma < 1.0 + POLE_BAND {
            return Err(ZetaError::Parameter(format!(
                "positivity check needs sigma > 1 + band, got {sigma}"
            )));
        }
        for &w in w_grid {
            let args = RealArgs::new(sigma, w)?;
            let bound = theorem_bound(&args)?;
            points.push(PositivityPoint {
                sigma,
                w,
                bound,
                positive: bound > 0.0 && bound_sign(&args) == Ordering::Greater,
            });
        }
    }
    Ok(PositivityReport { points })
}
