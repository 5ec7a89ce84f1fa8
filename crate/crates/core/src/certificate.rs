//! Zero-free certificates on the real `σ` axis and the records backing them.

use serde::Serialize;

use crate::bound::BoundReport;
use crate::hurwitz::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Rests only on the proven inequality plus an exact sign check.
    TheoremExact,
    /// Empirical: grid evaluation with explicit error thresholds.
    NumericScan,
    /// Exact transfer of another certificate through an identity with a
    /// positive factor.
    IdentityTransfer,
}

/// The function a certificate speaks about.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "function", rename_all = "snake_case")]
pub enum Subject {
    Hurwitz { w: f64 },
    Riemann,
    DirichletL { modulus: u32, index: usize },
}

impl Subject {
    /// Short identifier used in CSV output.
    pub fn id(&self) -> String {
        match self {
            Subject::Hurwitz { w } => format!("hurwitz(w={w})"),
            Subject::Riemann => "riemann".to_string(),
            Subject::DirichletL { modulus, index } => format!("L(q={modulus},chi={index})"),
        }
    }
}

/// A real interval with explicit open/closed ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Negative,
    NoZeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Pos,
    Neg,
    Indeterminate,
}

impl Sign {
    /// Strict sign of a real-axis value: indeterminate iff `|value| <= error`.
    pub fn classify(value: ComplexValue, error: f64) -> Sign {
        if value.norm() <= error {
            Sign::Indeterminate
        } else if value.re > 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
            Sign::Indeterminate => "indeterminate",
        }
    }
}

/// One grid point of a sign scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub sigma: f64,
    pub subject: String,
    pub value: ComplexValue,
    pub error_estimate: f64,
    /// Theorem bound, for Hurwitz and Riemann subjects.
    pub bound: Option<f64>,
    pub sign: Sign,
}

/// Supporting data attached to a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Exact check of `1 - σ <= w` at the worst point of the interval, which
    /// makes the closed-form bound non-positive everywhere on it.
    Hypothesis {
        w: f64,
        sigma_worst: f64,
        holds: bool,
        bound_at_worst: f64,
    },
    Bounds {
        reports: Vec<BoundReport>,
    },
    Scan {
        records: Vec<ScanRecord>,
        min_abs_value: f64,
        sign: Sign,
    },
    /// `subject = factor · base` with `factor > 0` on the interval.
    Transfer {
        identity: String,
        factor: String,
        factor_positive: String,
        base: Box<ZeroFreeCertificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroFreeCertificate {
    pub kind: CertificateKind,
    pub subject: Subject,
    pub interval: Interval,
    pub evidence: Vec<Evidence>,
    pub conclusion: Conclusion,
}

/// Why a certificate could not be issued by the requested route.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refusal {
    pub subject: Subject,
    pub interval: Interval,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certification {
    Issued(ZeroFreeCertificate),
    Refused(Refusal),
}

impl Certification {
    pub fn issued(&self) -> Option<&ZeroFreeCertificate> {
        match self {
            Certification::Issued(c) => Some(c),
            Certification::Refused(_) => None,
        }
    }

    pub fn is_issued(&self) -> bool {
        self.issued().is_some()
    }
}

/// Several certificates covering pieces of one interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeCertificate {
    pub subject: Subject,
    pub interval: Interval,
    pub parts: Vec<ZeroFreeCertificate>,
    /// Set when the numeric corroboration failed; the exact parts stand alone.
    pub corroboration_failure: Option<String>,
    pub conclusion: Conclusion,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn sign_classification() {
        assert_eq!(Sign::classify(Complex64::new(-0.5, 0.0), 1e-12), Sign::Neg);
        assert_eq!(Sign::classify(Complex64::new(0.5, 0.0), 1e-12), Sign::Pos);
        assert_eq!(
            Sign::classify(Complex64::new(1e-13, 0.0), 1e-12),
            Sign::Indeterminate
        );
        assert_eq!(
            Sign::classify(Complex64::new(1e-12, 0.0), 1e-12),
            Sign::Indeterminate
        );
    }

    #[test]
    fn interval_membership() {
        let i = Interval::closed_open(0.5, 1.0);
        assert!(i.contains(0.5));
        assert!(!i.contains(1.0));
        assert!(!Interval::open(0.0, 0.5).contains(0.0));
        assert_eq!(i.to_string(), "[0.5, 1)");
    }

    #[test]
    fn subject_ids() {
        assert_eq!(Subject::Hurwitz { w: 2.0 }.id(), "hurwitz(w=2)");
        assert_eq!(
            Subject::DirichletL {
                modulus: 2,
                index: 0
            }
            .id(),
            "L(q=2,chi=0)"
        );
    }
}
