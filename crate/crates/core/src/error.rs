use thiserror::Error;

use crate::certificate::ScanRecord;
use crate::hurwitz::EvalResult;

/// Errors raised by the evaluators, certificate builders and character code.
#[derive(Debug, Clone, Error)]
pub enum ZetaError {
    /// `s` lies inside the exclusion band around the pole at `s = 1`.
    #[error("pole at s=1 (|s-1| = {distance:e} is inside the band {band:e})")]
    Pole { distance: f64, band: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    /// Auto-escalation ran out of room; `best` is the most accurate result seen.
    #[error(
        "target error {target:e} unreachable with N <= {max_n}, K <= {max_k} \
         (best truncation estimate {:e})",
        best.truncation_estimate
    )]
    Precision {
        target: f64,
        max_n: usize,
        max_k: usize,
        best: Box<EvalResult>,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A sign scan hit an evaluation error; records before the failing point are kept.
    #[error("scan aborted at sigma={sigma}: {source}")]
    ScanAborted {
        sigma: f64,
        partial: Vec<ScanRecord>,
        #[source]
        source: Box<ZetaError>,
    },
}

pub type Result<T> = std::result::Result<T, ZetaError>;
