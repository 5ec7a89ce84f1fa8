//! Hurwitz zeta and Dirichlet L-function evaluation by Euler-Maclaurin
//! summation, the closed-form upper bound
//! `ζ(σ, w) < (1-σ-w) / ((1-σ) w^σ)` for real `σ > 0, σ ≠ 1`, and the
//! real-axis zero-free certificates it yields.
//!
//! All operations are pure; tables and certificates are immutable values.

pub mod bernoulli;
pub mod bound;
pub mod certificate;
pub mod dirichlet;
pub mod error;
pub mod hurwitz;
pub mod sum;

pub use bernoulli::{bernoulli_table, BernoulliTable, MAX_BERNOULLI_INDEX};
pub use bound::{
    bound_positivity_check, bound_sign, certify_negative, certify_negative_on,
    certify_riemann_zero_free, hypothesis_holds, lambda_sequence, lambda_term, scan_grid,
    scan_points, scan_sign, theorem_bound, verify_inequality, BoundReport, LambdaSample,
    PositivityReport, RealArgs, ScanOutcome, ScanSubject, RIEMANN_SCAN,
};
pub use certificate::{
    CertificateKind, Certification, CompositeCertificate, Conclusion, Evidence, Interval, Refusal,
    ScanRecord, Sign, Subject, ZeroFreeCertificate,
};
pub use dirichlet::{
    certify_chi2_zero_free, characters_mod, check_half_identity, check_principal_identity,
    dirichlet_l, unit_group, DirichletCharacter, IdentityCheck, LDecomposition, UnitGroupStructure,
    CHI2_SCAN, MAX_MODULUS,
};
pub use error::{Result, ZetaError};
pub use hurwitz::{
    hurwitz_zeta, hurwitz_zeta_limit_oracle, riemann_zeta, shift_reduce, ComplexValue, EMConfig,
    EvalResult, HurwitzArgs, ShiftReduction, MAX_K, MAX_N, POLE_BAND,
};
