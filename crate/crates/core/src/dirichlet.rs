//! Dirichlet characters modulo `q` and `L(χ, s)` as a finite combination of
//! Hurwitz zeta values:
//!
//! ```text
//! L(χ, s) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)
//! ```
//!
//! Characters are built from an explicit generating set of `(Z/qZ)^*`. Each
//! character is stored as exact phases `χ(a) = exp(2πi · phase(a) / order)`;
//! the complex table is derived from those.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::bound::{certify_negative_on, corroborate, scan_sign, ScanSubject};
use crate::certificate::{
    CertificateKind, Certification, CompositeCertificate, Conclusion, Evidence, Interval, Subject,
    ZeroFreeCertificate,
};
use crate::error::{Result, ZetaError};
use crate::hurwitz::{
    check_pole, hurwitz_zeta, riemann_zeta, ComplexValue, EMConfig, EvalResult, HurwitzArgs,
};
use crate::sum::ComplexSum;

/// Largest modulus accepted by [`unit_group`] and [`characters_mod`].
pub const MAX_MODULUS: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub unit: u32,
    pub order: u32,
}

/// `(Z/qZ)^*` as a product of cyclic groups with explicit generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitGroupStructure {
    modulus: u32,
    generators: Vec<Generator>,
    /// Exponent vector of each residue; `None` for non-units.
    decomposition: Vec<Option<Vec<u32>>>,
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `φ(q)`, the product of the generator orders.
    pub fn order(&self) -> u32 {
        self.generators.iter().map(|g| g.order).product()
    }

    /// Exponents `e` with `a ≡ Π g_i^{e_i} (mod q)`.
    pub fn exponents(&self, a: u64) -> Option<&[u32]> {
        self.decomposition[(a % u64::from(self.modulus)) as usize].as_deref()
    }

    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        self.decomposition
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(|(a, _)| a as u32)
    }
}

fn check_modulus(q: u32) -> Result<()> {
    if !(1..=MAX_MODULUS).contains(&q) {
        return Err(ZetaError::Parameter(format!(
            "modulus must be in 1..={MAX_MODULUS}, got {q}"
        )));
    }
    Ok(())
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Smallest generator of the cyclic group `(Z/p^e Z)^*`, `p` odd.
fn primitive_root(p: u32, pe: u32) -> u32 {
    let phi = pe / p * (p - 1);
    let primes: Vec<u32> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..pe)
        .find(|&g| {
            g % p != 0
                && primes
                    .iter()
                    .all(|&r| pow_mod(u64::from(g), u64::from(phi / r), u64::from(pe)) != 1)
        })
        .expect("odd prime powers are cyclic")
}

/// Lifts `g mod m` to `q` with residue 1 modulo `q / m`.
fn crt_lift(g: u32, m: u32, q: u32) -> u32 {
    let rest = q / m;
    (0..rest)
        .map(|t| g + m * t)
        .find(|u| u % rest == 1 % rest)
        .expect("coprime moduli")
}

/// Generators of `(Z/qZ)^*` with their orders, and the exponent vector of
/// every unit, found by enumerating all products of generator powers.
pub fn unit_group(q: u32) -> Result<UnitGroupStructure> {
    check_modulus(q)?;
    let mut generators = Vec::new();
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        let local: Vec<(u32, u32)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pe - 1, 2), (5, pe / 4)],
            }
        } else {
            vec![(primitive_root(p, pe), pe / p * (p - 1))]
        };
        for (g, order) in local {
            generators.push(Generator {
                unit: crt_lift(g, pe, q),
                order,
            });
        }
    }

    let mut decomposition: Vec<Option<Vec<u32>>> = vec![None; q as usize];
    let mut exps = vec![0u32; generators.len()];
    let qq = u64::from(q);
    loop {
        let a = generators.iter().zip(&exps).fold(1 % qq, |acc, (g, &e)| {
            acc * pow_mod(u64::from(g.unit), u64::from(e), qq) % qq
        });
        let slot = &mut decomposition[a as usize];
        debug_assert!(slot.is_none(), "generator powers collide at {a} mod {q}");
        *slot = Some(exps.clone());
        if !odometer_step(&mut exps, &generators) {
            break;
        }
    }
    Ok(UnitGroupStructure {
        modulus: q,
        generators,
        decomposition,
    })
}

/// Advances a mixed-radix counter, last digit fastest. Returns false on wrap.
fn odometer_step(digits: &mut [u32], gens: &[Generator]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < gens[i].order {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// `exp(2πi k / m)`, exact at the quarter turns.
fn root_of_unity(k: u32, m: u32) -> Complex64 {
    let k = k % m;
    if k == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * k == m {
        Complex64::new(-1.0, 0.0)
    } else if 4 * k == m {
        Complex64::new(0.0, 1.0)
    } else if 4 * k == 3 * m {
        Complex64::new(0.0, -1.0)
    } else {
        let (sin, cos) = (TAU * f64::from(k) / f64::from(m)).sin_cos();
        Complex64::new(cos, sin)
    }
}

/// A Dirichlet character modulo `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCharacter {
    modulus: u32,
    index: usize,
    /// `χ(g_i) = exp(2πi · exponents[i] / order(g_i))`
    exponents: Vec<u32>,
    order: u32,
    phases: Vec<Option<u32>>,
    values: Vec<ComplexValue>,
    is_principal: bool,
    is_primitive: bool,
}

impl DirichletCharacter {
    fn from_phases(
        modulus: u32,
        index: usize,
        exponents: Vec<u32>,
        order: u32,
        phases: Vec<Option<u32>>,
    ) -> Self {
        let values = phases
            .iter()
            .map(|p| p.map_or(Complex64::new(0.0, 0.0), |k| root_of_unity(k, order)))
            .collect();
        let is_principal = phases.iter().all(|p| p.is_none_or(|k| k == 0));
        let is_primitive = primitive(modulus, &phases);
        Self {
            modulus,
            index,
            exponents,
            order,
            phases,
            values,
            is_principal,
            is_primitive,
        }
    }

    /// The principal character mod `q`, without building the whole group.
    pub fn principal(q: u32) -> Result<Self> {
        check_modulus(q)?;
        let phases = (0..q).map(|a| (a.gcd(&q) == 1).then_some(0)).collect();
        let rank = unit_group_rank(q);
        Ok(Self::from_phases(q, 0, vec![0; rank], 1, phases))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Position in [`characters_mod`] order.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    pub fn value(&self, n: u64) -> ComplexValue {
        self.values[(n % u64::from(self.modulus)) as usize]
    }

    /// `χ(n) = exp(2πi · phase / order)`, or `None` when `gcd(n, q) > 1`.
    pub fn phase(&self, n: u64) -> Option<u32> {
        self.phases[(n % u64::from(self.modulus)) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    pub fn is_primitive(&self) -> bool {
        self.is_primitive
    }

    /// Real-valued (order 1 or 2).
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }
}

fn unit_group_rank(q: u32) -> usize {
    factorize(q)
        .into_iter()
        .map(|(p, e)| match (p, e) {
            (2, 1) => 0,
            (2, 2) => 1,
            (2, _) => 2,
            _ => 1,
        })
        .sum()
}

/// χ is induced from a proper divisor `d` iff it is trivial on units
/// `≡ 1 (mod d)`; it suffices to test the maximal divisors `q / p`.
fn primitive(q: u32, phases: &[Option<u32>]) -> bool {
    factorize(q).into_iter().all(|(p, _)| {
        let d = q / p;
        let induced = (0..p)
            .map(|t| 1 + d * t)
            .filter(|&a| a < q || q == 1)
            .all(|a| phases[(a % q) as usize].is_none_or(|k| k == 0));
        !induced
    })
}

/// All `φ(q)` characters mod `q`, principal first, then lexicographic in the
/// exponent chosen for each generator.
pub fn characters_mod(q: u32) -> Result<Vec<DirichletCharacter>> {
    let group = unit_group(q)?;
    let gens = group.generators();
    let exponent = gens
        .iter()
        .fold(1u64, |acc, g| acc.lcm(&u64::from(g.order)));
    let units: Vec<(u32, Vec<u32>)> = group
        .units()
        .map(|a| (a, group.exponents(u64::from(a)).expect("unit").to_vec()))
        .collect();

    let mut out = Vec::with_capacity(group.order() as usize);
    let mut choice = vec![0u32; gens.len()];
    loop {
        let order = gens
            .iter()
            .zip(&choice)
            .fold(1u32, |acc, (g, &j)| acc.lcm(&(g.order / j.gcd(&g.order))));
        let mut phases = vec![None; q as usize];
        for (a, exps) in &units {
            let phase = gens
                .iter()
                .zip(&choice)
                .zip(exps)
                .map(|((g, &j), &e)| u64::from(j) * u64::from(e) * (exponent / u64::from(g.order)))
                .sum::<u64>()
                % exponent;
            let step = exponent / u64::from(order);
            debug_assert_eq!(phase % step, 0);
            phases[*a as usize] = Some((phase / step) as u32);
        }
        out.push(DirichletCharacter::from_phases(
            q,
            out.len(),
            choice.clone(),
            order,
            phases,
        ));
        if !odometer_step(&mut choice, gens) {
            break;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LTerm {
    pub a: u32,
    pub chi: ComplexValue,
    /// `ζ(s, a/q)`
    pub zeta: EvalResult,
}

/// `L(χ, s)` together with the Hurwitz values it was assembled from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LDecomposition {
    pub character: DirichletCharacter,
    pub s: ComplexValue,
    /// Only residues coprime to `q`; the others carry `χ(a) = 0`.
    pub terms: Vec<LTerm>,
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
}

fn modulus_power(q: u32, s: ComplexValue) -> ComplexValue {
    let q = f64::from(q);
    if s.im == 0.0 {
        Complex64::new(q.powf(-s.re), 0.0)
    } else {
        Complex64::new(q, 0.0).powc(-s)
    }
}

impl LDecomposition {
    /// `q^{-s} Σ χ(a) ζ(s, a/q)` from the stored terms.
    pub fn recompute(&self) -> ComplexValue {
        let mut acc = ComplexSum::new();
        for t in &self.terms {
            acc.add(t.chi * t.zeta.value);
        }
        modulus_power(self.character.modulus(), self.s) * acc.total()
    }
}

/// `L(χ, s) = q^{-s} Σ_a χ(a) ζ(s, a/q)`, the Hurwitz values evaluated in
/// parallel and summed in residue order.
pub fn dirichlet_l(
    chi: &DirichletCharacter,
    s: ComplexValue,
    cfg: &EMConfig,
) -> Result<LDecomposition> {
    cfg.validate()?;
    check_pole(s, cfg.pole_band)?;
    let q = chi.modulus();
    let units: Vec<u32> = (1..=q)
        .filter(|&a| chi.phase(u64::from(a)).is_some())
        .collect();
    let terms = units
        .par_iter()
        .map(|&a| {
            let args = HurwitzArgs::new(s, f64::from(a) / f64::from(q))?;
            Ok(LTerm {
                a,
                chi: chi.value(u64::from(a)),
                zeta: hurwitz_zeta(&args, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut acc = ComplexSum::new();
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for t in &terms {
        acc.add(t.chi * t.zeta.value);
        error += t.zeta.abs_error_estimate;
        magnitude += t.zeta.value.norm();
    }
    let scale = modulus_power(q, s);
    let value = scale * acc.total();
    let rounding = 8.0 * f64::EPSILON * (magnitude * (1.0 + s.norm() * f64::from(q).ln()));
    Ok(LDecomposition {
        character: chi.clone(),
        s,
        terms,
        value,
        abs_error_estimate: scale.norm() * (error + rounding),
    })
}

/// Residue of an identity check and the combined error budget it must stay in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub residual: f64,
    pub tolerance: f64,
}

impl IdentityCheck {
    fn new(lhs: ComplexValue, rhs: ComplexValue, error: f64, log_scale: f64) -> Self {
        let rounding = 8.0 * f64::EPSILON * (lhs.norm() + rhs.norm()) * (1.0 + log_scale);
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
            tolerance: error + rounding,
        }
    }

    pub fn holds(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn prime_divisors(q: u32) -> Vec<u32> {
    factorize(q).into_iter().map(|(p, _)| p).collect()
}

/// `L(χ₀, s)` against `ζ(s) Π_{p | q} (1 - p^{-s})`.
pub fn check_principal_identity(q: u32, s: ComplexValue, cfg: &EMConfig) -> Result<IdentityCheck> {
    let chi0 = DirichletCharacter::principal(q)?;
    let lhs = dirichlet_l(&chi0, s, cfg)?;
    let zeta = riemann_zeta(s, cfg)?;
    let euler = prime_divisors(q)
        .into_iter()
        .fold(Complex64::new(1.0, 0.0), |acc, p| {
            acc * (1.0 - modulus_power(p, s))
        });
    let rhs = zeta.value * euler;
    Ok(IdentityCheck::new(
        lhs.value,
        rhs,
        lhs.abs_error_estimate + zeta.abs_error_estimate * euler.norm(),
        s.norm() * f64::from(q).ln(),
    ))
}

/// `ζ(s, 1/2)` against `(2^s - 1) ζ(s)`.
pub fn check_half_identity(s: ComplexValue, cfg: &EMConfig) -> Result<IdentityCheck> {
    let half = hurwitz_zeta(&HurwitzArgs::new(s, 0.5)?, cfg)?;
    let zeta = riemann_zeta(s, cfg)?;
    let factor = Complex64::new(2.0, 0.0).powc(s) - 1.0;
    Ok(IdentityCheck::new(
        half.value,
        zeta.value * factor,
        half.abs_error_estimate + zeta.abs_error_estimate * factor.norm(),
        s.norm() * std::f64::consts::LN_2,
    ))
}

/// Grid used to corroborate the χ₂ certificate numerically.
pub const CHI2_SCAN: (f64, f64, f64) = (0.01, 0.99, 0.01);

/// `L(χ₂, σ) < 0` on `(0, 1)` for the character mod 2.
///
/// * `[1/2, 1)`: `L(χ₂, σ) = 2^{-σ} ζ(σ, 1/2)` and the theorem with `w = 1/2`
///   applies since `1 - σ <= 1/2`.
/// * `(0, 1/2)`: `L(χ₂, σ) = (1 - 2^{-σ}) ζ(σ)`, a positive multiple of
///   `ζ(σ) < 0`.
/// * a numeric scan of `L(χ₂, σ)` over `[0.01, 0.99]` corroborates both.
pub fn certify_chi2_zero_free(cfg: &EMConfig) -> Result<CompositeCertificate> {
    let band = cfg.pole_band;
    let chi2 = characters_mod(2)?.remove(0);
    let subject = Subject::DirichletL {
        modulus: 2,
        index: 0,
    };

    let issued = |c: Certification| match c {
        Certification::Issued(cert) => Ok(cert),
        Certification::Refused(r) => Err(ZetaError::Domain(r.reason)),
    };

    let upper = Interval::closed_open(0.5, 1.0 - band);
    let upper_base = issued(certify_negative_on(Subject::Hurwitz { w: 0.5 }, 0.5, upper))?;
    let upper_part = ZeroFreeCertificate {
        kind: CertificateKind::TheoremExact,
        subject: subject.clone(),
        interval: upper,
        evidence: vec![Evidence::Transfer {
            identity: "L(chi_2, s) = 2^(-s) * zeta(s, 1/2)".into(),
            factor: "2^(-sigma)".into(),
            factor_positive: "2^(-sigma) > 0 for real sigma".into(),
            base: Box::new(upper_base),
        }],
        conclusion: Conclusion::Negative,
    };

    let lower = Interval::open(0.0, 0.5);
    let lower_base = issued(certify_negative_on(Subject::Riemann, 1.0, lower))?;
    let lower_part = ZeroFreeCertificate {
        kind: CertificateKind::IdentityTransfer,
        subject: subject.clone(),
        interval: lower,
        evidence: vec![Evidence::Transfer {
            identity: "zeta(s, 1/2) = (2^s - 1) * zeta(s), so L(chi_2, s) = (1 - 2^(-s)) * zeta(s)"
                .into(),
            factor: "1 - 2^(-sigma)".into(),
            factor_positive: "2^sigma > 1 for sigma > 0".into(),
            base: Box::new(lower_base),
        }],
        conclusion: Conclusion::Negative,
    };

    let mut parts = vec![upper_part, lower_part];
    let (lo, hi, step) = CHI2_SCAN;
    let corroboration_failure = match scan_sign(ScanSubject::DirichletL(&chi2), lo, hi, step, cfg) {
        Ok(outcome) => corroborate(&outcome, &mut parts),
        Err(e) => Some(format!("scan failed: {e}")),
    };

    Ok(CompositeCertificate {
        subject,
        interval: Interval::open(0.0, 1.0 - band),
        parts,
        corroboration_failure,
        conclusion: Conclusion::NoZeros,
    })
}
