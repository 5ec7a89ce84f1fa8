//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p zetabound-cli --test acceptance`.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetabound::{
    certify_chi2_zero_free, characters_mod, dirichlet_l, hurwitz_zeta, hurwitz_zeta_limit_oracle,
    lambda_sequence, riemann_zeta, scan_sign, theorem_bound, verify_inequality, CertificateKind,
    EMConfig, Evidence, HurwitzArgs, Interval, RealArgs, ScanSubject, Sign, POLE_BAND,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SIGMAS: [f64; 12] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.5, 2.0, 3.0];
const WS: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn known_values() -> Check {
    let start = Instant::now();
    let cfg = EMConfig::default();
    let z2 = riemann_zeta(Complex64::new(2.0, 0.0), &cfg).map_err(|e| e.to_string())?;
    let d1 = (z2.value - PI * PI / 6.0).norm();
    ensure(d1 <= 1e-12, || format!("zeta(2) off by {d1:e}"))?;
    let half = hurwitz_zeta(
        &HurwitzArgs::real(2.0, 0.5).map_err(|e| e.to_string())?,
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    let d2 = (half.value - PI * PI / 2.0).norm();
    ensure(d2 <= 1e-10, || format!("zeta(2, 1/2) off by {d2:e}"))?;
    let chi2 = &characters_mod(2).map_err(|e| e.to_string())?[0];
    let l = dirichlet_l(chi2, Complex64::new(2.0, 0.0), &cfg).map_err(|e| e.to_string())?;
    let d3 = (l.value - PI * PI / 8.0).norm();
    ensure(d3 <= 1e-10, || format!("L(chi2, 2) off by {d3:e}"))?;
    let took = within_time(start, Duration::from_secs(1))?;
    Ok(format!(
        "deviations {d1:.1e} / {d2:.1e} / {d3:.1e} in {took:.2?}"
    ))
}

fn theorem_sweep() -> Check {
    let start = Instant::now();
    let cfg = EMConfig::default();
    let mut worst = f64::INFINITY;
    for &sigma in &SIGMAS {
        for &w in &WS {
            let args = RealArgs::new(sigma, w).map_err(|e| e.to_string())?;
            let r = verify_inequality(&args, &cfg).map_err(|e| e.to_string())?;
            ensure(!r.violation && r.clears(3.0), || {
                format!(
                    "sigma={sigma} w={w}: margin {:e}, error {:e}",
                    r.margin, r.error_estimate
                )
            })?;
            worst = worst.min(r.margin / r.error_estimate);
        }
    }
    let took = within_time(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} points, min margin/error {worst:.1e}, in {took:.2?}",
        SIGMAS.len() * WS.len()
    ))
}

fn lambda_identity() -> Check {
    let mut worst: f64 = 0.0;
    for &sigma in &SIGMAS {
        for &w in &WS {
            let args = RealArgs::new(sigma, w).map_err(|e| e.to_string())?;
            let bound = theorem_bound(&args).map_err(|e| e.to_string())?;
            let lambdas = lambda_sequence(&args, 1000).map_err(|e| e.to_string())?;
            let h = HurwitzArgs::real(sigma, w).map_err(|e| e.to_string())?;
            for n in [1usize, 10, 100, 1000] {
                let partial = hurwitz_zeta_limit_oracle(&h, n)
                    .map_err(|e| e.to_string())?
                    .re;
                let rel = (partial - (bound + lambdas[n - 1].lambda)).abs() / (1.0 + bound.abs());
                ensure(rel <= 1e-12, || {
                    format!("sigma={sigma} w={w} N={n}: {rel:e}")
                })?;
                worst = worst.max(rel);
            }
        }
    }
    Ok(format!("worst scaled residual {worst:.1e}"))
}

fn lambda_monotone() -> Check {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cfg = EMConfig::default();
    let mut drawn = 0;
    while drawn < 20 {
        let sigma = rng.gen_range(0.1..2.0);
        let w = rng.gen_range(0.1..=5.0);
        if (sigma - 1.0_f64).abs() < 0.01 {
            continue;
        }
        drawn += 1;
        let args = RealArgs::new(sigma, w).map_err(|e| e.to_string())?;
        let seq = lambda_sequence(&args, N).map_err(|e| e.to_string())?;
        ensure(seq[0].lambda < 0.0, || {
            format!("lambda_1 >= 0 at sigma={sigma} w={w}")
        })?;
        for pair in seq.windows(2) {
            ensure(pair[1].lambda < pair[0].lambda, || {
                format!("not decreasing at N={} (sigma={sigma} w={w})", pair[1].n)
            })?;
        }
        let zeta = hurwitz_zeta(
            &HurwitzArgs::real(sigma, w).map_err(|e| e.to_string())?,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        let limit = zeta.value.re - theorem_bound(&args).map_err(|e| e.to_string())?;
        let gap = (seq[N - 1].lambda - limit).abs();
        let envelope = 10.0 * (N as f64).powf(-sigma);
        ensure(gap <= envelope, || {
            format!("sigma={sigma} w={w}: |lambda_N - limit| = {gap:e} > {envelope:e}")
        })?;
    }
    Ok("20 draws, sigma in [0.1, 2), w in [0.1, 5]".into())
}

fn riemann_scan() -> Check {
    let start = Instant::now();
    let outcome = scan_sign(ScanSubject::Riemann, 0.01, 0.99, 1e-3, &EMConfig::default())
        .map_err(|e| e.to_string())?;
    ensure(outcome.records.len() == 981, || {
        format!("{} records", outcome.records.len())
    })?;
    for r in &outcome.records {
        ensure(
            r.sign == Sign::Neg && r.value.norm() > r.error_estimate,
            || {
                format!(
                    "sigma={}: value {} error {:e}",
                    r.sigma, r.value, r.error_estimate
                )
            },
        )?;
    }
    let took = within_time(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} points all negative, min |value| {:.4}, in {took:.2?}",
        outcome.records.len(),
        outcome.min_abs_value
    ))
}

fn chi2_certificate() -> Check {
    let c = certify_chi2_zero_free(&EMConfig::default()).map_err(|e| e.to_string())?;
    ensure(c.corroboration_failure.is_none(), || {
        format!("corroboration failed: {:?}", c.corroboration_failure)
    })?;
    ensure(c.parts.len() == 3, || format!("{} parts", c.parts.len()))?;
    let exact = &c.parts[0];
    ensure(
        exact.kind == CertificateKind::TheoremExact
            && exact.interval == Interval::closed_open(0.5, 1.0 - POLE_BAND),
        || format!("first part {:?} on {}", exact.kind, exact.interval),
    )?;
    let transfer = &c.parts[1];
    ensure(
        transfer.kind == CertificateKind::IdentityTransfer
            && transfer.interval == Interval::open(0.0, 0.5),
        || format!("second part {:?} on {}", transfer.kind, transfer.interval),
    )?;
    let scan = &c.parts[2];
    ensure(
        scan.kind == CertificateKind::NumericScan && scan.interval == Interval::closed(0.01, 0.99),
        || format!("third part {:?} on {}", scan.kind, scan.interval),
    )?;
    match scan.evidence.first() {
        Some(Evidence::Scan { records, sign, .. }) => {
            ensure(
                *sign == Sign::Neg && records.iter().all(|r| r.sign == Sign::Neg),
                || "scan is not uniformly negative".into(),
            )?;
            Ok(format!(
                "theorem_exact on {}, identity_transfer on {}, {}-point negative scan",
                exact.interval,
                transfer.interval,
                records.len()
            ))
        }
        other => Err(format!("scan part carries {other:?}")),
    }
}

fn bound_positive_above_one() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut min = f64::INFINITY;
    for _ in 0..1000 {
        // (1 + band, 10] and (0, 10]
        let sigma = 10.0 - rng.gen_range(0.0..10.0 - 1.0 - POLE_BAND);
        let w = 10.0 - rng.gen_range(0.0..10.0);
        let b = theorem_bound(&RealArgs::new(sigma, w).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(b > 0.0, || format!("bound {b:e} at sigma={sigma} w={w}"))?;
        min = min.min(b);
    }
    Ok(format!("1000 points, smallest bound {min:.3e}"))
}

fn shift_recurrence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = EMConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let s = Complex64::new(rng.gen_range(0.1..=5.0), rng.gen_range(-20.0..=20.0));
        let w = 10.0 - rng.gen_range(0.0..10.0);
        let a = hurwitz_zeta(&HurwitzArgs::new(s, w).map_err(|e| e.to_string())?, &cfg)
            .map_err(|e| e.to_string())?;
        let b = hurwitz_zeta(
            &HurwitzArgs::new(s, w + 1.0).map_err(|e| e.to_string())?,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        let lead = Complex64::new(w, 0.0).powc(-s);
        let residual = (a.value - b.value - lead).norm();
        // plus the rounding of w^{-s} itself
        let budget = a.abs_error_estimate
            + b.abs_error_estimate
            + 4.0 * f64::EPSILON * lead.norm() * (1.0 + s.norm() * w.ln().abs());
        ensure(residual <= budget, || {
            format!("s={s} w={w}: residual {residual:e} > {budget:e}")
        })?;
        worst = worst.max(residual / budget);
    }
    Ok(format!("200 draws, worst residual/budget {worst:.2}"))
}

fn identities() -> Check {
    let cfg = EMConfig::default();
    let points = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(0.5, 5.0),
    ];
    let mut count = 0;
    for &s in &points {
        let half = zetabound::check_half_identity(s, &cfg).map_err(|e| e.to_string())?;
        ensure(half.holds(), || format!("half identity at s={s}: {half:?}"))?;
        count += 1;
        for q in [1u32, 2, 6, 12] {
            let p = zetabound::check_principal_identity(q, s, &cfg).map_err(|e| e.to_string())?;
            ensure(p.holds(), || {
                format!("principal identity q={q} s={s}: {p:?}")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} identity checks within their error budgets"
    ))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn character_algebra() -> Check {
    let mut worst: f64 = 0.0;
    for q in 1..=50u32 {
        let qq = u64::from(q);
        let phi = (0..qq).filter(|&a| gcd(a, qq) == 1).count();
        let table = characters_mod(q).map_err(|e| e.to_string())?;
        ensure(table.len() == phi, || {
            format!("q={q}: {} characters, phi={phi}", table.len())
        })?;
        for (i, x) in table.iter().enumerate() {
            for (j, y) in table.iter().enumerate() {
                let sum: Complex64 = (0..qq).map(|a| x.value(a) * y.value(a).conj()).sum();
                let expected = if i == j { phi as f64 } else { 0.0 };
                let d = (sum - expected).norm();
                ensure(d <= 1e-12, || {
                    format!("q={q}: orthogonality ({i},{j}) off by {d:e}")
                })?;
                worst = worst.max(d);
            }
            for a in 0..qq {
                for b in 0..qq {
                    let d = (x.value(a * b % qq) - x.value(a) * x.value(b)).norm();
                    ensure(d <= 1e-12, || {
                        format!("q={q} chi={i}: multiplicativity at ({a},{b}) off by {d:e}")
                    })?;
                    worst = worst.max(d);
                }
            }
        }
    }
    Ok(format!("q <= 50, worst deviation {worst:.1e}"))
}

fn deterministic_csv() -> Check {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_zetabound"))
            .args([
                "--jobs", jobs, "scan", "riemann", "--from", "0.1", "--to", "0.9", "--step", "0.1",
            ])
            .env_remove("ZETABOUND_CONFIG")
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run("4")?;
    let second = run("4")?;
    let serial = run("1")?;
    ensure(first.status.success(), || {
        format!("exit {:?}", first.status.code())
    })?;
    ensure(first.stdout == second.stdout, || "two runs differ".into())?;
    ensure(first.stdout == serial.stdout, || {
        "parallel and serial runs differ".into()
    })?;
    let lines = first.stdout.iter().filter(|&&b| b == b'\n').count();
    ensure(lines == 10, || format!("{lines} lines"))?;
    Ok(format!(
        "{} identical bytes across runs",
        first.stdout.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1 known values", known_values),
        ("AC2 bound sweep", theorem_sweep),
        ("AC3 lambda identity", lambda_identity),
        ("AC4 lambda monotone and limit", lambda_monotone),
        ("AC5 zeta negative on (0,1)", riemann_scan),
        ("AC6 chi2 zero-free certificate", chi2_certificate),
        ("AC7 bound positive for sigma > 1", bound_positive_above_one),
        ("AC8 shift recurrence", shift_recurrence),
        ("AC9 L-function identities", identities),
        ("AC10 character algebra", character_algebra),
        ("AC11 deterministic scan CSV", deterministic_csv),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
