//! Subcommand implementations. Each command renders its whole output into
//! strings inside the worker pool; writing happens afterwards, in order.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use zetabound::{
    certify_chi2_zero_free, certify_negative, certify_riemann_zero_free, characters_mod,
    hurwitz_zeta, scan_points, verify_inequality, Certification, ComplexValue, DirichletCharacter,
    EvalResult, HurwitzArgs, Interval, RealArgs, Refusal, ScanOutcome, ScanSubject, Subject,
    ZetaError,
};

use crate::output::{chars_csv, fmt_f64, scan_csv, to_json, ScanRow};
use crate::{CertifyTarget, Cli, CliError, Command, Format, RunConfig, ScanArgs, ScanSubjectArg};

/// Rendered output of one command.
#[derive(Debug, Default)]
struct Report {
    /// Main document: stdout, or the `--out` file.
    main: String,
    /// Extra files (e.g. `scan --certificate`).
    files: Vec<(PathBuf, String)>,
    /// Diagnostics for the error stream.
    notes: String,
    /// Outcome after everything has been written.
    status: Option<CliError>,
}

impl Report {
    fn ok(main: String) -> Self {
        Self {
            main,
            ..Self::default()
        }
    }
}

/// Resolves the configuration, runs the command in a pool of
/// `jobs` workers and writes its output.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.global.config.as_deref(), &cli.global.overrides())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let report = pool.install(|| execute(&cli.command, &cfg))?;

    match &cfg.out {
        Some(path) => std::fs::write(path, &report.main)?,
        None => out.write_all(report.main.as_bytes())?,
    }
    for (path, text) in &report.files {
        std::fs::write(path, text)?;
    }
    err.write_all(report.notes.as_bytes())?;
    out.flush()?;
    match report.status {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Eval { s, w } => eval(*s, *w, cfg),
        Command::Bound { sigma, w } => bound(*sigma, *w, cfg),
        Command::Certify { target } => certify(target, cfg),
        Command::Scan(args) => scan(args, cfg),
        Command::Chars { q } => chars(*q, cfg),
    }
}

#[derive(Serialize)]
struct EvalDoc {
    s: ComplexValue,
    w: f64,
    #[serde(flatten)]
    result: EvalResult,
}

fn eval(s: ComplexValue, w: f64, cfg: &RunConfig) -> Result<Report, CliError> {
    let em = cfg.em_config();
    zetabound::hurwitz::check_pole(s, em.pole_band)?;
    let args = HurwitzArgs::new(s, w)?;
    let result = hurwitz_zeta(&args, &em)?;
    let main = match cfg.format {
        Format::Csv => format!(
            "s_re,s_im,w,value_re,value_im,error,n_used,k_used\n{},{},{},{},{},{},{},{}\n",
            fmt_f64(s.re),
            fmt_f64(s.im),
            fmt_f64(w),
            fmt_f64(result.value.re),
            fmt_f64(result.value.im),
            fmt_f64(result.abs_error_estimate),
            result.n_used,
            result.k_used
        ),
        Format::Json => to_json(&EvalDoc { s, w, result }),
    };
    Ok(Report::ok(main))
}

fn bound(sigma: f64, w: f64, cfg: &RunConfig) -> Result<Report, CliError> {
    let args = RealArgs::with_band(sigma, w, cfg.pole_band)?;
    let report = verify_inequality(&args, &cfg.em_config())?;
    let main = match cfg.format {
        Format::Csv => format!(
            "sigma,w,bound,value,margin,error,violation\n{},{},{},{},{},{},{}\n",
            fmt_f64(sigma),
            fmt_f64(w),
            fmt_f64(report.bound),
            fmt_f64(report.zeta_value),
            fmt_f64(report.margin),
            fmt_f64(report.error_estimate),
            report.violation
        ),
        Format::Json => to_json(&report),
    };
    Ok(Report::ok(main))
}

/// An issued composite, tagged like [`Certification`].
#[derive(Serialize)]
struct Issued<'a, T: Serialize> {
    status: &'static str,
    #[serde(flatten)]
    certificate: &'a T,
}

fn certify(target: &CertifyTarget, cfg: &RunConfig) -> Result<Report, CliError> {
    let em = cfg.em_config();
    match target {
        CertifyTarget::Negative { sigma, w } => {
            let args = RealArgs::with_band(*sigma, *w, cfg.pole_band)?;
            let cert = certify_negative(&args);
            let mut report = Report::ok(to_json(&cert));
            if let Certification::Refused(r) = cert {
                report.status = Some(CliError::Refused(r.reason));
            }
            Ok(report)
        }
        CertifyTarget::Riemann => {
            let composite = certify_riemann_zero_free(&em)?;
            Ok(Report::ok(to_json(&Issued {
                status: "issued",
                certificate: &composite,
            })))
        }
        CertifyTarget::Chi2 => {
            let composite = certify_chi2_zero_free(&em)?;
            Ok(Report::ok(to_json(&Issued {
                status: "issued",
                certificate: &composite,
            })))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub points: usize,
    pub failed: usize,
    pub min_abs_value: f64,
    /// `pos`, `neg`, `mixed` or `none` (no successful points).
    pub verdict: String,
    pub complete: bool,
    pub certified: bool,
    pub offending: Vec<f64>,
}

impl ScanSummary {
    pub fn line(&self) -> String {
        format!(
            "# summary: points={} failed={} min_abs_value={} verdict={} complete={} certified={}\n",
            self.points,
            self.failed,
            fmt_f64(self.min_abs_value),
            self.verdict,
            self.complete,
            self.certified
        )
    }
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    subject: &'a Subject,
    from: f64,
    to: f64,
    step: f64,
    records: &'a [ScanRow],
    summary: &'a ScanSummary,
}

fn scan(args: &ScanArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let table: Vec<DirichletCharacter>;
    let subject = match args.subject {
        ScanSubjectArg::Riemann => ScanSubject::Riemann,
        ScanSubjectArg::Hurwitz => {
            let w = args
                .w
                .ok_or_else(|| CliError::Config("scan hurwitz needs --w".into()))?;
            ScanSubject::Hurwitz { w }
        }
        ScanSubjectArg::L => {
            let q = args
                .q
                .ok_or_else(|| CliError::Config("scan L needs --q".into()))?;
            table = characters_mod(q)?;
            let chi = table.get(args.chi).ok_or_else(|| {
                ZetaError::Parameter(format!(
                    "character index {} out of range: {} characters mod {q}",
                    args.chi,
                    table.len()
                ))
            })?;
            ScanSubject::DirichletL(chi)
        }
    };
    let subject_id = subject.subject().id();
    let points = scan_points(subject, args.from, args.to, args.step, &cfg.em_config())?;

    let mut rows = Vec::with_capacity(points.len());
    let mut records = Vec::with_capacity(points.len());
    let mut first_failure: Option<(f64, ZetaError)> = None;
    for (sigma, result) in points {
        match result {
            Ok(rec) => {
                rows.push(ScanRow::from_record(&rec));
                records.push(rec);
            }
            Err(e) => {
                rows.push(ScanRow::failed(sigma, subject_id.clone(), e.to_string()));
                first_failure.get_or_insert((sigma, e));
            }
        }
    }
    let failed = rows.len() - records.len();
    let outcome = ScanOutcome::from_records(subject.subject(), records);
    let certificate = if failed == 0 {
        outcome.certificate()
    } else {
        None
    };
    let verdict = match (outcome.sign, outcome.records.is_empty()) {
        (Some(s), _) => s.as_str(),
        (None, true) => "none",
        (None, false) => "mixed",
    };
    let summary = ScanSummary {
        points: rows.len(),
        failed,
        min_abs_value: outcome.min_abs_value,
        verdict: verdict.to_string(),
        complete: failed == 0,
        certified: certificate.is_some(),
        offending: outcome.offending.clone(),
    };

    let mut report = Report::default();
    match cfg.format {
        Format::Csv => {
            report.main = scan_csv(&rows);
            report.notes = summary.line();
        }
        Format::Json => {
            report.main = to_json(&ScanDoc {
                subject: &outcome.subject,
                from: args.from,
                to: args.to,
                step: args.step,
                records: &rows,
                summary: &summary,
            });
        }
    }

    let refusal_reason = match (&first_failure, &certificate) {
        (Some((sigma, e)), _) => Some(format!(
            "{failed} of {} points failed, first at sigma={sigma}: {e}",
            rows.len()
        )),
        (None, None) => Some(format!(
            "values do not share a strict sign (offending sigma: {:?})",
            outcome.offending
        )),
        (None, Some(_)) => None,
    };
    if let Some(path) = &args.certificate {
        let doc = match (&certificate, &refusal_reason) {
            (Some(c), _) => Certification::Issued(c.clone()),
            (None, reason) => Certification::Refused(Refusal {
                subject: outcome.subject.clone(),
                interval: Interval::closed(args.from, args.to),
                reason: reason.clone().unwrap_or_default(),
            }),
        };
        report.files.push((path.clone(), to_json(&doc)));
    }

    report.status = match (first_failure, refusal_reason) {
        (Some((sigma, e)), _) => Some(CliError::ScanIncomplete {
            failed,
            sigma,
            source: e,
        }),
        (None, Some(reason)) => Some(CliError::Refused(reason)),
        (None, None) => None,
    };
    Ok(report)
}

#[derive(Serialize)]
struct CharsDoc<'a> {
    modulus: u32,
    count: usize,
    characters: &'a [DirichletCharacter],
}

fn chars(q: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    let table = characters_mod(q)?;
    let main = match cfg.format {
        Format::Csv => chars_csv(&table),
        Format::Json => to_json(&CharsDoc {
            modulus: q,
            count: table.len(),
            characters: &table,
        }),
    };
    Ok(Report::ok(main))
}
