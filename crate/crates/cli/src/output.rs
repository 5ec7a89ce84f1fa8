//! Deterministic CSV and JSON rendering.

use num_integer::Integer;
use serde::Serialize;
use zetabound::{ComplexValue, DirichletCharacter, ScanRecord, Sign};

/// Header of every scan CSV.
pub const SCAN_HEADER: &str = "sigma,subject,value_re,value_im,error,bound,sign";

/// Version tag carried by every JSON document.
pub const SCHEMA_VERSION: &str = "1";

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex(z: ComplexValue) -> (String, String) {
    (fmt_f64(z.re), fmt_f64(z.im))
}

/// A JSON document with `schema_version` as its first field.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema_version: &'static str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn to_json<T: Serialize>(body: &T) -> String {
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        body,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable document");
    text.push('\n');
    text
}

/// A scan row: a successful record or a point whose evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub sigma: f64,
    pub subject: String,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub error: Option<f64>,
    pub bound: Option<f64>,
    pub sign: Sign,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl ScanRow {
    pub fn from_record(r: &ScanRecord) -> Self {
        Self {
            sigma: r.sigma,
            subject: r.subject.clone(),
            value_re: Some(r.value.re),
            value_im: Some(r.value.im),
            error: Some(r.error_estimate),
            bound: r.bound,
            sign: r.sign,
            failure: None,
        }
    }

    pub fn failed(sigma: f64, subject: String, failure: String) -> Self {
        Self {
            sigma,
            subject,
            value_re: None,
            value_im: None,
            error: None,
            bound: None,
            sign: Sign::Indeterminate,
            failure: Some(failure),
        }
    }

    pub fn csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            fmt_f64(self.sigma),
            csv_field(&self.subject),
            opt(self.value_re),
            opt(self.value_im),
            opt(self.error),
            opt(self.bound),
            self.sign.as_str()
        )
    }
}

/// Quotes a field containing a comma or quote.
pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// `0` off the units, `1` for trivial phase, otherwise `e(k/m)` in lowest
/// terms, meaning `exp(2πi k/m)`.
pub fn character_value_token(chi: &DirichletCharacter, a: u64) -> String {
    match chi.phase(a) {
        None => "0".into(),
        Some(0) => "1".into(),
        Some(k) => {
            let g = k.gcd(&chi.order());
            format!("e({}/{})", k / g, chi.order() / g)
        }
    }
}

pub fn chars_csv(chars: &[DirichletCharacter]) -> String {
    let mut out = String::from("index,order,principal,primitive,exponents,values\n");
    for chi in chars {
        let exps: Vec<String> = chi.exponents().iter().map(u32::to_string).collect();
        let vals: Vec<String> = (0..u64::from(chi.modulus()))
            .map(|a| character_value_token(chi, a))
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            chi.index(),
            chi.order(),
            chi.is_principal(),
            chi.is_primitive(),
            exps.join(";"),
            vals.join(" ")
        ));
    }
    out
}
