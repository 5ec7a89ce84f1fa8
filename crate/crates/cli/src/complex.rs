//! Parsing of `a+bi` style complex literals.

use num_complex::Complex64;

/// Accepts `a`, `a+bi`, `a-bi`, `bi`, `i` and `-i`, with optional exponents
/// (`1e-3+2.5e1i`).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if body.is_empty() {
        return Err("empty complex literal".into());
    }
    let (re, im) = match body.strip_suffix('i') {
        None => (parse_part(&body, text)?, 0.0),
        Some(body) => match split_point(body) {
            Some(p) => (parse_part(&body[..p], text)?, parse_imag(&body[p..], text)?),
            None => (0.0, parse_imag(body, text)?),
        },
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("'{text}' is not a finite complex number"));
    }
    Ok(Complex64::new(re, im))
}

/// Position of the sign that starts the imaginary part.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

fn parse_part(part: &str, whole: &str) -> Result<f64, String> {
    part.parse::<f64>()
        .map_err(|_| format!("cannot parse '{whole}' as a complex number (expected a+bi)"))
}

fn parse_imag(part: &str, whole: &str) -> Result<f64, String> {
    match part {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_part(part, whole),
    }
}
