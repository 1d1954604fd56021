//! Parsing and formatting of complex scalar literals.
//!
//! The textual form is `re+imi` (e.g. `1.5-0.25i`, `2i`, `-3`, `i`), used by
//! CLI flags and CSV cells. Formatting uses Rust's shortest round-trip float
//! representation, so format -> parse is exact.

use crate::error::{Error, Result};
use crate::qkernel::Scalar;

/// Render a scalar as `re+imi` with both parts always present.
pub fn format_scalar(s: Scalar) -> String {
    let im = if s.im.is_sign_negative() && s.im == 0.0 {
        0.0 // normalize -0
    } else {
        s.im
    };
    if im < 0.0 {
        format!("{}-{}i", s.re, -im)
    } else {
        format!("{}+{}i", s.re, im)
    }
}

/// Parse a complex literal. Accepted forms: `1.5`, `-2`, `1e-3`, `i`, `-i`,
/// `2.5i`, `1+2i`, `-1.5e2-0.25i`. Whitespace is trimmed. Values must be
/// finite.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    // Split at the last '+'/'-' that is not part of an exponent and not the
    // leading sign.
    let bytes = s.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(i) if s.ends_with('i') || s.ends_with('I') => (&s[..i], &s[i..]),
        _ => {
            // single component: imaginary if it ends with i
            if s.ends_with('i') || s.ends_with('I') {
                ("", s)
            } else {
                (s, "")
            }
        }
    };
    let re = if re_str.is_empty() { 0.0 } else { parse_f64(re_str)? };
    let im = if im_str.is_empty() {
        0.0
    } else {
        let body = &im_str[..im_str.len() - 1];
        match body {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => parse_f64(body)?,
        }
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::Parse(format!("non-finite scalar: {input:?}")));
    }
    Ok(Scalar::new(re, im))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}")))
}
