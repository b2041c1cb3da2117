//! Text forms shared by the CLI, the FFI layer and the file formats.
//!
//! Complex numbers are written as `re`, `re+imi`, `re-imi`, `imi` or `i`.
//! Polynomials are written as `coeffs: a0,a1,...,1` (ascending powers) or
//! `roots: z1^m1,z2^m2,...`.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TextError {
    #[error("cannot parse complex number `{0}`")]
    Complex(String),
    #[error("cannot parse number `{0}`")]
    Number(String),
    #[error("polynomial text must start with `coeffs:` or `roots:`, got `{0}`")]
    PolynomialPrefix(String),
    #[error("bad multiplicity in `{0}`")]
    Multiplicity(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("malformed line `{0}`")]
    Line(String),
}

/// Parse a complex number in one of the accepted textual forms.
pub fn parse_complex(text: &str) -> Result<Complex64, TextError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || TextError::Complex(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part.parse::<f64>().map_err(|_| err())?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| err())?,
        };
        Ok(Complex64::new(re, im))
    } else {
        s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err())
    }
}

/// Shortest round-trip rendering, e.g. `1`, `-0.5+2i`, `3.25-1e-20i`.
pub fn format_complex(z: Complex64) -> String {
    let re = clean_zero(z.re);
    let im = clean_zero(z.im);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Seventeen significant digits, bit-exact on re-parse.
pub fn format_f64_exact(x: f64) -> String {
    format!("{:.16e}", clean_zero(x))
}

fn clean_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Parsed polynomial text before validation.
#[derive(Debug, Clone, PartialEq)]
pub enum PolynomialText {
    Coefficients(Vec<Complex64>),
    Roots(Vec<(Complex64, usize)>),
}

pub fn parse_polynomial_text(text: &str) -> Result<PolynomialText, TextError> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("coeffs:") {
        let coeffs = rest
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolynomialText::Coefficients(coeffs))
    } else if let Some(rest) = trimmed.strip_prefix("roots:") {
        let mut roots = Vec::new();
        for item in rest.split(',') {
            let (pos, mult) = match item.split_once('^') {
                Some((p, m)) => {
                    let m = m
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| TextError::Multiplicity(item.to_string()))?;
                    if m == 0 {
                        return Err(TextError::Multiplicity(item.to_string()));
                    }
                    (p, m)
                }
                None => (item, 1),
            };
            roots.push((parse_complex(pos)?, mult));
        }
        Ok(PolynomialText::Roots(roots))
    } else {
        Err(TextError::PolynomialPrefix(trimmed.to_string()))
    }
}

/// An ordered, line-oriented `key: value` document.
///
/// Used for every structured output so that runs diff cleanly.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    entries: Vec<(String, String)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn push_list<I, T>(&mut self, key: impl Into<String>, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let body: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
        self.entries.push((key.into(), format!("[{}]", body.join(", "))));
        self
    }

    pub fn extend(&mut self, prefix: &str, other: &Document) -> &mut Self {
        for (k, v) in &other.entries {
            self.entries.push((format!("{prefix}{k}"), v.clone()));
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn parse(text: &str) -> Result<Self, TextError> {
        let mut doc = Document::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| TextError::Line(line.to_string()))?;
            doc.entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(doc)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

/// Split a `[a, b, c]` list value into its trimmed items.
pub fn split_list(value: &str) -> Result<Vec<&str>, TextError> {
    let inner = value
        .trim()
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| TextError::Line(value.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2-3i").unwrap(), Complex64::new(2.0, -3.0));
        assert_eq!(parse_complex("1e-3+2.5e2i").unwrap(), Complex64::new(1e-3, 250.0));
        assert_eq!(parse_complex("-1e-3i").unwrap(), Complex64::new(0.0, -1e-3));
        assert_eq!(parse_complex(" 0.5 + 1i ").unwrap(), Complex64::new(0.5, 1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn complex_round_trip() {
        for z in [
            Complex64::new(0.1, -0.2),
            Complex64::new(-3.0, 0.0),
            Complex64::new(0.0, 7.25),
            Complex64::new(1e-300, 2e300),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn exact_float_round_trip() {
        let x = std::f64::consts::PI / 7.0;
        assert_eq!(format_f64_exact(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn polynomial_forms() {
        match parse_polynomial_text("coeffs: 1,0,1").unwrap() {
            PolynomialText::Coefficients(c) => assert_eq!(c.len(), 3),
            _ => panic!(),
        }
        match parse_polynomial_text("roots: 1^2,-2").unwrap() {
            PolynomialText::Roots(r) => {
                assert_eq!(r, vec![(Complex64::new(1.0, 0.0), 2), (Complex64::new(-2.0, 0.0), 1)])
            }
            _ => panic!(),
        }
        assert!(parse_polynomial_text("poly: 1").is_err());
        assert!(parse_polynomial_text("roots: 1^0").is_err());
    }

    #[test]
    fn document_round_trip() {
        let mut doc = Document::new();
        doc.push("class", "(0 1)").push_list("taus", [1.5, 2.0]);
        let parsed = Document::parse(&doc.render()).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(split_list(parsed.get("taus").unwrap()).unwrap(), vec!["1.5", "2"]);
    }
}
