//! Unit-suffixed length parsing for human-facing input.
//!
//! Accepted suffixes: `pm`, `nm`, `um`, `µm`, `mm`, `m`. A bare number is
//! rejected so that a missing unit never passes silently.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitError(pub String);

impl fmt::Display for UnitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UnitError {}

const SUFFIXES: [(&str, i32); 7] = [
    ("pm", -12),
    ("nm", -9),
    ("um", -6),
    ("µm", -6),
    ("μm", -6),
    ("mm", -3),
    ("m", 0),
];

/// Parses `"1550nm"`, `"1.55 um"`, `"2.4025pm"` into metres.
pub fn parse_length(text: &str) -> Result<f64, UnitError> {
    let s = text.trim();
    let (number, shift) = SUFFIXES
        .iter()
        .find_map(|&(suffix, shift)| s.strip_suffix(suffix).map(|n| (n.trim_end(), shift)))
        .ok_or_else(|| {
            UnitError(format!(
                "{text:?} has no length unit (expected one of pm, nm, um, µm, mm, m)"
            ))
        })?;
    let not_a_number = || UnitError(format!("{text:?} is not a number followed by a unit"));
    // Shift the decimal exponent instead of multiplying, so "10um" is exactly 1e-5.
    let (mantissa, exponent) = match number.find(['e', 'E']) {
        Some(i) => (
            &number[..i],
            number[i + 1..].parse::<i32>().map_err(|_| not_a_number())?,
        ),
        None => (number, 0),
    };
    if mantissa.is_empty()
        || !mantissa
            .bytes()
            .all(|b| b.is_ascii_digit() || b"+-.".contains(&b))
    {
        return Err(not_a_number());
    }
    let value: f64 = format!("{mantissa}e{}", exponent + shift)
        .parse()
        .map_err(|_| not_a_number())?;
    if !value.is_finite() {
        return Err(UnitError(format!("{text:?} is not finite")));
    }
    Ok(value)
}

/// Scale factor of a unit name, for output conversion.
pub fn unit_scale(unit: &str) -> Option<f64> {
    SUFFIXES
        .iter()
        .find(|&&(suffix, _)| suffix == unit)
        .map(|&(_, shift)| format!("1e{shift}").parse().expect("valid literal"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_suffixes() {
        assert_eq!(parse_length("1550nm").unwrap(), 1.55e-6);
        assert_eq!(parse_length("1.55um").unwrap(), 1.55e-6);
        assert_eq!(parse_length("1.55µm").unwrap(), 1.55e-6);
        assert_eq!(parse_length("2.4025pm").unwrap(), 2.4025e-12);
        assert_eq!(parse_length("3mm").unwrap(), 3e-3);
        assert_eq!(parse_length("1m").unwrap(), 1.0);
        assert_eq!(parse_length(" 10 um ").unwrap(), 10e-6);
        assert_eq!(parse_length("-1nm").unwrap(), -1e-9);
        assert_eq!(parse_length("1e3nm").unwrap(), 1e-6);
    }

    #[test]
    fn rejects_missing_or_bad_units() {
        assert!(parse_length("1550").is_err());
        assert!(parse_length("nm").is_err());
        assert!(parse_length("1.2.3nm").is_err());
        assert!(parse_length("infnm").is_err());
        assert!(parse_length("5 furlongs").is_err());
    }

    #[test]
    fn unit_scales() {
        assert_eq!(unit_scale("nm"), Some(1e-9));
        assert_eq!(unit_scale("parsec"), None);
    }
}
