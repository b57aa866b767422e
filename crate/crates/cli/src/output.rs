//! Deterministic output formatting.
//!
//! All numbers are emitted with 12 significant digits in scientific
//! notation, and JSON objects serialize with sorted keys, so identical runs
//! produce byte-identical files.

use serde_json::Value;

/// A number formatted with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// A JSON number rounded to 12 significant digits.
pub fn num12(x: f64) -> Value {
    let rounded: f64 = fmt12(x).parse().expect("formatted float reparses");
    Value::from(rounded)
}

/// `num12` for optional quantities; `None` becomes JSON `null`.
pub fn opt_num12(x: Option<f64>) -> Value {
    match x {
        Some(v) => num12(v),
        None => Value::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_are_stable_and_round_trip() {
        assert_eq!(fmt12(0.0), "0.00000000000e0");
        assert_eq!(fmt12(1.0 / (2.0 * std::f64::consts::PI)), "1.59154943092e-1");
        let x = 0.123456789012345;
        let reparsed: f64 = fmt12(x).parse().unwrap();
        assert!((reparsed - x).abs() < 1e-12);
    }

    #[test]
    fn json_numbers_are_rounded_values() {
        let v = num12(std::f64::consts::PI);
        assert_eq!(v.as_f64().unwrap(), 3.14159265359);
        assert_eq!(opt_num12(None), Value::Null);
    }
}
