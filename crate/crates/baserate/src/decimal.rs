//! Decimal formatting shared by the CSV and table emitters.

use crate::num::Real;

/// Renders a finite value as plain decimal with 9 significant digits,
/// trailing zeros trimmed.
///
/// The output survives a parse and re-format cycle unchanged: 9 digits pin
/// the value far tighter than the gap between adjacent 9-digit decimals, so
/// the nearest float to the printed string formats back to the same string.
pub fn sig9<R: Real>(value: R) -> String {
    let v = value.to_f64().expect("sig9 input converts to f64");
    assert!(v.is_finite(), "sig9 formats finite values, got {v}");
    if v == 0.0 {
        return "0".to_string();
    }
    let scientific = format!("{:.8e}", v.abs());
    let (mantissa, exponent) = scientific
        .split_once('e')
        .expect("scientific notation always carries an exponent");
    let exponent: i32 = exponent.parse().expect("float exponent parses");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 9);

    let mut out = String::new();
    if v < 0.0 {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    } else {
        let point = exponent as usize + 1;
        if point >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(point - digits.len()) {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..point]);
            out.push('.');
            out.push_str(&digits[point..]);
        }
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        out
    }
}
