// SPDX-License-Identifier: Apache-2.0

//! Decimal text for CSV files and reports.

/// Shortest round-trip text of `x` rounded to 12 significant digits.
pub fn csv_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    rounded.to_string()
}

/// Fixed notation with 6 significant digits; scientific outside `[1e-4, 1e6)`.
pub fn report_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).expect("exponent");
    if !(-4..6).contains(&exp) {
        return sci;
    }
    format!("{x:.*}", (5 - exp) as usize)
}
