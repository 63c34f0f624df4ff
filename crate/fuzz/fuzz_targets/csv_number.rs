#![no_main]

use holonomy_cli::format::{csv_number, report_number};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: [u8; 8]| {
    let x = f64::from_le_bytes(data);
    let text = csv_number(x);
    let back: f64 = text.parse().expect("csv text parses");
    if x.is_finite() {
        assert!(back == x || ((back - x) / x).abs() <= 5e-12 || (x.abs() < 1e-300 && back == 0.0));
        assert_eq!(csv_number(back), text);
    } else {
        assert!(back.is_nan() == x.is_nan());
    }
    let _ = report_number(x);
});
