#![no_main]

use holonomy_cli::ini;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(parsed) = ini::parse_bytes(data) {
        for section in parsed.sections() {
            assert!(!section.is_empty());
            for (key, _) in parsed.section(section).unwrap() {
                assert!(!key.is_empty());
            }
        }
    }
});
