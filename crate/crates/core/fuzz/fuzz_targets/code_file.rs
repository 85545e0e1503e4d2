//! Code files come from users; parsing and validation must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sls_core::io::parse_code_file;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_code_file(text) else {
        return;
    };
    // keep the analysis cheap
    if file.n > 12 || file.gauge_generators.len() > 24 {
        return;
    }
    if let Ok(code) = file.to_code() {
        let _ = code.analyze();
    }
});
