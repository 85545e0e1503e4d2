#![no_main]
use libfuzzer_sys::fuzz_target;

use sls_core::sim::StateLabel;

fuzz_target!(|data: &str| {
    if let Ok(label) = data.parse::<StateLabel>() {
        assert_eq!(label.to_string().parse::<StateLabel>().ok(), Some(label));
    }
});
