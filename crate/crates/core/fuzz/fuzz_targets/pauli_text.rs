#![no_main]

use libfuzzer_sys::fuzz_target;
use sls_core::PauliOperator;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<PauliOperator>() {
        // whatever parses must print back to an equal operator
        let again: PauliOperator = p.to_string().parse().expect("display output parses");
        assert_eq!(again, p);
        assert_eq!(p.weight(), p.support().len());
    }
});
