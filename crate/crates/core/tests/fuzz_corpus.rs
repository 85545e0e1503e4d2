//! Replays the checked-in fuzz seeds through the same checks as the fuzz
//! targets, so the corpus keeps working on stable toolchains.

use std::fs;
use std::path::PathBuf;

use sls_core::io::parse_code_file;
use sls_core::sim::StateLabel;
use sls_core::PauliOperator;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn pauli_text_seeds() {
    let mut parsed = 0;
    for (_, data) in seeds("pauli_text") {
        let Ok(s) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(p) = s.parse::<PauliOperator>() {
            assert_eq!(p.to_string().parse::<PauliOperator>().unwrap(), p);
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn code_file_seeds() {
    for (name, data) in seeds("code_file") {
        let text = String::from_utf8(data).unwrap();
        let file = parse_code_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let valid = file.to_code().and_then(|c| c.analyze()).is_ok();
        assert_eq!(valid, !name.starts_with("minus"), "{name}");
    }
}

#[test]
fn state_label_seeds() {
    let labels: Vec<StateLabel> = seeds("state_label")
        .into_iter()
        .filter_map(|(_, d)| String::from_utf8(d).ok()?.parse().ok())
        .collect();
    for l in StateLabel::ALL {
        assert!(labels.contains(&l), "{l} missing from the corpus");
    }
}
