mod common;

use common::oracle;
use proptest::prelude::*;
use sls_core::distance::bare_distance;
use sls_core::{distance, DistanceResult, Pauli, PauliOperator, SlsError, SubsystemCode};

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Random gauge generating sets on at most five qubits.
fn gauge_set() -> impl Strategy<Value = (usize, Vec<PauliOperator>)> {
    (1usize..=5).prop_flat_map(|n| {
        let op = prop::collection::vec(0usize..4, n).prop_map(|ls| {
            PauliOperator::from_letters(&ls.iter().map(|&i| LETTERS[i]).collect::<Vec<_>>(), 0)
        });
        (Just(n), prop::collection::vec(op, 0..=5))
    })
}

fn masks(gens: &[PauliOperator]) -> Vec<oracle::Mask> {
    gens.iter()
        .map(|g| oracle::from_str(&g.to_string()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn analysis_matches_enumeration((n, gens) in gauge_set()) {
        let code = SubsystemCode::new("p", n, gens.clone()).unwrap();
        let a = match code.analyze() {
            Ok(a) => a,
            // sign-inconsistent generating sets are legitimately rejected
            Err(SlsError::MinusIdentityInCenter) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let m = masks(&gens);
        prop_assert_eq!((a.params.k, a.params.g), oracle::k_and_g(n, &m));
        prop_assert!(a.verify_structure(&code).is_ok());
        let center = oracle::center(&m);
        for s in &a.stabilizer_generators {
            prop_assert!(center.contains(&oracle::from_str(&s.to_string())));
        }
        prop_assert_eq!(1usize << a.s(), center.len());
    }

    #[test]
    fn distance_matches_enumeration((n, gens) in gauge_set()) {
        let code = SubsystemCode::new("p", n, gens.clone()).unwrap();
        let d = match distance(&code, n) {
            Ok(d) => d,
            Err(SlsError::MinusIdentityInCenter) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let expected = match oracle::distance(n, &masks(&gens)) {
            Some(w) => DistanceResult::Exact(w as usize),
            None => DistanceResult::ExceedsMaxWeight(n),
        };
        prop_assert_eq!(d, expected);
        // bare logicals are dressed logicals, so never lighter
        if let (Some(b), Some(dd)) = (bare_distance(&code, n).unwrap().exact(), d.exact()) {
            prop_assert!(b >= dd);
        }
    }
}
