use proptest::prelude::*;
use sls_core::builders::{color_code, surface_code};
use sls_core::sim::{encode, StabilizerState, StateLabel};
use sls_core::{Pauli, PauliOperator};

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

fn ops(n: usize, count: usize) -> impl Strategy<Value = Vec<PauliOperator>> {
    let op = (prop::collection::vec(0usize..4, n), prop::bool::ANY).prop_map(|(ls, neg)| {
        PauliOperator::from_letters(
            &ls.iter().map(|&i| LETTERS[i]).collect::<Vec<_>>(),
            if neg { 2 } else { 0 },
        )
    });
    prop::collection::vec(op, 1..=count)
}

proptest! {
    #[test]
    fn same_seed_same_outcomes(seq in ops(4, 12), seed in any::<u64>()) {
        let run = || {
            let mut st = StabilizerState::zero(4, seed);
            seq.iter().map(|p| st.measure(p, "m").unwrap().outcome).collect::<Vec<_>>()
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn measurement_is_repeatable_and_leaves_a_valid_state(seq in ops(4, 12), seed in any::<u64>()) {
        let mut st = StabilizerState::zero(4, seed);
        for p in &seq {
            let first = st.measure(p, "m").unwrap();
            prop_assert!(st.validate().is_ok());
            let again = st.measure(p, "m").unwrap();
            prop_assert!(again.deterministic);
            prop_assert_eq!(again.outcome, first.outcome);
            prop_assert_eq!(st.expectation(&p.clone().negated()).unwrap(), Some(-first.outcome));
        }
    }

    #[test]
    fn generators_read_plus_one(seq in ops(3, 8), seed in any::<u64>()) {
        let mut st = StabilizerState::zero(3, seed);
        for p in &seq {
            st.measure(p, "m").unwrap();
        }
        for g in st.generators().to_vec() {
            prop_assert_eq!(st.expectation(&g).unwrap(), Some(1));
        }
    }
}

#[test]
fn random_outcomes_are_balanced() {
    // Z_L on an encoded |+_L>, 400 seeds: a fair coin lands within
    // 200 ± 60 with probability far above 1 - 1e-9
    let sc = surface_code(3).unwrap();
    let z = sc.analyze().unwrap().logical_pairs[0].z.clone();
    let plus = (0..400u64)
        .filter(|&seed| {
            let mut st = encode(&sc, &[StateLabel::XPlus], &[], seed).unwrap();
            st.measure(&z, "m").unwrap().outcome > 0
        })
        .count();
    assert!((140..=260).contains(&plus), "{plus} of 400");
}

#[test]
fn logical_outcomes_are_deterministic_on_eigenstates() {
    let cc = color_code(3).unwrap();
    let pair = cc.analyze().unwrap().logical_pairs[0].clone();
    for seed in 0..20 {
        let mut st = encode(&cc, &[StateLabel::ZMinus], &[], seed).unwrap();
        let r = st.measure(&pair.z, "m").unwrap();
        assert!(r.deterministic);
        assert_eq!(r.outcome, -1);
    }
}
