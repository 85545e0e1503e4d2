//! Exact stabilizer simulation of encoding, merge/split schedules and
//! logical teleportation.

mod protocol;
mod state;

pub use protocol::{
    encode_merge_input, inject_error, run_merge_schedule, run_split_schedule, syndrome, teleport,
    MergeRun, SplitRun, TeleportReport, Teleporter,
};
pub use state::{MeasurementRecord, StabilizerState, StateLabel};

use serde::{Deserialize, Serialize};

use crate::code::{analyze, OperatorPair, SubsystemCode};
use crate::error::{Result, SlsError};
use crate::pauli::{Pauli, PauliOperator};

/// Which member of a gauge pair is fixed to `+1` when encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeChoice {
    X,
    Z,
}

/// `Y_L = i X_L Z_L`, Hermitian because the pair anticommutes.
pub fn logical_y(x: &PauliOperator, z: &PauliOperator) -> PauliOperator {
    let xz = x * z;
    let e = xz.phase_exp() + 1;
    xz.with_phase(e)
}

/// Signed logical operator whose `+1` eigenstate is `label`.
pub fn logical_for(label: StateLabel, pair: &OperatorPair) -> PauliOperator {
    let op = match label.axis() {
        Pauli::X => pair.x.clone(),
        Pauli::Z => pair.z.clone(),
        _ => logical_y(&pair.x, &pair.z),
    };
    if label.sign() < 0 {
        op.negated()
    } else {
        op
    }
}

/// Generators of the encoded state: the stabilizer, one signed logical per
/// logical qubit and one gauge operator per gauge qubit.
pub fn encoding_generators(
    stabilizers: &[PauliOperator],
    logicals: &[OperatorPair],
    labels: &[StateLabel],
    gauge_pairs: &[OperatorPair],
    gauge: &[GaugeChoice],
) -> Result<Vec<PauliOperator>> {
    if labels.len() != logicals.len() {
        return Err(SlsError::InvalidEncoding(format!(
            "{} logical labels for {} logical qubits",
            labels.len(),
            logicals.len()
        )));
    }
    if gauge.len() != gauge_pairs.len() {
        return Err(SlsError::InvalidEncoding(format!(
            "{} gauge choices for {} gauge qubits",
            gauge.len(),
            gauge_pairs.len()
        )));
    }
    let mut gens: Vec<PauliOperator> = stabilizers.to_vec();
    gens.extend(logicals.iter().zip(labels).map(|(p, &l)| logical_for(l, p)));
    gens.extend(gauge_pairs.iter().zip(gauge).map(|(p, c)| match c {
        GaugeChoice::X => p.x.clone(),
        GaugeChoice::Z => p.z.clone(),
    }));
    Ok(gens)
}

/// Encode `labels` into `code`, fixing gauge qubits per `gauge`.
pub fn encode(
    code: &SubsystemCode,
    labels: &[StateLabel],
    gauge: &[GaugeChoice],
    seed: u64,
) -> Result<StabilizerState> {
    let a = analyze(code)?;
    let gens = encoding_generators(
        &a.stabilizer_generators,
        &a.logical_pairs,
        labels,
        &a.gauge_pairs,
        gauge,
    )?;
    StabilizerState::from_generators(code.n(), gens, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{color_code, subsystem_surface_code, surface_code};

    #[test]
    fn encoded_logicals_have_expected_values() {
        let cc = color_code(3).unwrap();
        let a = analyze(&cc).unwrap();
        for label in StateLabel::ALL {
            let st = encode(&cc, &[label], &[], 3).unwrap();
            let pair = &a.logical_pairs[0];
            let got = (
                st.expectation(&pair.x).unwrap().unwrap_or(0),
                st.expectation(&logical_y(&pair.x, &pair.z))
                    .unwrap()
                    .unwrap_or(0),
                st.expectation(&pair.z).unwrap().unwrap_or(0),
            );
            assert_eq!(got, label.expectations(), "{label}");
        }
    }

    #[test]
    fn fresh_stabilizers_measure_plus_one() {
        let sc = surface_code(3).unwrap();
        let mut st = encode(&sc, &[StateLabel::XPlus], &[], 9).unwrap();
        for s in analyze(&sc).unwrap().stabilizer_generators {
            let r = st.measure(&s, "check").unwrap();
            assert!(r.deterministic);
            assert_eq!(r.outcome, 1);
        }
    }

    #[test]
    fn ssc_encoding_is_a_full_generator_set() {
        let ssc = subsystem_surface_code(3).unwrap();
        let st = encode(&ssc, &[StateLabel::ZPlus], &[GaugeChoice::Z], 0).unwrap();
        assert_eq!(st.generators().len(), 8);
        assert!(encode(&ssc, &[StateLabel::ZPlus], &[], 0).is_err());
    }
}
