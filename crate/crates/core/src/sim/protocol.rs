use serde::Serialize;

use super::state::{MeasurementRecord, StabilizerState, StateLabel};
use super::{encoding_generators, logical_y};
use crate::code::{hermitian_part, OperatorPair, SubsystemCode};
use crate::error::{Result, SlsError};
use crate::gf2::{BinaryMatrix, BitVec, SpanBasis};
use crate::lattice::LogicalKind;
use crate::pauli::{product, Pauli, PauliOperator};
use crate::surgery::{build_merged_code, MergeResult, MergeSpec};

/// Product state of the two codes and the ancillas (each in `|+⟩`) in the
/// merged register. `gens_a` and `gens_b` are full encodings of A and B.
pub fn encode_merge_input(
    result: &MergeResult,
    gens_a: &[PauliOperator],
    gens_b: &[PauliOperator],
    seed: u64,
) -> Result<StabilizerState> {
    let spec = &result.spec;
    let n = spec.n_total();
    let mut gens: Vec<PauliOperator> = gens_a.iter().map(|g| spec.embed_a(g)).collect();
    gens.extend(gens_b.iter().map(|g| spec.embed_b(g)));
    gens.extend(
        spec.ancilla_ids
            .iter()
            .map(|&q| PauliOperator::single(n, q, Pauli::X)),
    );
    StabilizerState::from_generators(n, gens, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct MergeRun {
    /// product of the merging outcomes
    pub m1: i8,
    pub merge_outcomes: Vec<i8>,
    /// expected value of each merged stabilizer generator
    pub predicted: Vec<i8>,
    pub rounds: usize,
}

/// Signed operators with value `+1` on the post-merge state, derived from
/// the pre-merge state and the outcomes: elements of the old stabilizer
/// group commuting with every measured operator, and `m_i · M_i`.
fn post_merge_basis(
    before: &[PauliOperator],
    measured: &[PauliOperator],
    outcomes: &[i8],
) -> Vec<PauliOperator> {
    let n = measured.first().map_or(0, |m| m.n());
    let rows: Vec<BitVec> = measured
        .iter()
        .map(|m| {
            BitVec::from_bools(
                &before
                    .iter()
                    .map(|g| g.anticommutes_with(m))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut out: Vec<PauliOperator> = BinaryMatrix::from_rows(before.len(), rows)
        .kernel()
        .iter()
        .map(|v| hermitian_part(product(n, v.iter_ones().map(|i| &before[i]))))
        .collect();
    out.extend(measured.iter().zip(outcomes).map(|(m, &o)| {
        if o > 0 {
            m.clone()
        } else {
            m.clone().negated()
        }
    }));
    out
}

/// Sign of `p` relative to a product of the commuting `+1`-valued
/// operators in `basis`, or `None` if `p` is outside their span.
fn predicted_value(p: &PauliOperator, basis: &[PauliOperator], span: &SpanBasis) -> Option<i8> {
    let combo = span.express(&p.symplectic())?;
    let prod = product(p.n(), combo.iter_ones().map(|i| &basis[i]));
    match (4 + p.phase_exp() - prod.phase_exp()) % 4 {
        0 => Some(1),
        2 => Some(-1),
        _ => None,
    }
}

/// Measure the merging operators in boundary order, then re-measure every
/// merged stabilizer generator `rounds` times. Each re-measurement must be
/// deterministic and match the value predicted from the merge outcomes.
pub fn run_merge_schedule(
    state: &mut StabilizerState,
    result: &MergeResult,
    rounds: usize,
) -> Result<MergeRun> {
    let before = state.generators().to_vec();
    let mut outcomes = Vec::with_capacity(result.merging_operators.len());
    for op in &result.merging_operators {
        outcomes.push(state.measure(op, "merge")?.outcome);
    }
    let m1 = outcomes.iter().product();

    let basis = post_merge_basis(&before, &result.merging_operators, &outcomes);
    let span = SpanBasis::from_vectors(
        2 * state.n(),
        basis
            .iter()
            .map(|b| b.symplectic())
            .collect::<Vec<_>>()
            .iter(),
    );
    let stabs = &result.analysis.stabilizer_generators;
    let predicted = stabs
        .iter()
        .map(|s| {
            predicted_value(s, &basis, &span).ok_or_else(|| {
                SlsError::Consistency(format!("merged stabilizer {s} has no predicted value"))
            })
        })
        .collect::<Result<Vec<i8>>>()?;
    for round in 0..rounds {
        let label = format!("round-{}", round + 1);
        for (s, &want) in stabs.iter().zip(&predicted) {
            let r = state.measure(s, &label)?;
            if !r.deterministic || r.outcome != want {
                return Err(SlsError::Consistency(format!(
                    "{label}: stabilizer {s} gave {} (deterministic: {}), expected {want}",
                    r.outcome, r.deterministic
                )));
            }
        }
    }
    Ok(MergeRun {
        m1,
        merge_outcomes: outcomes,
        predicted,
        rounds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitRun {
    pub ancilla_outcomes: Vec<i8>,
    /// outcomes of the A and B stabilizer generators before correction
    pub syndrome: Vec<i8>,
    pub correction: PauliOperator,
}

/// Measure the ancillas in X and the stabilizer generators of A and B, then
/// apply a Pauli frame built from the code-qubit parts of the merging
/// operators that returns every A and B stabilizer to `+1`.
pub fn run_split_schedule(state: &mut StabilizerState, result: &MergeResult) -> Result<SplitRun> {
    let n = state.n();
    let mut ancilla_outcomes = Vec::new();
    for &q in result.ancillas() {
        let x = PauliOperator::single(n, q, Pauli::X);
        ancilla_outcomes.push(state.measure(&x, "split-ancilla")?.outcome);
    }
    let stabs = result.product_stabilizers();
    let mut syndrome = Vec::with_capacity(stabs.len());
    for s in &stabs {
        syndrome.push(state.measure(s, "split-syndrome")?.outcome);
    }

    let code_part = BitVec::from_indices(n, 0..result.spec.n_code());
    let pieces: Vec<PauliOperator> = result
        .merging_operators
        .iter()
        .map(|m| m.mask(&code_part))
        .collect();
    let rows: Vec<BitVec> = stabs
        .iter()
        .map(|s| {
            BitVec::from_bools(
                &pieces
                    .iter()
                    .map(|c| c.anticommutes_with(s))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let rhs = BitVec::from_bools(&syndrome.iter().map(|&o| o < 0).collect::<Vec<_>>());
    let sol = BinaryMatrix::from_rows(pieces.len(), rows)
        .solve_affine(&rhs)
        .ok_or_else(|| SlsError::Consistency("no Pauli frame matches the split syndrome".into()))?;
    let build = |c: &BitVec| product(n, c.iter_ones().map(|i| &pieces[i]));
    let correction = if sol.kernel.len() <= 16 {
        sol.enumerate()
            .map(|c| build(&c))
            .min_by_key(crate::code::canonical_key)
            .expect("affine space is nonempty")
    } else {
        build(&sol.particular)
    };
    state.apply_pauli(&correction)?;
    state.log_event(format!("split-correction {correction}"));
    for s in &stabs {
        if state.expectation(s)? != Some(1) {
            return Err(SlsError::Consistency(format!(
                "stabilizer {s} is not restored to +1 after the split correction"
            )));
        }
    }
    Ok(SplitRun {
        ancilla_outcomes,
        syndrome,
        correction,
    })
}

/// Apply `e` at the protocol point `when`.
pub fn inject_error(state: &mut StabilizerState, e: &PauliOperator, when: &str) -> Result<()> {
    if !e.is_hermitian() {
        return Err(SlsError::NonHermitian(e.to_string()));
    }
    state.apply_pauli(e)?;
    state.log_event(format!("error {e} at {when}"));
    Ok(())
}

/// Measure each operator and return the outcomes.
pub fn syndrome(
    state: &mut StabilizerState,
    stabilizers: &[PauliOperator],
    label: &str,
) -> Result<Vec<i8>> {
    stabilizers
        .iter()
        .map(|s| state.measure(s, label).map(|r| r.outcome))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectations {
    #[serde(rename = "X")]
    pub x: i8,
    #[serde(rename = "Y")]
    pub y: i8,
    #[serde(rename = "Z")]
    pub z: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct TeleportReport {
    pub seed: u64,
    pub input_label: StateLabel,
    pub m1: i8,
    pub m2: i8,
    pub merge_outcomes: Vec<i8>,
    pub ancilla_outcomes: Vec<i8>,
    pub correction: PauliOperator,
    pub final_expectations: Expectations,
    pub pass: bool,
    /// full measurement log, attached only on failure
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<MeasurementRecord>>,
}

/// Teleport a logical Pauli eigenstate from `input` (placed right) into
/// `memory` (placed left, prepared in `|+_L⟩`) through a Z-type merge, a
/// split and an `X_L` measurement on the input.
///
/// On each side `Z_L` is the boundary logical joined by the merge and
/// `X_L` a bare partner anticommuting with it; `Y_L = i X_L Z_L`. The
/// memory receives `X_L` when the merge parity is `-1` and `Z_L` when the
/// input's `X_L` outcome is `-1`.
#[derive(Clone, Debug)]
pub struct Teleporter {
    pub merge: MergeResult,
    /// memory logicals (merged register)
    pub memory: OperatorPair,
    /// input logicals (merged register)
    pub input: OperatorPair,
    pub rounds: usize,
    gens_memory_base: Vec<PauliOperator>,
    gens_input_base: Vec<PauliOperator>,
    local_memory: OperatorPair,
    local_input: OperatorPair,
}

/// Bare partner of the boundary logical `z` among the classes of `pair`.
fn partner(z: &PauliOperator, pair: &OperatorPair) -> Result<PauliOperator> {
    let xz = hermitian_part(&pair.x * &pair.z);
    [pair.x.clone(), pair.z.clone(), xz]
        .into_iter()
        .find(|c| c.anticommutes_with(z))
        .map(|c| c.with_phase(0))
        .ok_or_else(|| SlsError::InvalidEncoding("boundary logical has no partner".into()))
}

fn gauge_choices(pairs: &[OperatorPair], logicals: &OperatorPair) -> Result<Vec<PauliOperator>> {
    pairs
        .iter()
        .map(|p| {
            [&p.z, &p.x]
                .into_iter()
                .find(|g| !g.anticommutes_with(&logicals.x) && !g.anticommutes_with(&logicals.z))
                .cloned()
                .ok_or_else(|| {
                    SlsError::InvalidEncoding("no gauge operator commutes with the logicals".into())
                })
        })
        .collect()
}

impl Teleporter {
    pub fn new(
        input_code: &SubsystemCode,
        memory_code: &SubsystemCode,
        with_ancillas: bool,
    ) -> Result<Self> {
        let spec = MergeSpec::new(
            memory_code.clone(),
            input_code.clone(),
            LogicalKind::Z,
            with_ancillas,
        )?;
        let merge = build_merged_code(spec)?;
        if merge.analysis_a.params.k != 1 || merge.analysis_b.params.k != 1 {
            return Err(SlsError::Unsupported(
                "teleportation needs k = 1 on both codes".into(),
            ));
        }
        let z_mem = merge.spec.logical_a.operator.clone();
        let z_in = merge.spec.logical_b.operator.clone();
        let local_memory = OperatorPair {
            x: partner(&z_mem, &merge.analysis_a.logical_pairs[0])?,
            z: z_mem,
        };
        let local_input = OperatorPair {
            x: partner(&z_in, &merge.analysis_b.logical_pairs[0])?,
            z: z_in,
        };
        let mut gens_memory_base = merge.analysis_a.stabilizer_generators.clone();
        gens_memory_base.extend(gauge_choices(&merge.analysis_a.gauge_pairs, &local_memory)?);
        let mut gens_input_base = merge.analysis_b.stabilizer_generators.clone();
        gens_input_base.extend(gauge_choices(&merge.analysis_b.gauge_pairs, &local_input)?);
        let spec = &merge.spec;
        let memory = OperatorPair {
            x: spec.embed_a(&local_memory.x),
            z: spec.embed_a(&local_memory.z),
        };
        let input = OperatorPair {
            x: spec.embed_b(&local_input.x),
            z: spec.embed_b(&local_input.z),
        };
        let rounds = merge
            .analysis_a
            .params
            .d
            .unwrap_or(3)
            .min(merge.analysis_b.params.d.unwrap_or(3));
        Ok(Teleporter {
            merge,
            memory,
            input,
            rounds,
            gens_memory_base,
            gens_input_base,
            local_memory,
            local_input,
        })
    }

    pub fn run(&self, label: StateLabel, seed: u64) -> Result<TeleportReport> {
        let gens_mem = encoding_generators(
            &self.gens_memory_base,
            std::slice::from_ref(&self.local_memory),
            &[StateLabel::XPlus],
            &[],
            &[],
        )?;
        let gens_in = encoding_generators(
            &self.gens_input_base,
            std::slice::from_ref(&self.local_input),
            &[label],
            &[],
            &[],
        )?;
        let mut state = encode_merge_input(&self.merge, &gens_mem, &gens_in, seed)?;
        let merge = run_merge_schedule(&mut state, &self.merge, self.rounds)?;
        let split = run_split_schedule(&mut state, &self.merge)?;
        let m2 = state.measure(&self.input.x, "teleport-mx")?.outcome;
        if merge.m1 < 0 {
            state.apply_pauli(&self.memory.x)?;
        }
        if m2 < 0 {
            state.apply_pauli(&self.memory.z)?;
        }
        let value = |p: &PauliOperator| state.expectation(p).map(|v| v.unwrap_or(0));
        let final_expectations = Expectations {
            x: value(&self.memory.x)?,
            y: value(&logical_y(&self.memory.x, &self.memory.z))?,
            z: value(&self.memory.z)?,
        };
        let want = label.expectations();
        let pass = (
            final_expectations.x,
            final_expectations.y,
            final_expectations.z,
        ) == want;
        Ok(TeleportReport {
            seed,
            input_label: label,
            m1: merge.m1,
            m2,
            merge_outcomes: merge.merge_outcomes,
            ancilla_outcomes: split.ancilla_outcomes,
            correction: split.correction,
            final_expectations,
            pass,
            trace: (!pass).then(|| state.records().to_vec()),
        })
    }
}

/// One-shot teleportation with ancillas between the patches.
pub fn teleport(
    input_code: &SubsystemCode,
    memory_code: &SubsystemCode,
    label: StateLabel,
    seed: u64,
) -> Result<TeleportReport> {
    Teleporter::new(input_code, memory_code, true)?.run(label, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{color_code, subsystem_surface_code, surface_code};

    #[test]
    fn teleports_all_labels_surface_to_color() {
        let sc = surface_code(3).unwrap();
        let cc = color_code(3).unwrap();
        for anc in [true, false] {
            let t = Teleporter::new(&cc, &sc, anc).unwrap();
            for label in StateLabel::ALL {
                for seed in 0..8 {
                    let r = t.run(label, seed).unwrap();
                    assert!(
                        r.pass,
                        "{label} seed {seed} ancillas {anc}: {:?}",
                        r.final_expectations
                    );
                }
            }
        }
    }

    #[test]
    fn teleports_between_ssc_patches() {
        let ssc = subsystem_surface_code(3).unwrap();
        let t = Teleporter::new(&ssc, &ssc, true).unwrap();
        for label in StateLabel::ALL {
            for seed in 0..8 {
                assert!(t.run(label, seed).unwrap().pass, "{label} seed {seed}");
            }
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let sc = surface_code(3).unwrap();
        let a = teleport(&sc, &sc, StateLabel::YMinus, 42).unwrap();
        let b = teleport(&sc, &sc, StateLabel::YMinus, 42).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
