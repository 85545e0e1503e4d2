//! Merging two codes along a pair of boundary logicals and splitting them
//! again, at the level of gauge groups.

use serde::Serialize;

use crate::code::{analyze, hermitian_part, CodeAnalysis, SubsystemCode};
use crate::distance::{distance, DistanceResult};
use crate::error::{Result, SlsError};
use crate::gf2::{BinaryMatrix, BitVec, SpanBasis};
use crate::group::PauliGroup;
use crate::lattice::{
    boundary_logical, interaction_range, prepare_merged_lattice, BoundaryLogical, LogicalKind,
    MergedLattice, Side,
};
use crate::pauli::{product, Pauli, PauliOperator};

/// Two codes, the boundary logicals joined across the seam, and whether
/// ancillas sit between them.
#[derive(Clone, Debug)]
pub struct MergeSpec {
    pub code_a: SubsystemCode,
    pub code_b: SubsystemCode,
    pub logical_a: BoundaryLogical,
    pub logical_b: BoundaryLogical,
    pub with_ancillas: bool,
    /// Merged indices of the ancillas: after all A and B qubits.
    pub ancilla_ids: Vec<usize>,
}

impl MergeSpec {
    /// Use logical 0 of each code, on A's right and B's left boundary.
    pub fn new(
        code_a: SubsystemCode,
        code_b: SubsystemCode,
        kind: LogicalKind,
        with_ancillas: bool,
    ) -> Result<Self> {
        let la = boundary_logical(&code_a, Side::Right, 0, kind)?;
        let lb = boundary_logical(&code_b, Side::Left, 0, kind)?;
        Self::with_logicals(code_a, code_b, la, lb, with_ancillas)
    }

    pub fn with_logicals(
        code_a: SubsystemCode,
        code_b: SubsystemCode,
        logical_a: BoundaryLogical,
        logical_b: BoundaryLogical,
        with_ancillas: bool,
    ) -> Result<Self> {
        if logical_a.side != Side::Right || logical_b.side != Side::Left {
            return Err(SlsError::IncompatibleMerge(
                "A must be joined on its right boundary and B on its left".into(),
            ));
        }
        if logical_a.operator.n() != code_a.n() || logical_b.operator.n() != code_b.n() {
            return Err(SlsError::IncompatibleMerge(
                "boundary logical does not match its code".into(),
            ));
        }
        if logical_a.is_empty() || logical_b.is_empty() {
            return Err(SlsError::IncompatibleMerge("empty boundary logical".into()));
        }
        let big_n = logical_a.len().max(logical_b.len());
        let base = code_a.n() + code_b.n();
        let ancilla_ids = if with_ancillas {
            (base..base + big_n - 1).collect()
        } else {
            Vec::new()
        };
        Ok(MergeSpec {
            code_a,
            code_b,
            logical_a,
            logical_b,
            with_ancillas,
            ancilla_ids,
        })
    }

    pub fn n_a(&self) -> usize {
        self.code_a.n()
    }

    pub fn n_b(&self) -> usize {
        self.code_b.n()
    }

    /// A and B qubits, without ancillas.
    pub fn n_code(&self) -> usize {
        self.n_a() + self.n_b()
    }

    pub fn n_total(&self) -> usize {
        self.n_code() + self.ancilla_ids.len()
    }

    /// `N = max(N_A, N_B)`.
    pub fn big_n(&self) -> usize {
        self.logical_a.len().max(self.logical_b.len())
    }

    pub fn embedding_a(&self) -> Vec<usize> {
        (0..self.n_a()).collect()
    }

    pub fn embedding_b(&self) -> Vec<usize> {
        (self.n_a()..self.n_code()).collect()
    }

    pub fn embed_a(&self, p: &PauliOperator) -> PauliOperator {
        p.embed(self.n_total(), &self.embedding_a())
    }

    pub fn embed_b(&self, p: &PauliOperator) -> PauliOperator {
        p.embed(self.n_total(), &self.embedding_b())
    }

    /// Same codes and logicals without ancillas.
    pub fn without_ancillas(&self) -> MergeSpec {
        MergeSpec {
            with_ancillas: false,
            ancilla_ids: Vec::new(),
            ..self.clone()
        }
    }
}

/// The `N` merging operators
/// `P_{L,i}^A P_{L,i}^B Z_{C,i} Z_{C,i-1}`, with missing components (past
/// the end of the shorter boundary, or outside the ancilla column) taken as
/// identity.
pub fn merging_operators(spec: &MergeSpec) -> Vec<PauliOperator> {
    let n = spec.n_total();
    let big_n = spec.big_n();
    (0..big_n)
        .map(|i| {
            let mut op = PauliOperator::identity(n);
            if i < spec.logical_a.len() {
                let (q, l) = spec.logical_a.component(i);
                op.set_letter(q, l);
            }
            if i < spec.logical_b.len() {
                let (q, l) = spec.logical_b.component(i);
                op.set_letter(spec.n_a() + q, l);
            }
            if !spec.ancilla_ids.is_empty() {
                if i + 1 < big_n {
                    op.set_letter(spec.ancilla_ids[i], Pauli::Z);
                }
                if i > 0 {
                    op.set_letter(spec.ancilla_ids[i - 1], Pauli::Z);
                }
            }
            op
        })
        .collect()
}

/// Stabilizer witness for a merging generator: anticommutes with it and
/// commutes with every other merging generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// index into the merging operators
    pub generator_index: usize,
    pub generator: PauliOperator,
    pub stabilizer: PauliOperator,
}

#[derive(Clone, Debug)]
pub struct MergeResult {
    pub spec: MergeSpec,
    pub merged: SubsystemCode,
    pub analysis: CodeAnalysis,
    pub analysis_a: CodeAnalysis,
    pub analysis_b: CodeAnalysis,
    pub layout: MergedLattice,
    pub merging_operators: Vec<PauliOperator>,
    /// Indices into `merging_operators` of the generators `W`.
    pub merging_generators: Vec<usize>,
    pub delta_g: usize,
    /// `P_L^A ⊗ P_L^B` in the merged register.
    pub joint_logical: PauliOperator,
    pub stabilizer_witnesses: Vec<Witness>,
    pub embedding_a: Vec<usize>,
    pub embedding_b: Vec<usize>,
}

/// Scan order `1, N, 2, N-1, ...` (0-based here).
fn outside_in(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        out.push(lo);
        lo += 1;
        if lo < hi {
            hi -= 1;
            out.push(hi);
        }
    }
    out
}

fn code_mask(spec: &MergeSpec) -> BitVec {
    BitVec::from_indices(spec.n_total(), 0..spec.n_code())
}

pub fn build_merged_code(spec: MergeSpec) -> Result<MergeResult> {
    let geom_a = spec.code_a.geometry().ok_or(SlsError::MissingGeometry)?;
    let geom_b = spec.code_b.geometry().ok_or(SlsError::MissingGeometry)?;
    let layout = prepare_merged_lattice(
        geom_a,
        &spec.logical_a,
        geom_b,
        &spec.logical_b,
        spec.ancilla_ids.len(),
    )?;
    let analysis_a = analyze(&spec.code_a)?;
    let analysis_b = analyze(&spec.code_b)?;
    let n = spec.n_total();

    let ops = merging_operators(&spec);
    let mut gens: Vec<PauliOperator> = Vec::new();
    gens.extend(
        spec.code_a
            .gauge_generators()
            .iter()
            .map(|g| spec.embed_a(g)),
    );
    gens.extend(
        spec.code_b
            .gauge_generators()
            .iter()
            .map(|g| spec.embed_b(g)),
    );
    gens.extend(ops.iter().cloned());
    gens.extend(
        spec.ancilla_ids
            .iter()
            .map(|&q| PauliOperator::single(n, q, Pauli::X)),
    );
    let name = format!("{}+{}", spec.code_a.name(), spec.code_b.name());
    let merged = SubsystemCode::new(name, n, gens)?.with_geometry(layout.lattice.clone())?;
    let analysis = analyze(&merged)?;

    let mask = code_mask(&spec);
    let joint_logical = product(n, ops.iter()).mask(&mask);
    let center_span = SpanBasis::from_vectors(
        2 * n,
        analysis
            .stabilizer_generators
            .iter()
            .map(|s| s.symplectic())
            .collect::<Vec<_>>()
            .iter(),
    );
    if !center_span.contains(&joint_logical.symplectic()) {
        return Err(SlsError::Consistency(
            "joint logical is not a stabilizer of the merged code".into(),
        ));
    }

    // new gauge qubits: merging operators on code qubits, independent
    // modulo G^A, G^B and the joint logical
    let mut base = SpanBasis::new(2 * n, merged.gauge_generators().len() + 1);
    for g in spec.code_a.gauge_generators() {
        base.insert(&spec.embed_a(g).symplectic());
    }
    for g in spec.code_b.gauge_generators() {
        base.insert(&spec.embed_b(g).symplectic());
    }
    base.insert(&joint_logical.symplectic());
    let mut merging_generators = Vec::new();
    for i in outside_in(ops.len()) {
        if base.insert(&ops[i].mask(&mask).symplectic()) {
            merging_generators.push(i);
        }
    }
    merging_generators.sort_unstable();
    let delta_g = merging_generators.len();

    let mut result = MergeResult {
        embedding_a: spec.embedding_a(),
        embedding_b: spec.embedding_b(),
        spec,
        merged,
        analysis,
        analysis_a,
        analysis_b,
        layout,
        merging_operators: ops,
        merging_generators,
        delta_g,
        joint_logical,
        stabilizer_witnesses: Vec::new(),
    };
    result.stabilizer_witnesses = find_stabilizer_witnesses(&result)?;
    Ok(result)
}

impl MergeResult {
    /// Pre-merge stabilizer generators of A and B in the merged register.
    pub fn product_stabilizers(&self) -> Vec<PauliOperator> {
        let a = self
            .analysis_a
            .stabilizer_generators
            .iter()
            .map(|s| self.spec.embed_a(s));
        let b = self
            .analysis_b
            .stabilizer_generators
            .iter()
            .map(|s| self.spec.embed_b(s));
        a.chain(b).collect()
    }

    pub fn merging_generator_ops(&self) -> Vec<&PauliOperator> {
        self.merging_generators
            .iter()
            .map(|&i| &self.merging_operators[i])
            .collect()
    }

    pub fn ancillas(&self) -> &[usize] {
        &self.spec.ancilla_ids
    }
}

/// One stabilizer of `S^A × S^B` per merging generator, anticommuting with
/// it and commuting with the other merging generators. The lightest
/// solution of the affine system is chosen.
pub fn find_stabilizer_witnesses(result: &MergeResult) -> Result<Vec<Witness>> {
    let stabs = result.product_stabilizers();
    let w = &result.merging_generators;
    let n = result.spec.n_total();
    let rows: Vec<BitVec> = w
        .iter()
        .map(|&j| {
            let g = &result.merging_operators[j];
            BitVec::from_bools(
                &stabs
                    .iter()
                    .map(|s| s.anticommutes_with(g))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let m = BinaryMatrix::from_rows(stabs.len(), rows);
    let mut out = Vec::with_capacity(w.len());
    for (pos, &i) in w.iter().enumerate() {
        let rhs = BitVec::unit(w.len(), pos);
        let sol = m
            .solve_affine(&rhs)
            .ok_or(SlsError::MissingWitness { index: i })?;
        let build = |c: &BitVec| hermitian_part(product(n, c.iter_ones().map(|t| &stabs[t])));
        let best = if sol.kernel.len() <= 16 {
            sol.enumerate()
                .map(|c| build(&c))
                .min_by_key(crate::code::canonical_key)
                .expect("affine space is nonempty")
        } else {
            let kern: Vec<PauliOperator> = sol.kernel.iter().map(&build).collect();
            crate::code::reduce_weight(build(&sol.particular), &kern)
        };
        out.push(Witness {
            generator_index: i,
            generator: result.merging_operators[i].clone(),
            stabilizer: best,
        });
    }
    Ok(out)
}

/// Parameter ledger of a merge, with the ancilla contribution itemized.
#[derive(Clone, Debug, Serialize)]
pub struct MergeReport {
    pub n: usize,
    pub k: usize,
    pub g: usize,
    pub d: DistanceResult,
    pub n_a: usize,
    pub n_b: usize,
    pub ancillas: usize,
    pub k_a: usize,
    pub k_b: usize,
    pub g_a: usize,
    pub g_b: usize,
    pub delta_g: usize,
    /// gauge qubits present only because of the ancillas
    pub g_ancilla: usize,
    pub d_a: DistanceResult,
    pub d_b: DistanceResult,
    pub r_a: usize,
    pub r_b: usize,
    pub r_after: usize,
}

fn check_eq(quantity: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(SlsError::LedgerMismatch {
            quantity: quantity.into(),
            expected: expected as i64,
            found: found as i64,
        })
    }
}

/// Largest increase of the interaction range accepted by the locality
/// check, in lattice units.
pub const MAX_RANGE_INCREASE: usize = 2;

/// Check `[[n_A+n_B(+anc), k_A+k_B-1, g_A+g_B+Δg(+anc), d ≥ d_min]]` and the
/// locality of the merged generators.
pub fn verify_merged_parameters(result: &MergeResult, max_weight: usize) -> Result<MergeReport> {
    let spec = &result.spec;
    let pa = result.analysis_a.params;
    let pb = result.analysis_b.params;
    let pm = result.analysis.params;
    let anc = spec.ancilla_ids.len();
    check_eq("n", pa.n + pb.n + anc, pm.n)?;
    check_eq("k", (pa.k + pb.k).saturating_sub(1), pm.k)?;

    let g_plain = if spec.with_ancillas {
        build_merged_code(spec.without_ancillas())?
            .analysis
            .params
            .g
    } else {
        pm.g
    };
    check_eq("g", pa.g + pb.g + result.delta_g, g_plain)?;
    let g_ancilla = pm.g.checked_sub(g_plain).ok_or(SlsError::LedgerMismatch {
        quantity: "g (ancilla contribution)".into(),
        expected: g_plain as i64,
        found: pm.g as i64,
    })?;

    let d_a = distance(&spec.code_a, max_weight)?;
    let d_b = distance(&spec.code_b, max_weight)?;
    let d = distance(&result.merged, max_weight)?;
    let d_min = match (d_a.exact(), d_b.exact()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    };
    if let Some(dm) = d_min {
        if !d.at_least(dm) {
            return Err(SlsError::LedgerMismatch {
                quantity: "d (below min(d_A, d_B))".into(),
                expected: dm as i64,
                found: d.exact().unwrap_or(0) as i64,
            });
        }
    }

    let r_a = interaction_range(&spec.code_a)?;
    let r_b = interaction_range(&spec.code_b)?;
    let r_after = interaction_range(&result.merged)?;
    let r_before = r_a.max(r_b);
    if r_after > r_before + MAX_RANGE_INCREASE {
        return Err(SlsError::LedgerMismatch {
            quantity: "interaction range".into(),
            expected: (r_before + MAX_RANGE_INCREASE) as i64,
            found: r_after as i64,
        });
    }
    Ok(MergeReport {
        n: pm.n,
        k: pm.k,
        g: pm.g,
        d,
        n_a: pa.n,
        n_b: pb.n,
        ancillas: anc,
        k_a: pa.k,
        k_b: pb.k,
        g_a: pa.g,
        g_b: pb.g,
        delta_g: result.delta_g,
        g_ancilla,
        d_a,
        d_b,
        r_a,
        r_b,
        r_after,
    })
}

/// Promote the commuting gauge operators `fix_set` to stabilizers: the new
/// gauge group is generated by the elements of the old one that commute
/// with `fix_set`, together with `fix_set` itself.
pub fn gauge_fix(code: &SubsystemCode, fix_set: &[PauliOperator]) -> Result<SubsystemCode> {
    if fix_set.is_empty() {
        return Ok(code.clone());
    }
    let group = code.gauge_group();
    let stabs = code.center()?;
    for (i, f) in fix_set.iter().enumerate() {
        if f.n() != code.n() {
            return Err(SlsError::Dimension {
                expected: code.n(),
                found: f.n(),
            });
        }
        if !f.is_hermitian() {
            return Err(SlsError::NonHermitian(f.to_string()));
        }
        if !group.contains(f, true)? {
            return Err(SlsError::InvalidGaugeFix(format!(
                "{f} is not in the gauge group"
            )));
        }
        if let Some(s) = stabs.iter().find(|s| s.anticommutes_with(f)) {
            return Err(SlsError::InvalidGaugeFix(format!(
                "{f} anticommutes with stabilizer {s}"
            )));
        }
        if let Some(h) = fix_set[i + 1..].iter().find(|h| h.anticommutes_with(f)) {
            return Err(SlsError::InvalidGaugeFix(format!(
                "{f} and {h} anticommute"
            )));
        }
    }
    let gens = code.gauge_generators();
    let rows: Vec<BitVec> = fix_set
        .iter()
        .map(|f| {
            BitVec::from_bools(
                &gens
                    .iter()
                    .map(|g| g.anticommutes_with(f))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let kernel = BinaryMatrix::from_rows(gens.len(), rows).kernel();
    let mut new_gens: Vec<PauliOperator> = Vec::new();
    let mut span = SpanBasis::new(2 * code.n(), kernel.len() + fix_set.len());
    for f in fix_set {
        if span.insert(&f.symplectic()) {
            new_gens.push(f.clone());
        }
    }
    for v in &kernel {
        let p = hermitian_part(product(code.n(), v.iter_ones().map(|i| &gens[i])));
        if span.insert(&p.symplectic()) {
            new_gens.push(p);
        }
    }
    let mut out = SubsystemCode::new(format!("{}-fixed", code.name()), code.n(), new_gens)?;
    if let Some(l) = code.geometry() {
        out = out.with_geometry(l.clone())?;
    }
    Ok(out)
}

/// What a split leaves behind besides the two codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointRecord {
    /// `P_L^A ⊗ P_L^B` on the `n_A + n_B` code qubits.
    pub joint: PauliOperator,
    /// Ancillas to be measured in the X basis.
    pub measured_ancillas: Vec<usize>,
}

/// Undo the merge: the original codes, and the joint logical whose
/// eigenvalue the merge fixed.
pub fn split(result: &MergeResult) -> (SubsystemCode, SubsystemCode, JointRecord) {
    let spec = &result.spec;
    let keep: Vec<usize> = (0..spec.n_code()).collect();
    (
        spec.code_a.clone(),
        spec.code_b.clone(),
        JointRecord {
            joint: result.joint_logical.restrict(&keep),
            measured_ancillas: spec.ancilla_ids.clone(),
        },
    )
}

/// Merged qubit index to row-major index on the merged lattice with the
/// seam column and any empty rows removed.
pub fn compressed_relabeling(result: &MergeResult) -> Vec<usize> {
    let lat = result
        .merged
        .geometry()
        .expect("merged codes carry geometry");
    let mut rows: Vec<usize> = lat.coords().iter().map(|c| c.0).collect();
    let mut cols: Vec<usize> = lat.coords().iter().map(|c| c.1).collect();
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    lat.coords()
        .iter()
        .map(|&(r, c)| {
            let ri = rows.binary_search(&r).unwrap();
            let ci = cols.binary_search(&c).unwrap();
            ri * cols.len() + ci
        })
        .collect()
}

/// `true` when the two generator lists span the same group up to phases.
pub fn same_group_up_to_phase(a: &[PauliOperator], b: &[PauliOperator], n: usize) -> Result<bool> {
    let ga = PauliGroup::new(n, a.to_vec())?;
    let gb = PauliGroup::new(n, b.to_vec())?;
    for p in a {
        if !gb.contains(p, true)? {
            return Ok(false);
        }
    }
    for p in b {
        if !ga.contains(p, true)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outside_in_order() {
        assert_eq!(outside_in(5), vec![0, 4, 1, 3, 2]);
        assert_eq!(outside_in(4), vec![0, 3, 1, 2]);
        assert_eq!(outside_in(1), vec![0]);
        assert!(outside_in(0).is_empty());
    }

    #[test]
    fn empty_fix_set_is_identity() {
        let c =
            SubsystemCode::new("t", 2, vec!["XX".parse().unwrap(), "ZI".parse().unwrap()]).unwrap();
        assert_eq!(gauge_fix(&c, &[]).unwrap(), c);
    }

    #[test]
    fn fixing_rejects_non_members_and_anticommuting_sets() {
        let c =
            SubsystemCode::new("t", 1, vec!["X".parse().unwrap(), "Z".parse().unwrap()]).unwrap();
        let x: PauliOperator = "X".parse().unwrap();
        let z: PauliOperator = "Z".parse().unwrap();
        assert!(matches!(
            gauge_fix(&c, &[x.clone(), z]),
            Err(SlsError::InvalidGaugeFix(_))
        ));
        let d = SubsystemCode::new("t", 2, vec!["ZI".parse().unwrap()]).unwrap();
        assert!(matches!(
            gauge_fix(&d, &["XI".parse().unwrap()]),
            Err(SlsError::InvalidGaugeFix(_))
        ));
        let fixed = gauge_fix(&c, &[x]).unwrap();
        assert_eq!(fixed.center().unwrap().len(), 1);
    }
}
