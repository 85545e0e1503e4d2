//! Subsystem codes: gauge generators in, stabilizer / logical / gauge
//! structure out.

use serde::Serialize;

use crate::error::{Result, SlsError};
use crate::gf2::{BinaryMatrix, BitVec, SpanBasis};
use crate::group::PauliGroup;
use crate::lattice::Lattice2D;
use crate::pauli::{product, Pauli, PauliOperator};

/// A subsystem stabilizer code given by its gauge generators.
///
/// The gauge group is `⟨gauge_generators⟩ × ⟨i⟩`; its center modulo phases
/// is the stabilizer. A stabilizer code is the special case of an Abelian
/// generator list.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsystemCode {
    n: usize,
    gauge_generators: Vec<PauliOperator>,
    name: String,
    geometry: Option<Lattice2D>,
}

/// A conjugate pair `(x_like, z_like)` of anticommuting operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorPair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

/// Code parameters; `d` is `None` until the distance search has run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub g: usize,
    pub d: Option<usize>,
}

/// Full structural analysis of a [`SubsystemCode`].
#[derive(Clone, Debug)]
pub struct CodeAnalysis {
    pub stabilizer_generators: Vec<PauliOperator>,
    pub logical_pairs: Vec<OperatorPair>,
    pub gauge_pairs: Vec<OperatorPair>,
    pub params: CodeParams,
}

impl SubsystemCode {
    /// Validates lengths and Hermiticity of every generator.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        gauge_generators: Vec<PauliOperator>,
    ) -> Result<Self> {
        for g in &gauge_generators {
            if g.n() != n {
                return Err(SlsError::Dimension {
                    expected: n,
                    found: g.n(),
                });
            }
            if !g.is_hermitian() {
                return Err(SlsError::NonHermitian(g.to_string()));
            }
        }
        Ok(SubsystemCode {
            n,
            gauge_generators,
            name: name.into(),
            geometry: None,
        })
    }

    pub fn with_geometry(mut self, lattice: Lattice2D) -> Result<Self> {
        if lattice.n_qubits() != self.n {
            return Err(SlsError::Dimension {
                expected: self.n,
                found: lattice.n_qubits(),
            });
        }
        self.geometry = Some(lattice);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn gauge_generators(&self) -> &[PauliOperator] {
        &self.gauge_generators
    }

    pub fn geometry(&self) -> Option<&Lattice2D> {
        self.geometry.as_ref()
    }

    pub fn gauge_group(&self) -> PauliGroup {
        PauliGroup::new(self.n, self.gauge_generators.clone())
            .expect("generators were validated at construction")
    }

    /// Independent generating set of the center of the gauge group modulo
    /// phases, i.e. the stabilizer group.
    pub fn center(&self) -> Result<Vec<PauliOperator>> {
        center(self)
    }

    pub fn analyze(&self) -> Result<CodeAnalysis> {
        analyze(self)
    }
}

/// Multiply by a power of `i` so the operator is Hermitian. Products of
/// anticommuting Hermitian generators can pick up an odd phase; classes are
/// taken modulo `⟨i⟩`, so this only picks a representative.
pub(crate) fn hermitian_part(mut p: PauliOperator) -> PauliOperator {
    if !p.is_hermitian() {
        let e = p.phase_exp() + 1;
        p = p.with_phase(e);
    }
    p
}

fn gram_matrix(ops: &[PauliOperator]) -> BinaryMatrix {
    let m = ops.len();
    let mut rows = vec![BitVec::zeros(m); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if ops[i].anticommutes_with(&ops[j]) {
                rows[i].set(j, true);
                rows[j].set(i, true);
            }
        }
    }
    BinaryMatrix::from_rows(m, rows)
}

/// Reject generator lists whose commuting dependencies multiply to a
/// nontrivial phase, e.g. `{ZZ, -ZZ}`; such a list puts `-I` into any
/// stabilizer built from it.
fn check_sign_consistency(code: &SubsystemCode) -> Result<()> {
    let gens = &code.gauge_generators;
    let mut basis = SpanBasis::new(2 * code.n, gens.len());
    for (j, g) in gens.iter().enumerate() {
        let v = g.symplectic();
        if let Some(mut combo) = basis.express(&v) {
            combo.flip(j);
            let ids: Vec<usize> = combo.iter_ones().collect();
            let commuting = ids.iter().enumerate().all(|(a, &i)| {
                ids[a + 1..]
                    .iter()
                    .all(|&l| !gens[i].anticommutes_with(&gens[l]))
            });
            if commuting && product(code.n, ids.iter().map(|&i| &gens[i])).phase_exp() != 0 {
                return Err(SlsError::MinusIdentityInCenter);
            }
        }
        basis.insert(&v);
    }
    Ok(())
}

/// Center of `⟨gauge generators⟩` modulo phases.
///
/// Kernel vectors of the generator Gram matrix (symplectic products) give
/// products that commute with every generator; those are reduced to an
/// independent set, dropping products that are pure phases.
pub fn center(code: &SubsystemCode) -> Result<Vec<PauliOperator>> {
    check_sign_consistency(code)?;
    let gens = &code.gauge_generators;
    let kernel = gram_matrix(gens).kernel();
    let mut candidates: Vec<PauliOperator> = kernel
        .iter()
        .map(|v| hermitian_part(product(code.n, v.iter_ones().map(|i| &gens[i]))))
        .collect();
    // lighter and earlier-supported generators first; stable for ties
    candidates.sort_by_key(|p| (p.weight(), p.support().first().copied()));
    let mut basis = SpanBasis::new(2 * code.n, candidates.len());
    let mut out = Vec::new();
    for c in candidates {
        if basis.insert(&c.symplectic()) {
            out.push(c);
        }
    }
    let stab = PauliGroup::new(code.n, out.clone())?;
    if stab.contains_minus_identity() {
        return Err(SlsError::MinusIdentityInCenter);
    }
    Ok(out)
}

/// Symplectic Gram–Schmidt. Pops candidates in order and pairs each with
/// the first later candidate it anticommutes with; candidates left without
/// a partner lie in the radical and are dropped.
fn symplectic_pairs(mut list: Vec<PauliOperator>) -> Vec<OperatorPair> {
    let mut pairs = Vec::new();
    list.reverse();
    while let Some(u) = list.pop() {
        let Some(pos) = list.iter().rposition(|w| w.anticommutes_with(&u)) else {
            continue;
        };
        let v = list.remove(pos);
        for w in list.iter_mut() {
            let with_v = w.anticommutes_with(&v);
            let with_u = w.anticommutes_with(&u);
            if with_v {
                *w = hermitian_part(&*w * &u);
            }
            if with_u {
                *w = hermitian_part(&*w * &v);
            }
        }
        pairs.push(orient(u, v));
    }
    pairs
}

/// Put an X-type member first when the pair is `(Z-type, X-type)`.
fn orient(u: PauliOperator, v: PauliOperator) -> OperatorPair {
    if u.is_pure(Pauli::Z) && v.is_pure(Pauli::X) {
        OperatorPair { x: v, z: u }
    } else {
        OperatorPair { x: u, z: v }
    }
}

/// Basis of the symplectic complement of `ops`: every Pauli commuting with
/// all of them, as phase-free operators. A CSS-split basis (pure X first,
/// then pure Z) is used when it spans the whole complement.
fn commutant_basis(n: usize, ops: &[PauliOperator]) -> Vec<PauliOperator> {
    // row (z | x) dotted with (x' | z') is the symplectic product
    let rows: Vec<BitVec> = ops.iter().map(|g| g.z_bits().concat(g.x_bits())).collect();
    let full = BinaryMatrix::from_rows(2 * n, rows.clone()).kernel();

    let x_rows: Vec<BitVec> = ops.iter().map(|g| g.z_bits().clone()).collect();
    let z_rows: Vec<BitVec> = ops.iter().map(|g| g.x_bits().clone()).collect();
    let x_only = BinaryMatrix::from_rows(n, x_rows).kernel();
    let z_only = BinaryMatrix::from_rows(n, z_rows).kernel();
    let to_op = |v: &BitVec| PauliOperator::from_symplectic(n, v, 0);
    if x_only.len() + z_only.len() == full.len() {
        let zeros = BitVec::zeros(n);
        x_only
            .iter()
            .map(|x| PauliOperator::from_parts(x.clone(), zeros.clone(), 0))
            .chain(
                z_only
                    .iter()
                    .map(|z| PauliOperator::from_parts(zeros.clone(), z.clone(), 0)),
            )
            .collect()
    } else {
        full.iter().map(to_op).collect()
    }
}

/// Greedy weight reduction of `p` by multiplication with `ops`. A pure-type
/// operator stays pure.
pub(crate) fn reduce_weight(p: PauliOperator, ops: &[PauliOperator]) -> PauliOperator {
    let pure = [Pauli::X, Pauli::Z].into_iter().find(|l| p.is_pure(*l));
    let mut best = p;
    loop {
        let mut improved = false;
        for s in ops {
            let cand = hermitian_part(&best * s);
            if cand.weight() < best.weight() && pure.is_none_or(|l| cand.is_pure(l)) {
                best = cand;
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// Bare logical representatives of `N(G)/⟨i⟩S`, one anticommuting pair per
/// logical qubit. Every element commutes with all gauge generators.
pub fn bare_logicals(code: &SubsystemCode) -> Result<Vec<OperatorPair>> {
    let stabs = center(code)?;
    Ok(bare_logicals_with(code, &stabs))
}

fn bare_logicals_with(code: &SubsystemCode, stabs: &[PauliOperator]) -> Vec<OperatorPair> {
    let mut cands = commutant_basis(code.n, &code.gauge_generators);
    cands.sort_by_key(|p| p.support().first().copied());
    symplectic_pairs(cands)
        .into_iter()
        .map(|pair| OperatorPair {
            x: reduce_weight(pair.x, stabs),
            z: reduce_weight(pair.z, stabs),
        })
        .collect()
}

pub fn analyze(code: &SubsystemCode) -> Result<CodeAnalysis> {
    let stabilizer_generators = center(code)?;
    let s = stabilizer_generators.len();
    let r = code.gauge_group().rank();
    if !(r - s).is_multiple_of(2) {
        return Err(SlsError::Consistency(format!(
            "gauge rank {r} and center rank {s} differ by an odd amount"
        )));
    }
    let g = (r - s) / 2;
    if s + g > code.n {
        return Err(SlsError::InvalidCode(format!(
            "s + g = {} exceeds n = {}",
            s + g,
            code.n
        )));
    }
    let k = code.n - s - g;

    let gauge_pairs = symplectic_pairs(code.gauge_generators.clone());
    let logical_pairs = bare_logicals_with(code, &stabilizer_generators);
    if gauge_pairs.len() != g || logical_pairs.len() != k {
        return Err(SlsError::Consistency(format!(
            "pairing produced {} gauge and {} logical pairs, expected {g} and {k}",
            gauge_pairs.len(),
            logical_pairs.len()
        )));
    }
    Ok(CodeAnalysis {
        stabilizer_generators,
        logical_pairs,
        gauge_pairs,
        params: CodeParams {
            n: code.n,
            k,
            g,
            d: None,
        },
    })
}

impl CodeAnalysis {
    pub fn s(&self) -> usize {
        self.stabilizer_generators.len()
    }

    pub fn stabilizer_group(&self) -> PauliGroup {
        PauliGroup::new(self.params.n, self.stabilizer_generators.clone())
            .expect("analysis operators share the code's qubit count")
    }

    /// Check the commutation structure of stabilizers, logical pairs and
    /// gauge pairs exhaustively. Returns a description of the first
    /// violation.
    pub fn verify_structure(&self, code: &SubsystemCode) -> std::result::Result<(), String> {
        let gauge = code.gauge_generators();
        for (i, s) in self.stabilizer_generators.iter().enumerate() {
            for t in &self.stabilizer_generators[i + 1..] {
                if s.anticommutes_with(t) {
                    return Err(format!("stabilizers {s} and {t} anticommute"));
                }
            }
            if let Some(g) = gauge.iter().find(|g| g.anticommutes_with(s)) {
                return Err(format!(
                    "stabilizer {s} anticommutes with gauge generator {g}"
                ));
            }
        }
        check_pairs("logical", &self.logical_pairs)?;
        check_pairs("gauge", &self.gauge_pairs)?;
        for l in self.logical_pairs.iter().flat_map(|p| [&p.x, &p.z]) {
            if let Some(g) = gauge.iter().find(|g| g.anticommutes_with(l)) {
                return Err(format!("logical {l} anticommutes with gauge generator {g}"));
            }
            if let Some(h) = self
                .gauge_pairs
                .iter()
                .flat_map(|p| [&p.x, &p.z])
                .find(|h| h.anticommutes_with(l))
            {
                return Err(format!("logical {l} anticommutes with gauge operator {h}"));
            }
        }
        for h in self.gauge_pairs.iter().flat_map(|p| [&p.x, &p.z]) {
            if let Some(s) = self
                .stabilizer_generators
                .iter()
                .find(|s| s.anticommutes_with(h))
            {
                return Err(format!(
                    "gauge operator {h} anticommutes with stabilizer {s}"
                ));
            }
        }
        Ok(())
    }
}

fn check_pairs(kind: &str, pairs: &[OperatorPair]) -> std::result::Result<(), String> {
    for (i, p) in pairs.iter().enumerate() {
        if !p.x.anticommutes_with(&p.z) {
            return Err(format!("{kind} pair {i} commutes internally"));
        }
        for q in &pairs[i + 1..] {
            for a in [&p.x, &p.z] {
                for b in [&q.x, &q.z] {
                    if a.anticommutes_with(b) {
                        return Err(format!(
                            "{kind} operators {a} and {b} anticommute across pairs"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Ordering used to choose among equivalent representatives: lighter
/// first, then fewer distinct letters, then lexicographic.
pub(crate) fn canonical_key(p: &PauliOperator) -> (usize, usize, String) {
    let kinds = [Pauli::X, Pauli::Y, Pauli::Z]
        .into_iter()
        .filter(|&l| (0..p.n()).any(|q| p.letter(q) == l))
        .count();
    (p.weight(), kinds, p.to_string())
}

/// Find an element of `p · ⟨ops⟩` supported inside `allowed`.
///
/// Returns `p` itself if it already fits. Otherwise the lightest solution
/// is returned when the solution space is small enough to enumerate, and a
/// greedily reduced one otherwise.
pub fn reduce_modulo(
    p: &PauliOperator,
    ops: &[PauliOperator],
    allowed: &BitVec,
) -> Option<PauliOperator> {
    let n = p.n();
    assert_eq!(allowed.len(), n);
    if p.support_bits().and_count(allowed) == p.weight() {
        return Some(p.clone());
    }
    let outside: Vec<usize> = (0..n).filter(|&q| !allowed.get(q)).collect();
    // one constraint per (outside qubit, x/z) pair; unknowns are the ops
    let m = ops.len();
    let mut rows = Vec::with_capacity(2 * outside.len());
    let mut rhs = Vec::with_capacity(2 * outside.len());
    for &q in &outside {
        for part in 0..2 {
            let bit = |o: &PauliOperator| {
                if part == 0 {
                    o.x_bits().get(q)
                } else {
                    o.z_bits().get(q)
                }
            };
            rows.push(BitVec::from_bools(&ops.iter().map(bit).collect::<Vec<_>>()));
            rhs.push(bit(p));
        }
    }
    let sol = BinaryMatrix::from_rows(m, rows).solve_affine(&BitVec::from_bools(&rhs))?;
    let apply = |c: &BitVec| hermitian_part(&*p * &product(n, c.iter_ones().map(|i| &ops[i])));
    if sol.kernel.len() <= 14 {
        sol.enumerate().map(|c| apply(&c)).min_by_key(canonical_key)
    } else {
        let inside: Vec<PauliOperator> = sol
            .kernel
            .iter()
            .map(|k| product(n, k.iter_ones().map(|i| &ops[i])))
            .collect();
        Some(reduce_weight(apply(&sol.particular), &inside))
    }
}

/// Representative of `p`'s class (modulo the stabilizer, or modulo the full
/// gauge group when `use_gauge`) supported inside `allowed`.
pub fn reduce_to_support(
    p: &PauliOperator,
    code: &SubsystemCode,
    allowed: &BitVec,
    use_gauge: bool,
) -> Result<Option<PauliOperator>> {
    if p.n() != code.n {
        return Err(SlsError::Dimension {
            expected: code.n,
            found: p.n(),
        });
    }
    let ops = if use_gauge {
        code.gauge_generators.clone()
    } else {
        center(code)?
    };
    Ok(reduce_modulo(p, &ops, allowed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn code(n: usize, gens: &[&str]) -> SubsystemCode {
        SubsystemCode::new("t", n, gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn abelian_input_center_is_its_span() {
        let c = code(5, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]);
        assert_eq!(c.center().unwrap().len(), 4);
        let a = c.analyze().unwrap();
        assert_eq!((a.params.n, a.params.k, a.params.g), (5, 1, 0));
        a.verify_structure(&c).unwrap();
    }

    #[test]
    fn single_qubit_pair_has_empty_center() {
        let c = code(1, &["X", "Z"]);
        assert!(c.center().unwrap().is_empty());
        let a = c.analyze().unwrap();
        assert_eq!((a.params.k, a.params.g), (0, 1));
    }

    #[test]
    fn trivial_one_qubit_code() {
        let a = code(1, &["Z"]).analyze().unwrap();
        assert_eq!((a.params.n, a.params.k, a.params.g), (1, 0, 0));
        assert!(a.logical_pairs.is_empty());
    }

    #[test]
    fn sign_inconsistent_generators_are_rejected() {
        let c = code(2, &["ZZ", "-ZZ"]);
        assert_eq!(c.center(), Err(SlsError::MinusIdentityInCenter));
        let c = code(3, &["ZZI", "IZZ", "-ZIZ"]);
        assert_eq!(c.analyze().err(), Some(SlsError::MinusIdentityInCenter));
    }

    #[test]
    fn non_hermitian_generator_rejected() {
        let err = SubsystemCode::new("t", 1, vec![p("+iX")]).unwrap_err();
        assert!(matches!(err, SlsError::NonHermitian(_)));
    }

    #[test]
    fn repetition_code_logicals_are_typed() {
        let c = code(3, &["ZZI", "IZZ"]);
        let a = c.analyze().unwrap();
        assert_eq!(a.logical_pairs.len(), 1);
        let pair = &a.logical_pairs[0];
        assert!(pair.x.is_pure(Pauli::X));
        assert!(pair.z.is_pure(Pauli::Z));
        assert_eq!(pair.z.weight(), 1);
    }

    #[test]
    fn reduce_is_idempotent_inside_allowed() {
        let c = code(3, &["ZZI", "IZZ"]);
        let allowed = BitVec::from_indices(3, [0, 1]);
        let z = p("ZII");
        assert_eq!(reduce_to_support(&z, &c, &allowed, false).unwrap(), Some(z));
    }

    #[test]
    fn reduce_moves_support() {
        let c = code(3, &["ZZI", "IZZ"]);
        let allowed = BitVec::from_indices(3, [2]);
        let got = reduce_to_support(&p("ZII"), &c, &allowed, false).unwrap();
        assert_eq!(got, Some(p("IIZ")));
        let none = reduce_to_support(&p("XXX"), &c, &BitVec::zeros(3), false).unwrap();
        assert_eq!(none, None);
    }
}
