//! Finitely generated Pauli groups with exact phase bookkeeping.

use crate::error::{Result, SlsError};
use crate::gf2::{BitVec, SpanBasis};
use crate::pauli::{product, PauliOperator};

/// The subgroup `⟨g_1, ..., g_m⟩` of the Pauli group.
///
/// Membership modulo phases is a span test on symplectic vectors. For the
/// phase-aware test we also need the set of pure phases `i^k I` contained in
/// the group; those come from products along kernel vectors of the
/// generator matrix and from commutators (`-I` whenever two generators
/// anticommute). They form a subgroup of `Z_4`, stored by its step.
#[derive(Clone, Debug)]
pub struct PauliGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    basis: SpanBasis,
    /// pure phases in the group are exactly `i^(step·t)`; step ∈ {1, 2, 4}
    phase_step: u8,
    abelian: bool,
}

impl PauliGroup {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(SlsError::Dimension {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        let mut basis = SpanBasis::new(2 * n, generators.len());
        let mut phases: Vec<u8> = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            let v = g.symplectic();
            if let Some(mut combo) = basis.express(&v) {
                // g_j times the earlier generators in `combo` is a pure phase
                combo.flip(j);
                let ids: Vec<usize> = combo.iter_ones().collect();
                phases.push(product(n, ids.iter().map(|&i| &generators[i])).phase_exp());
            }
            basis.insert(&v);
        }
        let mut abelian = true;
        'outer: for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.anticommutes_with(b) {
                    abelian = false;
                    break 'outer;
                }
            }
        }
        if !abelian {
            phases.push(2);
        }
        let phase_step = if phases.iter().any(|e| e % 2 == 1) {
            1
        } else if phases.contains(&2) {
            2
        } else {
            4
        };
        Ok(PauliGroup {
            n,
            generators,
            basis,
            phase_step,
            abelian,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Number of independent generators modulo phases.
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.phase_step <= 2
    }

    /// Pure phases present in the group, as a step in `Z_4`.
    pub fn phase_step(&self) -> u8 {
        self.phase_step
    }

    /// Indices of generators whose ordered product equals `p` up to phase.
    pub fn express(&self, p: &PauliOperator) -> Option<Vec<usize>> {
        self.basis
            .express(&p.symplectic())
            .map(|c| c.iter_ones().collect())
    }

    /// Ordered product of the listed generators.
    pub fn product_of(&self, ids: &[usize]) -> PauliOperator {
        product(self.n, ids.iter().map(|&i| &self.generators[i]))
    }

    pub fn contains(&self, p: &PauliOperator, ignore_phase: bool) -> Result<bool> {
        if p.n() != self.n {
            return Err(SlsError::Dimension {
                expected: self.n,
                found: p.n(),
            });
        }
        let Some(ids) = self.express(p) else {
            return Ok(false);
        };
        if ignore_phase {
            return Ok(true);
        }
        let found = self.product_of(&ids).phase_exp();
        let diff = (4 + p.phase_exp() - found) % 4;
        Ok(diff.is_multiple_of(self.phase_step))
    }

    /// Symplectic span of the generators.
    pub fn span(&self) -> &SpanBasis {
        &self.basis
    }

    pub fn contains_bits(&self, v: &BitVec) -> bool {
        self.basis.contains(v)
    }
}

/// `true` iff `p` is a product of `generators`; phases are tracked exactly
/// unless `ignore_phase` is set.
pub fn in_group(
    p: &PauliOperator,
    generators: &[PauliOperator],
    ignore_phase: bool,
) -> Result<bool> {
    PauliGroup::new(p.n(), generators.to_vec())?.contains(p, ignore_phase)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_always_a_member() {
        assert!(in_group(&p("III"), &[p("XXI"), p("ZZZ")], false).unwrap());
        assert!(in_group(&p("II"), &[], false).unwrap());
    }

    #[test]
    fn minus_identity_not_in_stabilizer_group() {
        let gens = [p("ZZI"), p("IZZ"), p("XXX")];
        assert!(!in_group(&p("-III"), &gens, false).unwrap());
        assert!(in_group(&p("-III"), &gens, true).unwrap());
    }

    #[test]
    fn sign_matters_for_abelian_groups() {
        let gens = [p("ZZI"), p("IZZ")];
        assert!(in_group(&p("ZIZ"), &gens, false).unwrap());
        assert!(!in_group(&p("-ZIZ"), &gens, false).unwrap());
    }

    #[test]
    fn inconsistent_signs_put_minus_identity_in_group() {
        let g = PauliGroup::new(3, vec![p("ZZI"), p("IZZ"), p("-ZIZ")]).unwrap();
        assert!(g.contains_minus_identity());
        assert!(g.is_abelian());
    }

    #[test]
    fn non_abelian_group_contains_both_signs() {
        let gens = [p("X"), p("Z")];
        assert!(in_group(&p("-X"), &gens, false).unwrap());
        assert!(in_group(&p("-iY"), &gens, false).unwrap());
        assert!(in_group(&p("+iY"), &gens, false).unwrap());
        assert!(!in_group(&p("Y"), &gens, false).unwrap());
    }

    #[test]
    fn x_not_in_z_group() {
        assert!(!in_group(&p("X"), &[p("Z")], true).unwrap());
    }
}
