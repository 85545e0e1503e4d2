//! Exact distance by enumeration of low-weight Paulis.

use rayon::prelude::*;
use serde::Serialize;

use crate::code::SubsystemCode;
use crate::error::Result;
use crate::gf2::{BitVec, SpanBasis};
use crate::pauli::{Pauli, PauliOperator};

/// Outcome of a bounded distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceResult {
    Exact(usize),
    /// No dressed logical of weight up to the bound exists.
    ExceedsMaxWeight(usize),
}

impl DistanceResult {
    pub fn exact(self) -> Option<usize> {
        match self {
            DistanceResult::Exact(d) => Some(d),
            DistanceResult::ExceedsMaxWeight(_) => None,
        }
    }

    /// `true` when the distance is known to be at least `d`.
    pub fn at_least(self, d: usize) -> bool {
        match self {
            DistanceResult::Exact(e) => e >= d,
            DistanceResult::ExceedsMaxWeight(w) => w + 1 >= d,
        }
    }
}

pub fn default_max_weight(n: usize) -> usize {
    n.min(7)
}

const LETTERS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

struct Search<'a> {
    n: usize,
    /// syndrome column per (qubit, letter)
    columns: Vec<[BitVec; 3]>,
    gauge: &'a SpanBasis,
}

impl Search<'_> {
    fn dfs(
        &self,
        start: usize,
        left: usize,
        syndrome: &BitVec,
        symp: &mut BitVec,
        chosen: &mut Vec<(usize, Pauli)>,
    ) -> bool {
        if left == 0 {
            return syndrome.is_zero() && !self.gauge.contains(symp);
        }
        for q in start..=(self.n - left) {
            for (li, &letter) in LETTERS.iter().enumerate() {
                let (x, z) = letter.bits();
                symp.set(q, x);
                symp.set(self.n + q, z);
                chosen.push((q, letter));
                let syn = syndrome.xor(&self.columns[q][li]);
                if self.dfs(q + 1, left - 1, &syn, symp, chosen) {
                    return true;
                }
                chosen.pop();
            }
            symp.set(q, false);
            symp.set(self.n + q, false);
        }
        false
    }

    /// Lightest dressed logical whose lowest qubit is `first`, of weight `w`.
    fn search_from(&self, first: usize, w: usize) -> Option<Vec<(usize, Pauli)>> {
        let mut symp = BitVec::zeros(2 * self.n);
        let mut chosen = Vec::with_capacity(w);
        for (li, &letter) in LETTERS.iter().enumerate() {
            let (x, z) = letter.bits();
            symp.set(first, x);
            symp.set(self.n + first, z);
            chosen.clear();
            chosen.push((first, letter));
            let syn = self.columns[first][li].clone();
            if self.dfs(first + 1, w - 1, &syn, &mut symp, &mut chosen) {
                return Some(chosen);
            }
        }
        None
    }
}

/// Lightest Pauli of weight at most `max_weight` that commutes with every
/// operator in `checks` and lies outside the gauge group. With the
/// stabilizer generators as `checks` this is a dressed logical; with the
/// gauge generators it is a bare one. The first one in lexicographic support order is returned, so
/// the result does not depend on thread scheduling.
pub fn find_dressed_logical(
    code: &SubsystemCode,
    checks: &[PauliOperator],
    max_weight: usize,
) -> Option<PauliOperator> {
    let n = code.n();
    let columns: Vec<[BitVec; 3]> = (0..n)
        .map(|q| {
            let col = |letter: Pauli| {
                let (x, z) = letter.bits();
                BitVec::from_bools(
                    &checks
                        .iter()
                        .map(|st| (x && st.z_bits().get(q)) ^ (z && st.x_bits().get(q)))
                        .collect::<Vec<_>>(),
                )
            };
            [col(Pauli::X), col(Pauli::Y), col(Pauli::Z)]
        })
        .collect();
    let group = code.gauge_group();
    let search = Search {
        n,
        columns,
        gauge: group.span(),
    };
    for w in 1..=max_weight.min(n) {
        let hit = (0..=(n - w))
            .into_par_iter()
            .find_map_first(|first| search.search_from(first, w));
        if let Some(chosen) = hit {
            let mut op = PauliOperator::identity(n);
            for (q, l) in chosen {
                op.set_letter(q, l);
            }
            return Some(op);
        }
    }
    None
}

/// Minimum weight of a dressed logical, searched up to `max_weight`.
pub fn distance(code: &SubsystemCode, max_weight: usize) -> Result<DistanceResult> {
    let stabs = code.center()?;
    Ok(match find_dressed_logical(code, &stabs, max_weight) {
        Some(op) => DistanceResult::Exact(op.weight()),
        None => DistanceResult::ExceedsMaxWeight(max_weight.min(code.n())),
    })
}

/// Minimum weight of a bare logical: commutes with every gauge generator
/// and lies outside the gauge group.
pub fn bare_distance(code: &SubsystemCode, max_weight: usize) -> Result<DistanceResult> {
    Ok(
        match find_dressed_logical(code, code.gauge_generators(), max_weight) {
            Some(op) => DistanceResult::Exact(op.weight()),
            None => DistanceResult::ExceedsMaxWeight(max_weight.min(code.n())),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, gens: &[&str]) -> SubsystemCode {
        SubsystemCode::new("t", n, gens.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn five_qubit_code_has_distance_three() {
        let c = code(5, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]);
        assert_eq!(distance(&c, 5).unwrap(), DistanceResult::Exact(3));
        assert_eq!(
            distance(&c, 2).unwrap(),
            DistanceResult::ExceedsMaxWeight(2)
        );
    }

    #[test]
    fn repetition_code_distance_one() {
        let c = code(3, &["ZZI", "IZZ"]);
        assert_eq!(distance(&c, 3).unwrap(), DistanceResult::Exact(1));
    }

    #[test]
    fn no_logical_means_bound_exceeded() {
        let c = code(1, &["Z"]);
        assert_eq!(
            distance(&c, 1).unwrap(),
            DistanceResult::ExceedsMaxWeight(1)
        );
    }

    #[test]
    fn gauge_operators_do_not_count() {
        // [[4,1,1,2]] Bacon-Shor 2x2
        let c = code(4, &["XXII", "IIXX", "ZIZI", "IZIZ"]);
        assert_eq!(distance(&c, 4).unwrap(), DistanceResult::Exact(2));
    }
}
