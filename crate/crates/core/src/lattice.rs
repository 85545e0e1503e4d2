//! Rectangular vertex lattices, locality, boundary logicals and the
//! seam layout used when two patches are merged.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{analyze, reduce_modulo, SubsystemCode};
use crate::error::{Result, SlsError};
use crate::gf2::{BinaryMatrix, BitVec, SpanBasis};
use crate::pauli::{Pauli, PauliOperator};

/// Qubits placed on vertices `(row, col)` of `[1, height] × [1, width]`.
/// Not every vertex needs to be occupied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2D {
    width: usize,
    height: usize,
    coords: Vec<(usize, usize)>,
    /// occupied vertices; sparse so that far-apart coordinates stay cheap
    occupied: BTreeMap<(usize, usize), usize>,
}

impl Lattice2D {
    /// `coords[q]` is the `(row, col)` of qubit `q`.
    pub fn new(width: usize, height: usize, coords: Vec<(usize, usize)>) -> Result<Self> {
        let mut occupied = BTreeMap::new();
        for (q, &(r, c)) in coords.iter().enumerate() {
            if r == 0 || c == 0 || r > height || c > width {
                return Err(SlsError::InvalidCode(format!(
                    "qubit {q} at ({r}, {c}) lies outside [1,{height}]x[1,{width}]"
                )));
            }
            if let Some(other) = occupied.insert((r, c), q) {
                return Err(SlsError::InvalidCode(format!(
                    "qubits {other} and {q} share vertex ({r}, {c})"
                )));
            }
        }
        Ok(Lattice2D {
            width,
            height,
            coords,
            occupied,
        })
    }

    /// Smallest lattice containing all coordinates.
    pub fn fit(coords: Vec<(usize, usize)>) -> Result<Self> {
        let height = coords.iter().map(|c| c.0).max().unwrap_or(0);
        let width = coords.iter().map(|c| c.1).max().unwrap_or(0);
        Self::new(width, height, coords)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn n_qubits(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn coord(&self, q: usize) -> (usize, usize) {
        self.coords[q]
    }

    pub fn qubit_at(&self, row: usize, col: usize) -> Option<usize> {
        self.occupied.get(&(row, col)).copied()
    }

    /// Qubits whose column lies in `cols`.
    pub fn columns(&self, cols: std::ops::RangeInclusive<usize>) -> BitVec {
        BitVec::from_indices(
            self.n_qubits(),
            (0..self.n_qubits()).filter(|&q| cols.contains(&self.coords[q].1)),
        )
    }

    /// Side length of the smallest square covering `support`.
    pub fn extent(&self, support: &[usize]) -> usize {
        if support.is_empty() {
            return 0;
        }
        let rows = support.iter().map(|&q| self.coords[q].0);
        let cols = support.iter().map(|&q| self.coords[q].1);
        let dr = rows.clone().max().unwrap() - rows.min().unwrap();
        let dc = cols.clone().max().unwrap() - cols.min().unwrap();
        dr.max(dc) + 1
    }

    fn occupied_cols(&self) -> Option<(usize, usize)> {
        let min = self.coords.iter().map(|c| c.1).min()?;
        let max = self.coords.iter().map(|c| c.1).max()?;
        Some((min, max))
    }
}

/// Smallest `r` such that every gauge generator fits in an `r × r` square.
pub fn interaction_range(code: &SubsystemCode) -> Result<usize> {
    let lat = code.geometry().ok_or(SlsError::MissingGeometry)?;
    Ok(code
        .gauge_generators()
        .iter()
        .map(|g| lat.extent(&g.support()))
        .max()
        .unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Which member of a logical pair is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicalKind {
    X,
    Z,
}

impl LogicalKind {
    pub fn letter(self) -> Pauli {
        match self {
            LogicalKind::X => Pauli::X,
            LogicalKind::Z => Pauli::Z,
        }
    }
}

/// A logical representative confined to a vertical strip at one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLogical {
    /// Letters only; the phase is fixed to `+1`.
    pub operator: PauliOperator,
    /// Support ordered top to bottom, then left to right.
    pub ordered_support: Vec<usize>,
    pub strip_width: usize,
    pub side: Side,
    pub logical_index: usize,
    pub requested: LogicalKind,
}

impl BoundaryLogical {
    pub fn len(&self) -> usize {
        self.ordered_support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered_support.is_empty()
    }

    /// Single-qubit letter of the operator at the `i`-th element of `Q`.
    pub fn component(&self, i: usize) -> (usize, Pauli) {
        let q = self.ordered_support[i];
        (q, self.operator.letter(q))
    }

    /// `Some(letter)` when all components share one letter.
    pub fn pauli_type(&self) -> Option<Pauli> {
        [Pauli::X, Pauli::Y, Pauli::Z]
            .into_iter()
            .find(|l| self.operator.is_pure(*l))
    }
}

/// `true` when some Pauli supported on `qubits` commutes with every
/// stabilizer but lies outside the gauge group, i.e. a dressed logical fits
/// on that set.
pub(crate) fn supports_logical(
    n: usize,
    qubits: &[usize],
    stabilizers: &[PauliOperator],
    gauge_span: &SpanBasis,
) -> bool {
    let m = qubits.len();
    // unknowns: (x_q, z_q) for q in qubits; one row per stabilizer
    let rows: Vec<BitVec> = stabilizers
        .iter()
        .map(|s| {
            let mut row = BitVec::zeros(2 * m);
            for (j, &q) in qubits.iter().enumerate() {
                row.set(j, s.z_bits().get(q));
                row.set(m + j, s.x_bits().get(q));
            }
            row
        })
        .collect();
    BinaryMatrix::from_rows(2 * m, rows)
        .kernel()
        .iter()
        .any(|v| {
            let mut x = BitVec::zeros(n);
            let mut z = BitVec::zeros(n);
            for (j, &q) in qubits.iter().enumerate() {
                x.set(q, v.get(j));
                z.set(q, v.get(m + j));
            }
            !gauge_span.contains(&x.concat(&z))
        })
}

/// Find a representative of logical `logical_index` inside a vertical strip
/// of width at most `r` at `side`.
///
/// All three nontrivial classes of the logical pair are tried; candidates
/// are ranked by whether they are pure in the requested letter, then the
/// other letter, then by strip width and weight. Representatives that leave
/// room for a logical on a strict subset of their support are skipped.
pub fn boundary_logical(
    code: &SubsystemCode,
    side: Side,
    logical_index: usize,
    kind: LogicalKind,
) -> Result<BoundaryLogical> {
    let lat = code.geometry().ok_or(SlsError::MissingGeometry)?;
    let r = interaction_range(code)?.max(1);
    let analysis = analyze(code)?;
    let pair = analysis.logical_pairs.get(logical_index).ok_or_else(|| {
        SlsError::InvalidCode(format!(
            "logical index {logical_index} out of range (k = {})",
            analysis.params.k
        ))
    })?;
    let classes = [
        pair.x.clone(),
        pair.z.clone(),
        crate::code::hermitian_part(&pair.x * &pair.z),
    ];
    let stabs = &analysis.stabilizer_generators;
    let gauge = code.gauge_generators();
    let gauge_span = code.gauge_group().span().clone();
    let (cmin, cmax) = lat
        .occupied_cols()
        .ok_or(SlsError::NoStripRepresentative { max_width: r })?;

    let other = match kind {
        LogicalKind::X => Pauli::Z,
        LogicalKind::Z => Pauli::X,
    };
    let rank_type = |p: &PauliOperator| {
        if p.is_pure(kind.letter()) {
            0
        } else if p.is_pure(other) {
            1
        } else {
            2
        }
    };

    // (ranking key, operator, strip width)
    type Candidate = ((usize, usize, usize, String), PauliOperator, usize);
    let mut best: Option<Candidate> = None;
    let mut rejected_sub_support = false;
    for w in 1..=r {
        let cols = match side {
            Side::Left => cmin..=(cmin + w - 1),
            Side::Right => (cmax + 1).saturating_sub(w).max(1)..=cmax,
        };
        let allowed = lat.columns(cols);
        for class in &classes {
            let found = reduce_modulo(class, stabs, &allowed)
                .or_else(|| reduce_modulo(class, gauge, &allowed));
            let Some(op) = found else { continue };
            let op = op.with_phase(0);
            let support = op.support();
            let sub_logical = support.iter().any(|&drop| {
                let rest: Vec<usize> = support.iter().copied().filter(|&q| q != drop).collect();
                supports_logical(code.n(), &rest, stabs, &gauge_span)
            });
            if sub_logical {
                rejected_sub_support = true;
                continue;
            }
            let key = (rank_type(&op), w, op.weight(), op.to_string());
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, op, w));
            }
        }
    }
    let Some((_, operator, strip_width)) = best else {
        return Err(if rejected_sub_support {
            SlsError::SubSupportLogical
        } else {
            SlsError::NoStripRepresentative { max_width: r }
        });
    };
    let mut ordered_support = operator.support();
    ordered_support.sort_by_key(|&q| lat.coord(q));
    Ok(BoundaryLogical {
        operator,
        ordered_support,
        strip_width,
        side,
        logical_index,
        requested: kind,
    })
}

/// Layout of two patches side by side with a seam column between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedLattice {
    pub lattice: Lattice2D,
    /// merged-index positions of `Q_A`, `Q_B` and the ancillas `Q_C`
    pub q_a: Vec<usize>,
    pub q_b: Vec<usize>,
    pub q_c: Vec<usize>,
    pub seam_col: usize,
    /// blank rows inserted into A and B, as `(original row, count)`
    pub inserted_a: Vec<(usize, usize)>,
    pub inserted_b: Vec<(usize, usize)>,
}

fn shifted(row: usize, inserted: &[(usize, usize)]) -> usize {
    row + inserted
        .iter()
        .filter(|(at, _)| *at <= row)
        .map(|(_, c)| c)
        .sum::<usize>()
}

/// Place A to the left of B with a seam column between them, inserting
/// blank rows so the `i`-th elements of `Q_A` and `Q_B` share a row, and
/// put ancilla `i` in the seam at the row of the `i`-th merge position.
///
/// Merged indexing: A's qubits, then B's, then the ancillas.
pub fn prepare_merged_lattice(
    a: &Lattice2D,
    la: &BoundaryLogical,
    b: &Lattice2D,
    lb: &BoundaryLogical,
    ancilla_count: usize,
) -> Result<MergedLattice> {
    if la.side != Side::Right || lb.side != Side::Left {
        return Err(SlsError::IncompatibleMerge(format!(
            "expected A's logical on the right and B's on the left, got {} and {}",
            la.side, lb.side
        )));
    }
    let n_a = a.n_qubits();
    let n_b = b.n_qubits();
    let rows_a: Vec<usize> = la.ordered_support.iter().map(|&q| a.coord(q).0).collect();
    let rows_b: Vec<usize> = lb.ordered_support.iter().map(|&q| b.coord(q).0).collect();

    let mut ins_a: Vec<(usize, usize)> = Vec::new();
    let mut ins_b: Vec<(usize, usize)> = Vec::new();
    for i in 0..rows_a.len().min(rows_b.len()) {
        if i > 0 && (rows_a[i] == rows_a[i - 1]) != (rows_b[i] == rows_b[i - 1]) {
            // one side stacks two elements on a row, the other does not
            continue;
        }
        let ra = shifted(rows_a[i], &ins_a);
        let rb = shifted(rows_b[i], &ins_b);
        if ra < rb {
            ins_a.push((rows_a[i], rb - ra));
        } else if rb < ra {
            ins_b.push((rows_b[i], ra - rb));
        }
    }

    let seam = a.width() + 1;
    let mut coords: Vec<(usize, usize)> = Vec::with_capacity(n_a + n_b + ancilla_count);
    coords.extend(a.coords().iter().map(|&(r, c)| (shifted(r, &ins_a), c)));
    coords.extend(
        b.coords()
            .iter()
            .map(|&(r, c)| (shifted(r, &ins_b), c + seam)),
    );
    let mut height = shifted(a.height(), &ins_a).max(shifted(b.height(), &ins_b));

    let mut q_c = Vec::with_capacity(ancilla_count);
    let mut used_rows: Vec<usize> = Vec::new();
    for i in 0..ancilla_count {
        let anchor = if i < la.len() {
            coords[la.ordered_support[i]].0
        } else if i < lb.len() {
            coords[n_a + lb.ordered_support[i]].0
        } else {
            used_rows.last().copied().unwrap_or(0) + 1
        };
        let mut row = anchor.max(1);
        while used_rows.contains(&row) {
            row += 1;
        }
        used_rows.push(row);
        height = height.max(row);
        q_c.push(coords.len());
        coords.push((row, seam));
    }
    let width = seam + b.width();
    Ok(MergedLattice {
        lattice: Lattice2D::new(width, height, coords)?,
        q_a: la.ordered_support.clone(),
        q_b: lb.ordered_support.iter().map(|q| q + n_a).collect(),
        q_c,
        seam_col: seam,
        inserted_a: ins_a,
        inserted_b: ins_b,
    })
}

impl MergedLattice {
    /// Counts of `(Q_A, Q_B, Q_C)` members in each horizontal strip of
    /// height `r`, from the top.
    pub fn strip_counts(&self, r: usize) -> Vec<(usize, usize, usize)> {
        let r = r.max(1);
        let strips = self.lattice.height().div_ceil(r);
        let mut out = vec![(0, 0, 0); strips];
        let strip = |q: usize| (self.lattice.coord(q).0 - 1) / r;
        for &q in &self.q_a {
            out[strip(q)].0 += 1;
        }
        for &q in &self.q_b {
            out[strip(q)].1 += 1;
        }
        for &q in &self.q_c {
            out[strip(q)].2 += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlapping_and_out_of_range_coordinates() {
        assert!(Lattice2D::new(2, 2, vec![(1, 1), (1, 1)]).is_err());
        assert!(Lattice2D::new(2, 2, vec![(3, 1)]).is_err());
        assert!(Lattice2D::new(2, 2, vec![(0, 1)]).is_err());
    }

    #[test]
    fn lookup_and_extent() {
        let lat = Lattice2D::new(3, 2, vec![(1, 1), (2, 3), (1, 2)]).unwrap();
        assert_eq!(lat.qubit_at(2, 3), Some(1));
        assert_eq!(lat.qubit_at(2, 2), None);
        assert_eq!(lat.extent(&[0, 1]), 3);
        assert_eq!(lat.extent(&[0, 2]), 2);
        assert_eq!(lat.extent(&[]), 0);
    }

    #[test]
    fn missing_geometry_is_reported() {
        let code = SubsystemCode::new("t", 1, vec!["Z".parse().unwrap()]).unwrap();
        assert_eq!(interaction_range(&code), Err(SlsError::MissingGeometry));
    }
}
