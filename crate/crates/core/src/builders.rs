//! Concrete lattice codes.

use crate::code::SubsystemCode;
use crate::error::{Result, SlsError};
use crate::lattice::Lattice2D;
use crate::pauli::{Pauli, PauliOperator};

/// Map from `(row, col)` to index over a list of occupied vertices.
struct Placement {
    coords: Vec<(usize, usize)>,
}

impl Placement {
    fn index(&self, rc: (usize, usize)) -> usize {
        self.coords
            .iter()
            .position(|&c| c == rc)
            .unwrap_or_else(|| panic!("vertex {rc:?} is not occupied"))
    }

    fn op(&self, letter: Pauli, cells: &[(usize, usize)]) -> PauliOperator {
        PauliOperator::uniform(
            self.coords.len(),
            cells.iter().map(|&rc| self.index(rc)),
            letter,
        )
    }

    fn finish(
        self,
        name: String,
        gens: Vec<PauliOperator>,
        w: usize,
        h: usize,
    ) -> Result<SubsystemCode> {
        let n = self.coords.len();
        SubsystemCode::new(name, n, gens)?.with_geometry(Lattice2D::new(w, h, self.coords)?)
    }
}

fn grid(rows: usize, cols: usize) -> Placement {
    Placement {
        coords: (1..=rows)
            .flat_map(|r| (1..=cols).map(move |c| (r, c)))
            .collect(),
    }
}

/// Rotated planar surface code on a `d × d` grid, `n = d²`.
///
/// Plaquette `(r, c)` covers rows `r..=r+1`, columns `c..=c+1` and is
/// X-type when `r + c` is even. Weight-2 plaquettes on the top and bottom
/// edges are Z-type, on the left and right edges X-type, so the logical Z
/// runs down a column.
pub fn surface_code(d: usize) -> Result<SubsystemCode> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(SlsError::Unsupported(format!(
            "surface code distance must be odd and at least 3, got {d}"
        )));
    }
    let p = grid(d, d);
    let letter = |r: usize, c: usize| {
        if (r + c).is_multiple_of(2) {
            Pauli::X
        } else {
            Pauli::Z
        }
    };
    let mut gens = Vec::new();
    for r in 0..=d {
        for c in 0..=d {
            let cells: Vec<(usize, usize)> = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
                .into_iter()
                .filter(|&(a, b)| (1..=d).contains(&a) && (1..=d).contains(&b))
                .collect();
            let l = letter(r, c);
            let keep = match cells.len() {
                4 => true,
                2 if r == 0 || r == d => l == Pauli::Z,
                2 => l == Pauli::X,
                _ => false,
            };
            if keep {
                gens.push(p.op(l, &cells));
            }
        }
    }
    p.finish(format!("surface-{d}"), gens, d, d)
}

/// Distance-3 triangular color code on seven qubits. Each of the three
/// weight-4 faces carries an X and a Z stabilizer.
pub fn color_code(d: usize) -> Result<SubsystemCode> {
    if d != 3 {
        return Err(SlsError::Unsupported(format!(
            "color code is available for d = 3 only, got {d}"
        )));
    }
    let p = Placement {
        coords: vec![(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3)],
    };
    let faces: [&[(usize, usize)]; 3] = [
        &[(1, 1), (2, 1), (1, 2), (2, 2)],
        &[(2, 1), (3, 1), (2, 2), (3, 2)],
        &[(1, 2), (2, 2), (3, 2), (2, 3)],
    ];
    let mut gens = Vec::new();
    for letter in [Pauli::X, Pauli::Z] {
        for f in faces {
            gens.push(p.op(letter, f));
        }
    }
    p.finish("color-3".into(), gens, 3, 3)
}

/// Subsystem surface code unit cell: `[1,3]²` without the central vertex.
///
/// Generator order: triangles `G1` (top-left, Z), `G2` (top-right, X),
/// `G3` (bottom-left, X), `G4` (bottom-right, Z), then boundary pairs `S1`
/// (left, X), `S2` (top, Z), `S3` (bottom, Z), `S4` (right, X).
pub fn subsystem_surface_code(l: usize) -> Result<SubsystemCode> {
    if l != 3 {
        return Err(SlsError::Unsupported(format!(
            "subsystem surface code is available for L = 3 only, got {l}"
        )));
    }
    let p = Placement {
        coords: (1..=3)
            .flat_map(|r| (1..=3).map(move |c| (r, c)))
            .filter(|&rc| rc != (2, 2))
            .collect(),
    };
    let gens = vec![
        p.op(Pauli::Z, &[(1, 1), (1, 2), (2, 1)]),
        p.op(Pauli::X, &[(1, 2), (1, 3), (2, 3)]),
        p.op(Pauli::X, &[(2, 1), (3, 1), (3, 2)]),
        p.op(Pauli::Z, &[(2, 3), (3, 2), (3, 3)]),
        p.op(Pauli::X, &[(1, 1), (2, 1)]),
        p.op(Pauli::Z, &[(1, 2), (1, 3)]),
        p.op(Pauli::Z, &[(3, 1), (3, 2)]),
        p.op(Pauli::X, &[(2, 3), (3, 3)]),
    ];
    p.finish("ssc-3".into(), gens, 3, 3)
}

/// Bacon-Shor code on `ly` rows and `lx` columns: XX on horizontal
/// neighbours, ZZ on vertical neighbours.
pub fn bacon_shor(lx: usize, ly: usize) -> Result<SubsystemCode> {
    if lx < 2 || ly < 2 {
        return Err(SlsError::Unsupported(format!(
            "Bacon-Shor dimensions must be at least 2x2, got {lx}x{ly}"
        )));
    }
    let p = grid(ly, lx);
    let mut gens = Vec::new();
    for r in 1..=ly {
        for c in 1..lx {
            gens.push(p.op(Pauli::X, &[(r, c), (r, c + 1)]));
        }
    }
    for r in 1..ly {
        for c in 1..=lx {
            gens.push(p.op(Pauli::Z, &[(r, c), (r + 1, c)]));
        }
    }
    p.finish(format!("bacon-shor-{lx}x{ly}"), gens, lx, ly)
}

/// Code families reachable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Surface,
    Color,
    Ssc,
    BaconShor,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "surface" => Some(Family::Surface),
            "color" => Some(Family::Color),
            "ssc" => Some(Family::Ssc),
            "bacon-shor" | "bacon_shor" => Some(Family::BaconShor),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Surface => "surface",
            Family::Color => "color",
            Family::Ssc => "ssc",
            Family::BaconShor => "bacon-shor",
        }
    }

    /// Build with `size`; Bacon-Shor uses `size_y` rows (default square).
    pub fn build(self, size: usize, size_y: Option<usize>) -> Result<SubsystemCode> {
        match self {
            Family::Surface => surface_code(size),
            Family::Color => color_code(size),
            Family::Ssc => subsystem_surface_code(size),
            Family::BaconShor => bacon_shor(size, size_y.unwrap_or(size)),
        }
    }
}
