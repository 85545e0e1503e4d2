//! Pauli operators in the binary symplectic representation.
//!
//! A [`PauliOperator`] on `n` qubits is stored as two packed bit vectors and
//! an exponent of `i`:
//!
//! ```text
//! P = i^phase_exp * (σ_0 ⊗ σ_1 ⊗ ... ⊗ σ_{n-1}),   σ_j = σ(x_j, z_j)
//! σ(0,0) = I, σ(1,0) = X, σ(0,1) = Z, σ(1,1) = Y = iXZ
//! ```
//!
//! With this convention an operator is Hermitian exactly when `phase_exp`
//! is even, and the text form `-XZIIY` maps to `phase_exp = 2` with no
//! hidden phase from the `Y` letter.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Result, SlsError};
use crate::gf2::BitVec;

/// A single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Sign-tracked Pauli operator. See the module docs for the phase
/// convention.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase_exp: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase_exp: 0,
        }
    }

    /// Build from raw parts. `phase_exp` is taken mod 4 and counts powers of
    /// `i` in front of the letter string (so `Y` letters carry no phase).
    pub fn from_parts(x: BitVec, z: BitVec, phase_exp: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        PauliOperator {
            x,
            z,
            phase_exp: phase_exp % 4,
        }
    }

    /// Inverse of [`PauliOperator::symplectic`]: bits laid out as `x || z`.
    pub fn from_symplectic(n: usize, bits: &BitVec, phase_exp: u8) -> Self {
        assert_eq!(bits.len(), 2 * n);
        PauliOperator::from_parts(bits.slice(0, n), bits.slice(n, n), phase_exp)
    }

    /// Letter-string constructor with phase `i^phase_exp`.
    pub fn from_letters(letters: &[Pauli], phase_exp: u8) -> Self {
        let n = letters.len();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (q, l) in letters.iter().enumerate() {
            let (xb, zb) = l.bits();
            x.set(q, xb);
            z.set(q, zb);
        }
        PauliOperator::from_parts(x, z, phase_exp)
    }

    /// `letter` on qubit `q`, identity elsewhere, phase `+1`.
    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        let mut p = PauliOperator::identity(n);
        p.set_letter(q, letter);
        p
    }

    /// The same letter on every qubit in `support`, phase `+1`.
    pub fn uniform(n: usize, support: impl IntoIterator<Item = usize>, letter: Pauli) -> Self {
        let mut p = PauliOperator::identity(n);
        for q in support {
            p.set_letter(q, letter);
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase_exp = (self.phase_exp + 2) % 4;
        self
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Overwrite the letter on qubit `q`; the global phase is unchanged.
    pub fn set_letter(&mut self, q: usize, letter: Pauli) {
        let (xb, zb) = letter.bits();
        self.x.set(q, xb);
        self.z.set(q, zb);
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    pub fn support_bits(&self) -> BitVec {
        self.x.or(&self.z)
    }

    /// True when the letter part is all identity (any phase).
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    /// `x || z`, the phase-free symplectic vector.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Symplectic form `x_a·z_b + z_a·x_b` over GF(2); `true` means the
    /// operators anticommute. Panics on length mismatch.
    #[inline]
    pub fn anticommutes_with(&self, other: &PauliOperator) -> bool {
        assert_eq!(self.n(), other.n(), "qubit count mismatch");
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1
    }

    /// Checked commutation test.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        check_dims(self, other)?;
        Ok(!self.anticommutes_with(other))
    }

    /// Checked group product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_dims(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &PauliOperator) -> PauliOperator {
        // Convert each factor to i^f X^x Z^z form (f = e + #Y), multiply there
        // (Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1), and convert back.
        let y1 = self.x.and_count(&self.z);
        let y2 = other.x.and_count(&other.z);
        let swap = self.z.and_count(&other.x);
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let y3 = x.and_count(&z);
        let e =
            self.phase_exp as usize + other.phase_exp as usize + y1 + y2 + 2 * swap + 4 * y3 - y3;
        PauliOperator {
            x,
            z,
            phase_exp: (e % 4) as u8,
        }
    }

    /// Restrict to the qubits listed in `qubits` (in that order).
    /// The phase is kept.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let letters: Vec<Pauli> = qubits.iter().map(|&q| self.letter(q)).collect();
        PauliOperator::from_letters(&letters, self.phase_exp)
    }

    /// Place this operator inside a register of `new_n` qubits, sending
    /// qubit `q` to `map[q]`.
    pub fn embed(&self, new_n: usize, map: &[usize]) -> PauliOperator {
        assert_eq!(map.len(), self.n());
        PauliOperator {
            x: self.x.scatter(new_n, map),
            z: self.z.scatter(new_n, map),
            phase_exp: self.phase_exp,
        }
    }

    /// Letters restricted to a qubit subset, everything else set to
    /// identity, phase reset to `+1`.
    pub fn mask(&self, keep: &BitVec) -> PauliOperator {
        PauliOperator {
            x: self.x.and(keep),
            z: self.z.and(keep),
            phase_exp: 0,
        }
    }

    /// `true` if every letter is `I` or `letter`.
    pub fn is_pure(&self, letter: Pauli) -> bool {
        (0..self.n()).all(|q| {
            let l = self.letter(q);
            l == Pauli::I || l == letter
        })
    }
}

fn check_dims(a: &PauliOperator, b: &PauliOperator) -> Result<()> {
    if a.n() != b.n() {
        return Err(SlsError::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on qubit-count mismatch; use [`PauliOperator::multiply`] for
    /// the checked variant.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n(), rhs.n(), "qubit count mismatch");
        self.mul_unchecked(rhs)
    }
}

/// Ordered product of a list of operators; identity for an empty list.
pub fn product<'a>(n: usize, ops: impl IntoIterator<Item = &'a PauliOperator>) -> PauliOperator {
    ops.into_iter()
        .fold(PauliOperator::identity(n), |acc, p| &acc * p)
}

const SIGNS: [&str; 4] = ["", "+i", "-", "-i"];

impl fmt::Display for PauliOperator {
    /// Canonical text: `""`, `"+i"`, `"-"` or `"-i"` followed by one letter
    /// per qubit. `+` is implied for phase `+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(SIGNS[self.phase_exp as usize])?;
        for q in 0..self.n() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = SlsError;

    /// Accepts an optional sign prefix `+`, `-`, `+i` or `-i` followed by
    /// letters from `{I, X, Y, Z}`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| SlsError::PauliParse {
            input: s.chars().take(64).collect(),
            reason: reason.to_string(),
        };
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let letters = body
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| err(&format!("unexpected character {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_letters(&letters, phase))
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let xz = &p("XI") * &p("ZI");
        assert_eq!(xz.phase_exp(), 3);
        assert_eq!(xz, p("-iYI"));
        // and Y = iXZ
        assert_eq!(&p("+iXI") * &p("ZI"), p("YI"));
    }

    #[test]
    fn hermitian_squares_are_identity() {
        for s in ["X", "Y", "Z", "-Y", "XYZ", "-ZZIY"] {
            let sq = &p(s) * &p(s);
            assert!(sq.is_identity_up_to_phase());
            assert!(sq.phase_exp() == 0 || sq.phase_exp() == 2);
        }
    }

    #[test]
    fn disjoint_product_weight_adds() {
        let a = p("ZZZIII");
        let b = p("IIIZZZ");
        let ab = &a * &b;
        assert_eq!(ab.weight(), a.weight() + b.weight());
        assert_eq!(ab, p("ZZZZZZ"));
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("XZ").commutes(&p("ZX")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            p("XI").multiply(&p("X")),
            Err(SlsError::Dimension { .. })
        ));
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(PauliOperator::identity(5).weight(), 0);
        assert_eq!(p("IXYZI").weight(), 3);
    }

    #[test]
    fn text_round_trip() {
        for s in ["XZIIY", "-XZIIY", "+iXX", "-iZ", "", "-", "IIII"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("+XY").to_string(), "XY");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["XQ", "--X", "i X", "x", "+ix"] {
            assert!(s.parse::<PauliOperator>().is_err(), "{s}");
        }
    }

    #[test]
    fn odd_phase_is_not_hermitian() {
        assert!(!p("+iX").is_hermitian());
        assert!(p("-Y").is_hermitian());
    }
}
