//! Dense GF(2) vectors and matrices.
//!
//! Every symplectic computation in the crate bottoms out here: row rank,
//! reduced row echelon form, affine solves and an incremental span basis
//! that remembers how each basis row was built from the inputs.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` are
/// always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        BitVec::from_indices(len, [i])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Number of positions where both vectors are 1.
    #[inline]
    pub fn and_count(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Standard GF(2) dot product.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Concatenation `self || other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        BitVec::from_indices(
            len,
            self.iter_ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    /// Copy into a longer (or equal) vector, placing bit `i` at `map[i]`.
    pub fn scatter(&self, new_len: usize, map: &[usize]) -> BitVec {
        debug_assert_eq!(map.len(), self.len);
        BitVec::from_indices(new_len, self.iter_ones().map(|i| map[i]))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// A dense binary matrix stored as a list of row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: Vec<BitVec>,
    n_cols: usize,
}

/// Solution set of an affine system `M x = b` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

impl AffineSolution {
    /// Walk the whole affine space; only sensible for small kernels.
    pub fn enumerate(&self) -> impl Iterator<Item = BitVec> + '_ {
        let dim = self.kernel.len();
        assert!(
            dim < 32,
            "kernel of dimension {dim} is too large to enumerate"
        );
        (0u64..(1u64 << dim)).map(move |mask| {
            let mut v = self.particular.clone();
            for (j, k) in self.kernel.iter().enumerate() {
                if (mask >> j) & 1 == 1 {
                    v.xor_assign(k);
                }
            }
            v
        })
    }
}

impl BinaryMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        BinaryMatrix {
            rows: vec![BitVec::zeros(n_cols); n_rows],
            n_cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        BinaryMatrix {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            n_cols: n,
        }
    }

    /// Build from rows; all rows must have length `n_cols`.
    pub fn from_rows(n_cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), n_cols, "row length does not match column count");
        }
        BinaryMatrix { rows, n_cols }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.n_cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.n_cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M v` for a column vector `v` of length `n_cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    /// Reduced row echelon form. Returns the reduced matrix (zero rows
    /// dropped) and the pivot column of each remaining row.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&mut rows, self.n_cols);
        rows.truncate(pivots.len());
        (
            BinaryMatrix {
                rows,
                n_cols: self.n_cols,
            },
            pivots,
        )
    }

    /// Row rank over GF(2). The matrix itself is left untouched.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref_in_place(&mut rows, self.n_cols).len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        self.solve_affine(&BitVec::zeros(self.rows.len()))
            .expect("homogeneous systems are always consistent")
            .kernel
    }

    /// Solve `M x = rhs` where each row of `M` is one constraint.
    ///
    /// Returns `None` when the system is inconsistent.
    pub fn solve_affine(&self, rhs: &BitVec) -> Option<AffineSolution> {
        assert_eq!(
            rhs.len(),
            self.rows.len(),
            "right-hand side must have one entry per row"
        );
        let n = self.n_cols;
        let mut aug: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.concat(&BitVec::zeros(1));
                a.set(n, rhs.get(i));
                a
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if aug[pivots.len()..].iter().any(|r| r.get(n)) {
            return None;
        }
        let mut particular = BitVec::zeros(n);
        for (row, &p) in aug.iter().zip(&pivots) {
            if row.get(n) {
                particular.set(p, true);
            }
        }
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(n, free);
                for (row, &p) in aug.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Some(AffineSolution { particular, kernel })
    }
}

/// In-place Gauss–Jordan elimination restricted to the first `n_cols`
/// columns. Nonzero rows are moved to the front; returns the pivot columns.
fn rref_in_place(rows: &mut [BitVec], n_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n_cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// An echelon basis that is grown one vector at a time and records, for
/// each stored row, which inserted vectors were summed to produce it.
///
/// This is the workhorse for "is `v` in the span of these operators, and if
/// so which of them multiply to it".
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Vec<BitVec>,
    inserted: usize,
    capacity: usize,
}

impl SpanBasis {
    /// `dim` is the ambient vector length; `capacity` bounds how many
    /// vectors may be inserted (the length of the combination vectors).
    pub fn new(dim: usize, capacity: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
            capacity,
        }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let vs: Vec<&BitVec> = vs.into_iter().collect();
        let mut b = SpanBasis::new(dim, vs.len());
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the basis; returns the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        debug_assert_eq!(v.len(), self.dim);
        let mut r = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for ((row, &p), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if r.get(p) {
                r.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Which inserted vectors sum to `v`, if any.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce(v);
        r.is_zero().then_some(combo)
    }

    /// Insert `v`. Returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert!(
            self.inserted < self.capacity,
            "SpanBasis capacity {} exceeded",
            self.capacity
        );
        let idx = self.inserted;
        self.inserted += 1;
        let (r, mut combo) = self.reduce(v);
        combo.flip(idx);
        let Some(p) = r.first_one() else {
            return false;
        };
        // keep rows fully reduced so `reduce` is a single pass
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row.get(p) {
                row.xor_assign(&r);
                c.xor_assign(&combo);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }
}
