mod common;

use common::oracle;
use proptest::prelude::*;
use sls_core::gf2::SpanBasis;
use sls_core::{BinaryMatrix, BitVec};

/// Up to 4 rows of up to 6 columns, as bit masks.
fn matrix() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1usize..=6).prop_flat_map(|cols| (Just(cols), prop::collection::vec(0u32..(1 << cols), 0..=4)))
}

fn to_bitvec(cols: usize, m: u32) -> BitVec {
    BitVec::from_indices(cols, (0..cols).filter(|&i| m >> i & 1 == 1))
}

fn build(cols: usize, rows: &[u32]) -> BinaryMatrix {
    BinaryMatrix::from_rows(cols, rows.iter().map(|&r| to_bitvec(cols, r)).collect())
}

fn masks(rows: &[u32]) -> Vec<oracle::Mask> {
    rows.iter().map(|&r| (r, 0)).collect()
}

proptest! {
    #[test]
    fn rank_matches_enumeration((cols, rows) in matrix()) {
        prop_assert_eq!(build(cols, &rows).rank(), oracle::rank(&masks(&rows)));
    }

    #[test]
    fn span_membership_matches_enumeration((cols, rows) in matrix(), v in 0u32..64) {
        let v = v & ((1 << cols) - 1);
        let vecs: Vec<BitVec> = rows.iter().map(|&r| to_bitvec(cols, r)).collect();
        let basis = SpanBasis::from_vectors(cols, vecs.iter());
        let brute = oracle::span(&masks(&rows)).contains(&(v, 0));
        prop_assert_eq!(basis.contains(&to_bitvec(cols, v)), brute);
        if let Some(combo) = basis.express(&to_bitvec(cols, v)) {
            let mut acc = BitVec::zeros(cols);
            for i in combo.iter_ones() {
                acc.xor_assign(&vecs[i]);
            }
            prop_assert_eq!(acc, to_bitvec(cols, v));
        }
    }

    #[test]
    fn affine_solve_matches_enumeration((cols, rows) in matrix(), b in 0u32..16) {
        let m = build(cols, &rows);
        let b = BitVec::from_indices(rows.len(), (0..rows.len()).filter(|&i| b >> i & 1 == 1));
        let solves = |x: &BitVec| m.mul_vec(x) == b;
        let brute: Vec<BitVec> = (0u32..(1 << cols)).map(|x| to_bitvec(cols, x)).filter(solves).collect();
        match m.solve_affine(&b) {
            None => prop_assert!(brute.is_empty()),
            Some(sol) => {
                let all: Vec<BitVec> = sol.enumerate().collect();
                prop_assert!(all.iter().all(solves));
                prop_assert_eq!(all.len(), brute.len());
            }
        }
    }

    #[test]
    fn kernel_has_complementary_dimension((cols, rows) in matrix()) {
        let m = build(cols, &rows);
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), cols - m.rank());
        for k in &ker {
            prop_assert!(m.mul_vec(k).is_zero());
        }
    }
}
