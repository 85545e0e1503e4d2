//! Brute-force reference implementations, independent of the library's
//! linear algebra. Paulis are `(x, z)` bit masks over at most 16 qubits;
//! everything is by enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Mask = (u32, u32);

pub fn from_str(s: &str) -> Mask {
    let mut m = (0, 0);
    for (q, c) in s.chars().filter(|c| "IXYZ".contains(*c)).enumerate() {
        match c {
            'X' => m.0 |= 1 << q,
            'Z' => m.1 |= 1 << q,
            'Y' => {
                m.0 |= 1 << q;
                m.1 |= 1 << q;
            }
            _ => {}
        }
    }
    m
}

pub fn anticommute(a: Mask, b: Mask) -> bool {
    ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()) % 2 == 1
}

pub fn weight(a: Mask) -> u32 {
    (a.0 | a.1).count_ones()
}

/// Every element of the group generated by `gens`, phases dropped.
pub fn span(gens: &[Mask]) -> BTreeSet<Mask> {
    let mut out = BTreeSet::new();
    for sel in 0u32..(1 << gens.len()) {
        let mut acc = (0, 0);
        for (i, g) in gens.iter().enumerate() {
            if sel >> i & 1 == 1 {
                acc = (acc.0 ^ g.0, acc.1 ^ g.1);
            }
        }
        out.insert(acc);
    }
    out
}

pub fn rank(vectors: &[Mask]) -> usize {
    span(vectors).len().trailing_zeros() as usize
}

/// Group elements commuting with every generator.
pub fn center(gens: &[Mask]) -> BTreeSet<Mask> {
    span(gens)
        .into_iter()
        .filter(|&e| gens.iter().all(|&g| !anticommute(e, g)))
        .collect()
}

/// `(k, g)` from `n`, the gauge rank and the center rank.
pub fn k_and_g(n: usize, gens: &[Mask]) -> (usize, usize) {
    let r = rank(gens);
    let s = center(gens).len().trailing_zeros() as usize;
    (n - s - (r - s) / 2, (r - s) / 2)
}

/// Minimum weight of a Pauli commuting with the center but outside the
/// gauge group, over all `4^n` Paulis. `None` when there is no logical.
pub fn distance(n: usize, gens: &[Mask]) -> Option<u32> {
    let group = span(gens);
    let stab: Vec<Mask> = center(gens).into_iter().collect();
    let full = 1u32 << n;
    let mut best = None;
    for x in 0..full {
        for z in 0..full {
            let p = (x, z);
            if group.contains(&p) || stab.iter().any(|&s| anticommute(p, s)) {
                continue;
            }
            let w = weight(p);
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
    }
    best
}
