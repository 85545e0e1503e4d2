//! Subsystem lattice surgery: Pauli algebra, subsystem code analysis,
//! lattice code builders, merge/split surgery and exact stabilizer
//! simulation.
//!
//! Phase convention: an operator is `i^e · ⊗ σ(x_q, z_q)` where
//! `σ(1,0) = X`, `σ(0,1) = Z` and `σ(1,1) = Y = iXZ`. It is Hermitian
//! exactly when `e` is even.

pub mod builders;
pub mod code;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod group;
pub mod io;
pub mod lattice;
pub mod pauli;
pub mod render;
pub mod sim;
pub mod surgery;

pub use code::{
    analyze, bare_logicals, center, reduce_to_support, CodeAnalysis, CodeParams, OperatorPair,
    SubsystemCode,
};
pub use distance::{distance, DistanceResult};
pub use error::{Result, SlsError};
pub use gf2::{BinaryMatrix, BitVec};
pub use group::{in_group, PauliGroup};
pub use lattice::{
    boundary_logical, interaction_range, BoundaryLogical, Lattice2D, LogicalKind, Side,
};
pub use pauli::{Pauli, PauliOperator};
