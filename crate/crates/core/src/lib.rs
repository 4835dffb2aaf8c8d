//! Biclosed sets of type `A_n` roots and associative quasitrivial operations
//! on `n+1` points.
//!
//! A root is a signed pair `(a,b)` of distinct points; a set of roots is
//! biclosed when both it and its complement are closed under addition. Such
//! sets correspond one to one with associative operations `F` where
//! `F(a,b) ∈ {a,b}`, and the correspondence respects the symmetric group
//! action and the natural orders on both sides.

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod order;
pub mod permutation;
pub mod root_system;
pub mod semigroup;
pub mod verify;

pub use bijection::{
    biclosed_to_semigroup, classify, op_to_pairs, pairs_to_op, semigroup_to_biclosed, CanonicalBiclosed, Label,
    PositionVector,
};
pub use error::{Error, Result};
pub use permutation::Permutation;
pub use root_system::{Root, RootSet, SimpleSubset, MAX_RANK};
pub use semigroup::{PreorderDecomposition, Projection, QuasitrivialOp, TwoPointOp};
