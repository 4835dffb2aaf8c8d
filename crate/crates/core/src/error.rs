use std::fmt;

use crate::root_system::Root;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A pair of roots whose sum escapes the set it should stay in.
///
/// `in_complement` tells whether the failing set was `C` itself or `Φ \ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub first: Root,
    pub second: Root,
    pub sum: Root,
    pub in_complement: bool,
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.in_complement { "complement" } else { "set" };
        write!(
            f,
            "{} and {} lie in the {} but their sum {} does not",
            self.first.pair_string(),
            self.second.pair_string(),
            side,
            self.sum.pair_string()
        )
    }
}

/// Why an operation table fails to be associative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociativityWitness {
    /// `F(F(a,b),c) != F(a,F(b,c))`.
    Triple(usize, usize, usize),
    /// The pair lies in an equivalence class but the class mixes both projections.
    MixedProjection(usize, usize),
}

impl fmt::Display for AssociativityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AssociativityWitness::Triple(a, b, c) => {
                write!(f, "F(F({a},{b}),{c}) != F({a},F({b},{c}))")
            }
            AssociativityWitness::MixedProjection(a, b) => {
                write!(f, "class containing {a} and {b} mixes both projections")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("({a},{b}) is not a root of rank {n}")]
    InvalidRoot { a: usize, b: usize, n: usize },
    #[error("rank {n} exceeds the supported limit {limit}")]
    RankTooLarge { n: usize, limit: usize },
    #[error("mismatched sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid simple subset: {0}")]
    InvalidSimpleSubset(String),
    #[error("simple subsets are not orthogonal: α_{i} and α_{j}")]
    NotOrthogonal { i: usize, j: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("table is not quasitrivial: F({a},{b}) = {value}")]
    NotQuasitrivial { a: usize, b: usize, value: usize },
    #[error("operation is not associative: {0}")]
    NotAssociative(AssociativityWitness),
    #[error("root set is not biclosed: {0}")]
    NotBiclosed(ClosureWitness),
    #[error("invalid preorder decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid position vector: {0}")]
    InvalidPositionVector(String),
    #[error("invalid label order: {0}")]
    InvalidOrder(String),
    #[error("lattice violation: {0}")]
    LatticeViolation(String),
    #[error("cross-check failure: {0}")]
    CrossCheckFailure(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidRoot { .. } => "InvalidRoot",
            Error::RankTooLarge { .. } => "RankTooLarge",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::InvalidSimpleSubset(_) => "InvalidSimpleSubset",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::InvalidTable(_) => "InvalidTable",
            Error::NotQuasitrivial { .. } => "NotQuasitrivial",
            Error::NotAssociative(_) => "NotAssociative",
            Error::NotBiclosed(_) => "NotBiclosed",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::InvalidPositionVector(_) => "InvalidPositionVector",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::LatticeViolation(_) => "LatticeViolation",
            Error::CrossCheckFailure(_) => "CrossCheckFailure",
        }
    }
}
