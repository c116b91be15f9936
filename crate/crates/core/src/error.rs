use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenPrime,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of characteristic {p} and degree {k} is too large for this operation")]
    FieldTooLarge { p: u64, k: usize },
    #[error("{order} does not divide the multiplicative group order of the field")]
    OrderNotDividing { order: u64 },
    #[error("{p} and {n} are not coprime")]
    NotCoprime { p: u64, n: u64 },
    #[error("element does not lie in the subfield of degree {d}")]
    NotInSubfield { d: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("no embedding of the degree {from} field into the degree {to} field")]
    NoEmbedding { from: usize, to: usize },
    #[error("root set is not closed under multiplication by the m-th roots of unity")]
    NotOrbitClosed,
    #[error("zero is not allowed as a root")]
    ZeroRoot,
    #[error("repeated root")]
    RepeatedRoot,
    #[error("m = {m} does not divide p - 1 = {}", p - 1)]
    MNotDividing { p: u64, m: u64 },
    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(String),
    #[error("polynomial has a term t^{exponent} whose exponent is not a multiple of m")]
    BadSupport { exponent: usize },
    #[error("polynomial has degree {actual:?}, expected {expected}")]
    WrongDegree { expected: usize, actual: Option<usize> },
    #[error("polynomial vanishes at t = 0")]
    VanishesAtZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("residue at a root does not lie in the prime field")]
    ResidueNotPrimeField,
    #[error("reconstruction failed: {0}")]
    ReconstructionMismatch(String),
    #[error("sequence is not strictly descending")]
    NotDescending,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("construction preconditions violated: {0}")]
    InvalidConstruction(String),
    #[error("extension degree {needed} exceeds the configured cap {cap}")]
    ExtensionCapExceeded { needed: usize, cap: usize },
    #[error("Witt level {n} exceeds the configured maximum {max}")]
    LevelTooHigh { n: usize, max: usize },
    #[error("Witt vectors have different lengths or base fields")]
    SpecMismatch,
    #[error("Witt vector is not in standard form")]
    NotStandardForm,
    #[error("Witt vector entry contains positive powers of t")]
    PositivePowers,
    #[error("exponents fall into different congruence classes mod {m}")]
    MixedClasses { m: u64 },
    #[error("invalid jump profile: {0}")]
    InvalidProfile(String),
    #[error("upper jump {u_next} is outside [{lo}, {hi})")]
    EssentialRamification { u_next: u64, lo: u64, hi: u64 },
    #[error("jump {0} is not congruent to -1 modulo m")]
    BadCongruence(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
