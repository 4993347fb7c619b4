use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 65535")]
    ModulusTooLarge(u64),
    #[error("{k}! is not invertible modulo {p} (exponential truncation must stop below p)")]
    FactorialNotInvertible { k: u64, p: u32 },
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is out of range for type {kind}")]
    RankOutOfRange { kind: char, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constants fail the Jacobi identity on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("construction would exceed the size bound: {what} needs {needed}, bound is {bound}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
    #[error("element is not p-nilpotent")]
    NotPNilpotent,
    #[error("representation carries no weight grading")]
    Ungraded,
    #[error("weight lies on a p-wall: pairing with coroot {0} is divisible by p")]
    OnWall(usize),
    #[error("weight is not in the interior of the dominant chamber")]
    NotDominant,
    #[error("operation requires rank at most {0}")]
    RankTooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("oracle disagreement in {what}: {left} vs {right}")]
    OracleMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
