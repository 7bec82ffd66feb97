use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library. Variant names double as the machine-readable
/// reason the CLI prints next to a non-zero exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{a} is not a nonzero quadratic residue modulo {p}")]
    NonResidue { a: BigInt, p: u64 },

    #[error("expected a polynomial of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: isize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("prime {0} divides a denominator or leading coefficient")]
    BadPrime(u64),

    #[error("{r} is not a simple root modulo {p}")]
    NotSimpleRoot { r: BigInt, p: u64 },

    #[error("{r} is not a root modulo {p}")]
    NotARoot { r: BigInt, p: u64 },

    #[error("digit run did not terminate within {0} digits")]
    PrecisionExhausted(usize),

    #[error("{0} is not a Hensel prime for f*g")]
    NotHenselPrime(u64),

    #[error("sequence is not p-symmetric at p = {p} (m_f = {m_f}, m_g = {m_g})")]
    NotSymmetric { p: u64, m_f: usize, m_g: usize },

    #[error("f has non-negative integer roots {0:?}")]
    InvalidF(Vec<BigInt>),

    #[error("g has positive integer roots {0:?}; the sequence is eventually zero")]
    DegenerateSequence(Vec<BigInt>),

    #[error("factorization is not certified complete: {0}")]
    UnsupportedFactorization(String),

    #[error("no qualifying primes in the sample range")]
    EmptySampleSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Short name of the variant, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotOddPrime(_) => "NotOddPrime",
            Error::NotPrime(_) => "NotPrime",
            Error::NonResidue { .. } => "NonResidue",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::NotMonic => "NotMonic",
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::BadPrime(_) => "BadPrime",
            Error::NotSimpleRoot { .. } => "NotSimpleRoot",
            Error::NotARoot { .. } => "NotARoot",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotHenselPrime(_) => "NotHenselPrime",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::InvalidF(_) => "InvalidF",
            Error::DegenerateSequence(_) => "DegenerateSequence",
            Error::UnsupportedFactorization(_) => "UnsupportedFactorization",
            Error::EmptySampleSet => "EmptySampleSet",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
