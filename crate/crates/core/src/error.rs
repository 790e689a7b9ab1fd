use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported; p must be an odd prime")]
    EvenPrime,
    #[error("field order {p}^{m} is too large to tabulate")]
    Overflow { p: u64, m: u32 },
    #[error("extension degree {m} is too small; at least {min} is required")]
    DegreeTooSmall { m: u32, min: u32 },
    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{n} is not a divisor of {order} greater than 1")]
    BadDivisor { n: u64, order: u64 },
    #[error("class index {index} is out of range for order {n}")]
    BadClassIndex { index: u64, n: u64 },
    #[error("leading coefficient of the quadratic is zero")]
    ZeroLeadingCoefficient,
    #[error("the multiplier a must be nonzero")]
    ZeroA,
    #[error("the target value rho must be a nonzero element of the prime field")]
    ZeroRho,
    #[error("prime-field value {value} is out of range for p = {p}")]
    PrimeValueOutOfRange { value: u64, p: u64 },
    #[error("character value must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("{count} distinct codewords exceed the pairwise scan cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unknown section '{0}'")]
    UnknownSection(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
