use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AvlError {
    #[error("modulus {0} is not a prime in 2..=2^61-1")]
    BadModulus(u64),
    #[error("base {delta} is not in 1..{p}")]
    BadBase { delta: u64, p: u64 },
    #[error("range {start}..{end} is outside 0..{len}")]
    Range {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("invalid grammar: {0}")]
    Invalid(String),
}
