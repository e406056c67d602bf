use lzdmw_avl::AvlError;
use lzdmw_core::{ModelError, Symbol};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FastError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("symbol {symbol} is not below the fingerprint modulus {p}")]
    SymbolAboveModulus { symbol: Symbol, p: u64 },
    #[error(transparent)]
    Grammar(#[from] AvlError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("no verified parsing after {rounds} rounds")]
    RetriesExhausted { rounds: u32 },
}
