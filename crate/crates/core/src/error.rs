use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("GF({p}^{k}) is not a valid field")]
    InvalidField { p: u32, k: u32 },
    #[error("field of size {q} exceeds the bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("GF({sub}) is not a subfield of GF({sup})")]
    NotSubfield { sub: u32, sup: u32 },
    #[error("quadratic form is degenerate")]
    Degenerate,
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    OrderExceedsCap { order: u128, cap: u128 },
    #[error("matrices of dimension {dim} over GF({q}) do not pack into 128 bits")]
    PackingOverflow { dim: usize, q: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
