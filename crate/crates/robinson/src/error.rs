use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("asymmetric entries for pair ({x}, {y})")]
    Asymmetry { x: u32, y: u32 },

    #[error("negative entry {value} at ({x}, {y}); pass --shift to normalize")]
    NegativeEntry { x: u32, y: u32, value: f64 },

    #[error("duplicate entry for pair ({x}, {y})")]
    DuplicateEntry { x: u32, y: u32 },

    #[error("matrix has {distinct} distinct positive values; the binary 3-sweep path requires exactly one")]
    NotBinary { distinct: usize },

    #[error("instance size {n} exceeds the brute-force limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("matrix is not Robinsonian; the anchor oracle is undefined")]
    NotRobinsonian,

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
