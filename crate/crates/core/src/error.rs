use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("ill-formed: {0}")]
    IllFormed(String),
    #[error("no solution")]
    NoSolution,
    #[error("incompatible 2-morphisms: {0}")]
    Incompatible(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("not essentially surjective: {0}")]
    NotEssentiallySurjective(String),
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("invalid morphism of complexes: {0}")]
    InvalidMorphism(String),
    #[error("unsupported functor kind: {0}")]
    UnsupportedFunctorKind(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
