use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at s = {0}")]
    Pole(Complex64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested {requested} Bernoulli numbers, at most {max} are available")]
    BernoulliCountTooLarge { requested: usize, max: usize },

    #[error("requested {requested} zero pairs but the list holds {available}")]
    InsufficientZeros { requested: usize, available: usize },

    #[error("no sign change across [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("zero scan exhausted: found {found} of {wanted} zeros below t = {limit}")]
    ScanExhausted {
        found: usize,
        wanted: usize,
        limit: f64,
    },

    #[error("phase-term denominator vanishes at sigma = {sigma}, tau = {tau}, t = {t}")]
    DenominatorZero { sigma: f64, tau: f64, t: f64 },

    #[error("modulus {0} outside the supported range 1..=1000")]
    ModulusOutOfRange(u64),

    #[error("character mod {q} (label {label}) is not primitive")]
    NotPrimitive { q: u64, label: u64 },

    #[error("L(0, chi) vanishes for character mod {q} (label {label})")]
    VanishingAtZero { q: u64, label: u64 },

    #[error("lattice sum requires Re(s) > 1.1, got s = {0}")]
    OutsideConvergence(Complex64),

    #[error("{0} is not a valid negative discriminant magnitude (need delta = 0 or 3 mod 4)")]
    InvalidDiscriminant(u64),

    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("boundary phase jump of {jump} rad persists after refinement")]
    BoundaryTooCoarse { jump: f64 },

    #[error("zero-list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
