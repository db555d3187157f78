//! Exact computer algebra for the graded invariants attached to
//! Madsen–Tillmann spectra: cohomology of classifying spaces and their
//! restriction maps, Thom-spectrum Poincaré series, Dyer–Lashof free
//! algebras, Euler-characteristic splitting rules and universally defined
//! characteristic classes.
//!
//! Everything is exact. Graded dimensions are [`graded::PoincareSeries`]
//! with big-integer coefficients; cohomology classes are
//! [`poly::Poly`] over `F_p` (or `Z` for rational presentations).

pub mod charclass;
pub mod classifying;
pub mod graded;
pub mod loopspace;
pub mod poly;
pub mod splitting;
pub mod thom;

pub use graded::{
    free_commutative_series, Characteristic, GeneratorSpec, Parity, PoincareSeries, SeriesError,
    DEFAULT_MAX_DEGREE,
};
pub use poly::{Poly, PolyError, PolyRing, RingMap, VariableSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
