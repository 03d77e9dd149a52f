//! Paramodular Fourier expansions: Jacobi input, the Gritsenko lift and the
//! pullbacks to Humbert surfaces.

mod jacobi;
mod lift;
mod pullback;

pub use jacobi::{JacobiFormData, Lookup};
pub use lift::{
    eisenstein_paramodular, fricke_permute, fricke_sign, gritsenko_lift, FrickeView, witt_p1, witt_taylor, LiftSource,
    ParamodularSeries,
};
pub use pullback::{pullback_p4, pullback_p4_lift, pullback_p5, pullback_p8, P4Window, QuadWindow};

use crate::numeric::Rational;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamodError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("c({n},{r}) violates r^2 <= 4Nn")]
    Koecher { n: i64, r: i64 },
    #[error("c({n},{r}) must vanish for odd weight")]
    Parity { n: i64, r: i64 },
    #[error("c({n},{r}) disagrees with its theta-reduced representative")]
    ThetaConflict { n: i64, r: i64 },
    #[error("Jacobi data missing for (n, r) in {0:?}")]
    MissingData(Vec<(i64, i64)>),
    #[error("weight {0} is not supported here")]
    Weight(i64),
    #[error("level {got} where {expected} is required")]
    Level { expected: String, got: i64 },
    #[error("box ({0}, {1}) is not symmetric")]
    AsymmetricBox(i64, i64),
    #[error("product coefficient at {0:?} violates the Koecher bound")]
    KoecherClosure([i64; 3]),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("nothing provable in the requested window")]
    EmptyWindow,
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Anything that can answer `alpha(a, b, c)`, with `None` for unknown.
pub trait CoefficientSource {
    fn level(&self) -> i64;
    fn weight(&self) -> i64;
    fn alpha(&self, a: i64, b: i64, c: i64) -> Option<Rational>;
    /// `(Amax, Cmax)` beyond which scans may stop.
    fn box_hint(&self) -> (i64, i64);
}

/// `a, c >= 0` and `b^2 <= 4Nac`.
pub fn koecher(n: i64, a: i64, b: i64, c: i64) -> bool {
    a >= 0 && c >= 0 && b * b <= 4 * n * a * c
}
