pub mod classical;
pub mod deghilb;
pub mod gralg;
pub mod linalg;
pub mod numeric;
pub mod paramod;
pub mod series;
pub mod suites;
pub mod sympcheck;

pub use numeric::{int, rat, Complex, ComplexRational, QuadRational, Rational};
pub use series::{BiExp, QExp, QuadPairExp, Series, SeriesError};
