//! Exact arithmetic toolkit for counting integral and rational points of
//! bounded height on hypersurfaces over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: sparse multivariate polynomials over `Q`, parsing, heights,
//!   homogeneous parts, substitution, gcd and the Kronecker transform.
//! - [`factor`]: complete factorization over `Q`, `r`-irreducibility and a
//!   bivariate absolute-irreducibility test.
//! - [`geom`]: detection of polynomials that are cylinders over plane curves,
//!   hyperplane slicing and a search for slices that keep the top form
//!   `r`-irreducible.
//! - [`count`]: box enumeration of integral points, projective counts, lines
//!   on surfaces and the comparator bound formulas.
//! - [`auxiliary`]: auxiliary polynomials vanishing on all box points.
//! - [`hilbert`]: specialization counts `S_T(F, B')`.
//! - [`experiments`]: seeded instance generation, sweeps, exponent fitting and
//!   JSON/CSV persistence.

pub mod auxiliary;
pub mod count;
pub mod error;
pub mod experiments;
pub mod factor;
pub mod geom;
pub mod hilbert;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{LinearForm, Monomial, Polynomial};
