//! Numerical evaluation of elliptic special functions: theta functions and
//! elliptic Pochhammer symbols, partition functions of the 8VSOS lattice
//! model, elliptic weight functions, generalized elliptic 6j-symbols,
//! multivariable elliptic hypergeometric series and an associated
//! biorthogonal system, together with residual checks for the identities
//! relating them.
//!
//! Everything is generic over the real scalar type (see [`Real`]); the
//! aliases at the crate root fix it to `f64`.

pub mod biortho;
pub mod error;
pub mod lattice;
pub mod numerics;
pub mod residual;
pub mod series;
pub mod sixj;
pub mod subset;
pub mod weight;

pub use error::{Error, Result};
pub use lattice::{Boundary, Sign};
pub use num_complex::Complex;
pub use numerics::{cplx, real, Accumulator, EllipticParams, Real, Total};
pub use subset::Subset;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
/// Elliptic parameters in double precision.
pub type Params = EllipticParams<f64>;
/// A sum with its absolute mass in double precision.
pub type Total64 = Total<f64>;
