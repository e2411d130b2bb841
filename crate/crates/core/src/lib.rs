//! Exact arithmetic for deciding when associated Legendre functions vanish on
//! the zeros of P2, i.e. when harmonic polynomials vanish on the right
//! circular cone x^2 + y^2 - 2z^2 = 0.
//!
//! The pipeline has two independent routes to the same question:
//!
//! * [`legendre`] builds P_l^m as exact rational polynomials and decides
//!   divisibility by P2 directly (the ground-truth oracle);
//! * [`holt`] transforms the question into vanishing of H_l^m(-2), a sum of
//!   dyadic-integer coefficients sigma_l^m(k), which is then analyzed modulo
//!   powers of two by [`lifting`]: low-bit classification, unique bit-by-bit
//!   root lifting, and exhaustive window scans.
//!
//! [`harmonic`] closes the loop geometrically: Cartesian solid harmonics,
//!   exact Laplacians, cone divisibility, and the spaces of harmonic
//!   multipliers of the quadrics x^2 + b*y^2 - (b+1)*z^2.
//!
//! Everything is computed in exact rational arithmetic; no floating point is
//! used anywhere.

pub mod error;
pub mod exact;
pub mod harmonic;
pub mod holt;
pub mod legendre;
pub mod lifting;
pub mod tripoly;

pub use error::{Error, Result};
pub use exact::{reduce_mod, v2, DyadicResidue, Valuation};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
