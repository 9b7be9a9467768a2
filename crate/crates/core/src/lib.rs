//! Exact computation of nonsymmetric Macdonald polynomials `E_mu`, their
//! stable limits in the ring of almost-symmetric functions, the limit
//! Cherednik operators, and the weight basis `E~_(mu|lambda)`.
//!
//! Everything is exact: coefficients live in `Q(q, t)` ([`qt::QtScalar`]) as
//! reduced fractions of integer polynomials.

pub mod almostsym;
pub mod comb;
pub mod daha;
pub mod fixtures;
pub mod hhl;
pub mod int;
pub mod linalg;
pub mod poly2;
pub mod qt;
pub mod stablelimit;
pub mod symfunc;
pub mod verify;
pub mod xpoly;

mod error;

pub use error::Error;
pub use qt::{QtScalar, TVal};
