//! Exact polynomial arithmetic: dense univariate polynomials over the
//! integers, sparse multivariate polynomials, and cyclotomic integers
//! (values of polynomials at a primitive root of unity).

mod cyclotomic;
mod multipoly;
mod unipoly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycInt};
pub use multipoly::MultiPoly;
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// `reverse(d)` needs `d` to be at least the degree of the polynomial.
    #[error("cannot reverse at degree {d}: polynomial has degree {degree}")]
    ReverseDegree { degree: usize, d: usize },
    /// Cyclotomic machinery is only wired up for 1 <= mu <= 30.
    #[error("unsupported cyclotomic index {mu}: supported range is 1..=30")]
    UnsupportedMu { mu: u32 },
}
