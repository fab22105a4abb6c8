//! Exact Darboux transformations of polynomial Sturm-Liouville operators.
//!
//! The engine works over any [`Scalar`]; exact computations use
//! [`Rational`] and the aliases below. Floating-point quadrature in
//! [`quadrature`] verifies norms and orthogonality of the exceptional
//! Laguerre families built in [`xlaguerre`].

pub mod algebra;
pub mod darboux;
pub mod diffop;
pub mod error;
pub mod laguerre;
pub mod quadrature;
pub mod quasirational;
pub mod scalar;
pub mod xlaguerre;

pub use error::{Error, Result};
pub use scalar::{format_rational, parse_rational, Scalar};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
pub type Poly = algebra::Polynomial<Rational>;
pub type RatFn = algebra::RationalFunction<Rational>;
pub type QuasiRat = quasirational::QuasiRational<Rational>;
pub type Operator = diffop::DiffOperator<Rational>;
pub type Factorization = darboux::Factorization<Rational>;
pub type Family = xlaguerre::XFamily<Rational>;
