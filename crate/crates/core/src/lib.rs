//! Exact arithmetic and decision procedures for first-order hypergeometric
//! recurrences `f(n) u_n = g(n) u_{n-1}`.

pub mod asymmetry;
pub mod error;
pub mod factor;
pub mod hyperseq;
pub mod membership;
pub mod numtheory;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod quadratic;

pub use error::{Error, Result};
pub use numtheory::{Rational, Valuation};
pub use poly::RatPoly;
