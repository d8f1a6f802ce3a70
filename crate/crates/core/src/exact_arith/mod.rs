//! Exact coefficient domains.
//!
//! Everything here is a commutative ring that contains the rationals:
//! big rationals, sparse multivariate polynomials over them, and `f64`
//! (which only approximates one). [`QuadExt`] adjoins a single formal square
//! root to any of these.

mod poly;
mod quadext;
mod rational;
mod ring;

pub use poly::{Monomial, MultiPoly, Var, NUM_VARS};
pub use quadext::QuadExt;
pub use rational::{parse_rational, rat, Rational};
pub use rational::exact_sqrt;
pub(crate) use rational::to_decimal_string;
pub use ring::Ring;
