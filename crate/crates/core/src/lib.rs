//! Sylvester-Kac type tridiagonal matrices with exact closed-form spectra.
//!
//! The crate builds the Clement matrix, the two-parameter family
//! `J_n(z0, z1)`, the four-parameter family `M_n(x, y, u, v)` and the signed
//! family `M±_n(a, b, r)` over any [`Ring`](exact_arith::Ring): symbolic
//! polynomials, exact rationals or `f64`. Their closed-form spectra are
//! evaluated in a formal quadratic extension and certified for each order by
//! exact comparison of characteristic polynomials.
//!
//! ```
//! use sk_spectra::{closed_forms, families, verify};
//!
//! let spectrum = closed_forms::spectrum_j(&families::JParams::integer(3, 0, 0));
//! let values: Vec<String> = closed_forms::rational_values(&spectrum)
//!     .expect("sqrt(1) is rational")
//!     .iter()
//!     .map(|v| v.to_string())
//!     .collect();
//! assert_eq!(values, ["3", "1", "-1", "-3"]);
//!
//! assert!(verify::verify_conjecture(6).passed);
//! ```

pub mod bench;
pub mod cli;
pub mod closed_forms;
pub mod exact_arith;
pub mod families;
pub mod io;
pub mod tridiag;
pub mod verify;

mod error;

pub use error::Error;
pub use exact_arith::{MultiPoly, QuadExt, Rational, Ring, Var};
pub use tridiag::Tridiagonal;
