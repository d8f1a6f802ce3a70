use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// A commutative ring containing the rationals.
///
/// Matrix constructors, the continuant recurrence and the closed forms are
/// written once against this trait so the symbolic, exact and floating paths
/// share code.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Ring for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Ring for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}
