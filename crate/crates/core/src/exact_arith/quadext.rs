use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Ring;
use crate::Error;

/// `rational_part + radical_part·√discriminant` over a base ring.
///
/// The square root is formal: nothing is ever simplified into the base ring,
/// and a zero or negative discriminant is allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt<R> {
    pub rational_part: R,
    pub radical_part: R,
    pub discriminant: R,
}

impl<R: Ring> QuadExt<R> {
    pub fn new(rational_part: R, radical_part: R, discriminant: R) -> Self {
        QuadExt {
            rational_part,
            radical_part,
            discriminant,
        }
    }

    /// Embeds a base-ring element.
    pub fn from_base(p: R, discriminant: R) -> Self {
        Self::new(p, R::zero(), discriminant)
    }

    /// `√discriminant` itself.
    pub fn sqrt_of(discriminant: R) -> Self {
        Self::new(R::zero(), R::one(), discriminant)
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.radical_part.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(
            self.rational_part.clone(),
            -self.radical_part.clone(),
            self.discriminant.clone(),
        )
    }

    /// `p² − q²D`, the product with the conjugate.
    pub fn norm(&self) -> R {
        self.rational_part.square() - self.radical_part.square() * self.discriminant.clone()
    }

    pub fn scale_base(&self, k: &R) -> Self {
        Self::new(
            self.rational_part.clone() * k.clone(),
            self.radical_part.clone() * k.clone(),
            self.discriminant.clone(),
        )
    }

    fn check(&self, rhs: &Self) -> Result<(), Error> {
        if self.discriminant == rhs.discriminant {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch {
                lhs: format!("{}", self.discriminant),
                rhs: format!("{}", rhs.discriminant),
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, Error> {
        self.check(rhs)?;
        Ok(Self::new(
            self.rational_part.clone() + rhs.rational_part.clone(),
            self.radical_part.clone() + rhs.radical_part.clone(),
            self.discriminant.clone(),
        ))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.check(rhs)?;
        Ok(Self::new(
            self.rational_part.clone() - rhs.rational_part.clone(),
            self.radical_part.clone() - rhs.radical_part.clone(),
            self.discriminant.clone(),
        ))
    }

    /// `(p+q√D)(p'+q'√D) = (pp' + qq'D) + (pq' + qp')√D`
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.check(rhs)?;
        let (p, q) = (&self.rational_part, &self.radical_part);
        let (p2, q2) = (&rhs.rational_part, &rhs.radical_part);
        Ok(Self::new(
            p.clone() * p2.clone() + q.clone() * q2.clone() * self.discriminant.clone(),
            p.clone() * q2.clone() + q.clone() * p2.clone(),
            self.discriminant.clone(),
        ))
    }
}

impl QuadExt<f64> {
    /// Numeric value; a negative discriminant yields a non-real result.
    pub fn to_complex(&self) -> Complex64 {
        let root = Complex64::new(self.discriminant, 0.0).sqrt();
        Complex64::new(self.rational_part, 0.0) + root * self.radical_part
    }
}

// Operator forms panic on mismatched discriminants; use the `try_*` methods
// when the operands are not known to share one.
impl<R: Ring> Add for QuadExt<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("QuadExt addition")
    }
}

impl<R: Ring> Sub for QuadExt<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("QuadExt subtraction")
    }
}

impl<R: Ring> Mul for QuadExt<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("QuadExt multiplication")
    }
}

impl<R: Ring> Neg for QuadExt<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational_part, -self.radical_part, self.discriminant)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for QuadExt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_part.is_zero() {
            return write!(f, "{}", self.rational_part);
        }
        if !self.rational_part.is_zero() {
            write!(f, "{} + ", self.rational_part)?;
        }
        write!(f, "({})*sqrt({})", self.radical_part, self.discriminant)
    }
}
