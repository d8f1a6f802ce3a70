use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, Ring};
use crate::Error;

/// Number of indeterminates known to [`MultiPoly`].
pub const NUM_VARS: usize = 10;

/// The fixed, ordered set of indeterminates. Declaration order is the
/// monomial order: `λ < z0 < z1 < x < y < u < v < a < b < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Lambda,
    Z0,
    Z1,
    X,
    Y,
    U,
    V,
    A,
    B,
    R,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::Lambda,
        Var::Z0,
        Var::Z1,
        Var::X,
        Var::Y,
        Var::U,
        Var::V,
        Var::A,
        Var::B,
        Var::R,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Lambda => "λ",
            Var::Z0 => "z0",
            Var::Z1 => "z1",
            Var::X => "x",
            Var::Y => "y",
            Var::U => "u",
            Var::V => "v",
            Var::A => "a",
            Var::B => "b",
            Var::R => "r",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lambda" | "λ" | "l" => Ok(Var::Lambda),
            _ => Var::ALL
                .into_iter()
                .find(|v| v.name() == s)
                .ok_or_else(|| Error::Parse(format!("unknown variable {s:?}"))),
        }
    }
}

/// Exponent vector over [`Var::ALL`]. The derived ordering is lexicographic
/// in variable order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u16; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut exps = [0; NUM_VARS];
        exps[v.index()] = e;
        Monomial(exps)
    }

    pub fn from_exponents(pairs: &[(Var, u16)]) -> Self {
        let mut m = Self::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    fn mul(&self, other: &Self) -> Self {
        let mut exps = self.0;
        for (e, o) in exps.iter_mut().zip(other.0) {
            *e = e.checked_add(o).expect("monomial exponent overflow");
        }
        Monomial(exps)
    }

    fn without(&self, v: Var) -> Self {
        let mut m = *self;
        m.0[v.index()] = 0;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Stored canonically: no zero coefficients, so two polynomials are equal
/// exactly when their term maps are equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::default();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    /// The rational value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Indeterminates that actually occur, in variable order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exponent(v) > 0))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Views `self` as a univariate polynomial in `v`; entry `i` is the
    /// coefficient of `v^i`, itself free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::default(); usize::from(self.degree_in(v)) + 1];
        for (m, c) in &self.terms {
            out[usize::from(m.exponent(v))].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every bound variable by its image; unbound variables are kept.
    pub fn substitute(&self, bindings: &HashMap<Var, MultiPoly>) -> Self {
        // Powers are cached per variable since charpolys reuse them heavily.
        let mut powers: HashMap<(Var, u16), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut t = MultiPoly::int(1);
            for (&v, image) in bindings {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                kept.0[v.index()] = 0;
                let pw = powers
                    .entry((v, e))
                    .or_insert_with(|| image.pow(u32::from(e)));
                t = &t * &*pw;
            }
            out += &(&t * &MultiPoly::term(c.clone(), kept));
        }
        out
    }

    /// Evaluates with every occurring variable bound, in any ring containing
    /// the rationals.
    pub fn eval<R: Ring>(&self, value_of: impl Fn(Var) -> Option<R>) -> Result<R, Error> {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for v in Var::ALL {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let x = value_of(v).ok_or_else(|| Error::UnboundVariable(v.name().to_string()))?;
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn mul_ref(&self, rhs: &MultiPoly) -> MultiPoly {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return MultiPoly::default();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::int(1)
    }
}

impl Ring for MultiPoly {
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    out += b;
    out
});
forward_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out -= b;
    out
});
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
