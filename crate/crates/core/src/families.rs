//! Constructors for the Clement, `J_n`, `M_n` and `M±_n` families.
//!
//! Every constructor is ring-generic, so one code path yields symbolic,
//! exact-rational and float matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{MultiPoly, Rational, Ring, Var};
use crate::tridiag::Tridiagonal;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Clement,
    J,
    M,
    MPlus,
    MMinus,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Clement,
        Family::J,
        Family::M,
        Family::MPlus,
        Family::MMinus,
    ];

    /// Number of scalar parameters besides `n`.
    pub fn arity(self) -> usize {
        match self {
            Family::Clement => 0,
            Family::J => 2,
            Family::M => 4,
            Family::MPlus | Family::MMinus => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Clement => "clement",
            Family::J => "j",
            Family::M => "m",
            Family::MPlus => "m_plus",
            Family::MMinus => "m_minus",
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            Family::MPlus => Some(Sign::Plus),
            Family::MMinus => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Indeterminates used for the symbolic instance.
    pub fn symbols(self) -> &'static [Var] {
        match self {
            Family::Clement => &[],
            Family::J => &[Var::Z0, Var::Z1],
            Family::M => &[Var::X, Var::Y, Var::U, Var::V],
            Family::MPlus | Family::MMinus => &[Var::A, Var::B, Var::R],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "clement" | "sylvester-kac" | "kac" => Ok(Family::Clement),
            "j" => Ok(Family::J),
            "m" | "chu" => Ok(Family::M),
            "m_plus" | "mplus" | "m+" => Ok(Family::MPlus),
            "m_minus" | "mminus" | "m-" => Ok(Family::MMinus),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn apply<R: Ring>(self, x: R) -> R {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JParams<R> {
    pub n: usize,
    pub z0: R,
    pub z1: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MParams<R> {
    pub n: usize,
    pub x: R,
    pub y: R,
    pub u: R,
    pub v: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PmParams<R> {
    pub n: usize,
    pub a: R,
    pub b: R,
    pub r: R,
    pub sign: Sign,
}

impl JParams<MultiPoly> {
    pub fn symbolic(n: usize) -> Self {
        JParams {
            n,
            z0: Var::Z0.into(),
            z1: Var::Z1.into(),
        }
    }
}

impl JParams<Rational> {
    pub fn integer(n: usize, z0: i64, z1: i64) -> Self {
        JParams {
            n,
            z0: Rational::from_i64(z0),
            z1: Rational::from_i64(z1),
        }
    }
}

impl MParams<MultiPoly> {
    pub fn symbolic(n: usize) -> Self {
        MParams {
            n,
            x: Var::X.into(),
            y: Var::Y.into(),
            u: Var::U.into(),
            v: Var::V.into(),
        }
    }
}

impl MParams<Rational> {
    pub fn integer(n: usize, x: i64, y: i64, u: i64, v: i64) -> Self {
        MParams {
            n,
            x: Rational::from_i64(x),
            y: Rational::from_i64(y),
            u: Rational::from_i64(u),
            v: Rational::from_i64(v),
        }
    }
}

impl PmParams<MultiPoly> {
    pub fn symbolic(n: usize, sign: Sign) -> Self {
        PmParams {
            n,
            a: Var::A.into(),
            b: Var::B.into(),
            r: Var::R.into(),
            sign,
        }
    }
}

impl PmParams<Rational> {
    pub fn integer(n: usize, a: i64, b: i64, r: i64, sign: Sign) -> Self {
        PmParams {
            n,
            a: Rational::from_i64(a),
            b: Rational::from_i64(b),
            r: Rational::from_i64(r),
            sign,
        }
    }
}

fn int<R: Ring>(k: usize) -> R {
    R::from_i64(k as i64)
}

fn build<R: Ring>(
    n: usize,
    diag: impl Fn(usize) -> R,
    sup: impl Fn(usize) -> R,
    sub: impl Fn(usize) -> R,
) -> Tridiagonal<R> {
    Tridiagonal::new(
        (0..=n).map(diag).collect(),
        (0..n).map(sup).collect(),
        (0..n).map(sub).collect(),
    )
    .expect("band lengths are consistent by construction")
}

/// The Sylvester-Kac (Clement) matrix: zero diagonal, superdiagonal
/// `1..n`, subdiagonal `n..1`.
pub fn clement<R: Ring>(n: usize) -> Tridiagonal<R> {
    build(n, |_| R::zero(), |i| int(i + 1), |i| int(n - i))
}

/// `diag_i = z0 + (n − 2i)·z1`, `super_i = i + 1`, `sub_i = n − i`.
pub fn j_matrix<R: Ring>(p: &JParams<R>) -> Tridiagonal<R> {
    let n = p.n;
    build(
        n,
        |i| p.z0.clone() + R::from_i64(n as i64 - 2 * i as i64) * p.z1.clone(),
        |i| int(i + 1),
        |i| int(n - i),
    )
}

/// `diag_i = x + i·y`, `super_i = (i + 1)·u`, `sub_i = (n − i)·v`.
pub fn m_matrix<R: Ring>(p: &MParams<R>) -> Tridiagonal<R> {
    let n = p.n;
    build(
        n,
        |i| p.x.clone() + int::<R>(i) * p.y.clone(),
        |i| int::<R>(i + 1) * p.u.clone(),
        |i| int::<R>(n - i) * p.v.clone(),
    )
}

/// `diag_i = ((n − i)·a ± i·b)·r`, `super_i = (i + 1)·b`, `sub_i = (n − i)·a`.
pub fn m_pm_matrix<R: Ring>(p: &PmParams<R>) -> Tridiagonal<R> {
    let n = p.n;
    build(
        n,
        |i| {
            (int::<R>(n - i) * p.a.clone() + p.sign.apply(int::<R>(i) * p.b.clone()))
                * p.r.clone()
        },
        |i| int::<R>(i + 1) * p.b.clone(),
        |i| int::<R>(n - i) * p.a.clone(),
    )
}

/// Parameter maps into the general `M_n(x, y, u, v)` family.
pub trait SubstituteToM<R> {
    fn substitution_to_m(&self) -> MParams<R>;
}

impl<R: Ring> SubstituteToM<R> for JParams<R> {
    /// `x = z0 + n·z1`, `y = −2·z1`, `u = v = 1`.
    fn substitution_to_m(&self) -> MParams<R> {
        MParams {
            n: self.n,
            x: self.z0.clone() + int::<R>(self.n) * self.z1.clone(),
            y: R::from_i64(-2) * self.z1.clone(),
            u: R::one(),
            v: R::one(),
        }
    }
}

impl<R: Ring> SubstituteToM<R> for PmParams<R> {
    /// `x = n·a·r`, `y = (±b − a)·r`, `u = b`, `v = a`.
    fn substitution_to_m(&self) -> MParams<R> {
        MParams {
            n: self.n,
            x: int::<R>(self.n) * self.a.clone() * self.r.clone(),
            y: (self.sign.apply(self.b.clone()) - self.a.clone()) * self.r.clone(),
            u: self.b.clone(),
            v: self.a.clone(),
        }
    }
}

/// A member of one of the families together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance<R> {
    Clement(usize),
    J(JParams<R>),
    M(MParams<R>),
    Pm(PmParams<R>),
}

impl<R: Ring> Instance<R> {
    /// Builds an instance from a flat parameter list in the family's
    /// natural order (`z0, z1` / `x, y, u, v` / `a, b, r`).
    pub fn from_values(family: Family, n: usize, values: &[R]) -> Result<Self, Error> {
        if values.len() != family.arity() {
            return Err(Error::ParameterCountMismatch {
                family: family.name(),
                expected: family.arity(),
                got: values.len(),
            });
        }
        let v = |i: usize| values[i].clone();
        Ok(match family {
            Family::Clement => Instance::Clement(n),
            Family::J => Instance::J(JParams { n, z0: v(0), z1: v(1) }),
            Family::M => Instance::M(MParams {
                n,
                x: v(0),
                y: v(1),
                u: v(2),
                v: v(3),
            }),
            Family::MPlus | Family::MMinus => Instance::Pm(PmParams {
                n,
                a: v(0),
                b: v(1),
                r: v(2),
                sign: family.sign().expect("signed family"),
            }),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            Instance::Clement(_) => Family::Clement,
            Instance::J(_) => Family::J,
            Instance::M(_) => Family::M,
            Instance::Pm(p) => match p.sign {
                Sign::Plus => Family::MPlus,
                Sign::Minus => Family::MMinus,
            },
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Clement(n) => *n,
            Instance::J(p) => p.n,
            Instance::M(p) => p.n,
            Instance::Pm(p) => p.n,
        }
    }

    pub fn matrix(&self) -> Tridiagonal<R> {
        match self {
            Instance::Clement(n) => clement(*n),
            Instance::J(p) => j_matrix(p),
            Instance::M(p) => m_matrix(p),
            Instance::Pm(p) => m_pm_matrix(p),
        }
    }
}

impl Instance<MultiPoly> {
    /// The instance over the family's own indeterminates.
    pub fn symbolic(family: Family, n: usize) -> Self {
        let values: Vec<MultiPoly> = family.symbols().iter().map(|&v| v.into()).collect();
        Self::from_values(family, n, &values).expect("symbol count matches arity")
    }
}
