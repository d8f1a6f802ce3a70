//! Tridiagonal matrices over a generic ring, with the continuant
//! determinant and the characteristic-polynomial recurrence.

use num_traits::{One, Zero};

use crate::exact_arith::{Monomial, MultiPoly, Rational, Ring, Var};
use crate::Error;

/// An `(n+1)×(n+1)` tridiagonal matrix stored as its three bands.
///
/// `superdiag[i]` is entry `(i, i+1)` and `subdiag[i]` is entry `(i+1, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal<R> {
    diag: Vec<R>,
    superdiag: Vec<R>,
    subdiag: Vec<R>,
}

impl<R: Ring> Tridiagonal<R> {
    pub fn new(diag: Vec<R>, superdiag: Vec<R>, subdiag: Vec<R>) -> Result<Self, Error> {
        if diag.is_empty() || superdiag.len() + 1 != diag.len() || subdiag.len() + 1 != diag.len() {
            return Err(Error::Shape {
                diag: diag.len(),
                sup: superdiag.len(),
                sub: subdiag.len(),
            });
        }
        Ok(Tridiagonal {
            diag,
            superdiag,
            subdiag,
        })
    }

    /// The family index `n`: one less than the order.
    pub fn n(&self) -> usize {
        self.superdiag.len()
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[R] {
        &self.diag
    }

    pub fn superdiag(&self) -> &[R] {
        &self.superdiag
    }

    pub fn subdiag(&self) -> &[R] {
        &self.subdiag
    }

    pub fn diag_mut(&mut self) -> &mut [R] {
        &mut self.diag
    }

    pub fn superdiag_mut(&mut self) -> &mut [R] {
        &mut self.superdiag
    }

    pub fn subdiag_mut(&mut self) -> &mut [R] {
        &mut self.subdiag
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Tridiagonal<S> {
        Tridiagonal {
            diag: self.diag.iter().map(&f).collect(),
            superdiag: self.superdiag.iter().map(&f).collect(),
            subdiag: self.subdiag.iter().map(&f).collect(),
        }
    }

    pub fn trace(&self) -> R {
        self.diag.iter().cloned().fold(R::zero(), |acc, d| acc + d)
    }

    /// Products `subdiag[i]·superdiag[i]`, the only way the off-diagonal
    /// entries enter the determinant.
    fn couplings(&self) -> impl Iterator<Item = R> + '_ {
        self.subdiag
            .iter()
            .zip(&self.superdiag)
            .map(|(s, t)| s.clone() * t.clone())
    }

    /// Determinant by the continuant recurrence
    /// `d_k = diag_k·d_{k−1} − sub_{k−1}·super_{k−1}·d_{k−2}`.
    pub fn det(&self) -> R {
        let mut prev = R::one();
        let mut cur = self.diag[0].clone();
        for (a, bc) in self.diag[1..].iter().zip(self.couplings()) {
            let next = a.clone() * cur.clone() - bc * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Coefficients of `det(λI − M)`, lowest degree first. Always monic of
    /// degree `order()`.
    pub fn charpoly_coeffs(&self) -> Vec<R> {
        let mut prev: Vec<R> = vec![R::one()];
        let mut cur: Vec<R> = vec![-self.diag[0].clone(), R::one()];
        for (a, bc) in self.diag[1..].iter().zip(self.couplings()) {
            // (λ − a)·cur − bc·prev
            let mut next = Vec::with_capacity(cur.len() + 1);
            next.push(-(a.clone() * cur[0].clone()));
            for i in 1..cur.len() {
                next.push(cur[i - 1].clone() - a.clone() * cur[i].clone());
            }
            next.push(cur[cur.len() - 1].clone());
            if !bc.is_zero() {
                for (slot, p) in next.iter_mut().zip(&prev) {
                    *slot = slot.clone() - bc.clone() * p.clone();
                }
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let size = self.order();
        let mut out = vec![vec![R::zero(); size]; size];
        for (i, d) in self.diag.iter().enumerate() {
            out[i][i] = d.clone();
        }
        for (i, (t, s)) in self.superdiag.iter().zip(&self.subdiag).enumerate() {
            out[i][i + 1] = t.clone();
            out[i + 1][i] = s.clone();
        }
        out
    }
}

impl<R: Ring + Into<MultiPoly>> Tridiagonal<R> {
    /// `det(λI − M)` as a polynomial in [`Var::Lambda`].
    pub fn charpoly(&self) -> MultiPoly {
        let lifted = self.map(|e| e.clone().into());
        lambda_poly(lifted.charpoly_coeffs())
    }
}

/// `Σ coeffs[i]·λ^i`.
pub fn lambda_poly(coeffs: Vec<MultiPoly>) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (i, c) in coeffs.into_iter().enumerate() {
        let e = u16::try_from(i).expect("degree fits u16");
        out += &(c * MultiPoly::term(Rational::one(), Monomial::var_pow(Var::Lambda, e)));
    }
    out
}

/// Laplace expansion along the first column, skipping zero entries.
///
/// Exponential in general; on banded input the zero skipping keeps it
/// usable up to order 12 or so.
pub fn cofactor_det<R: Ring>(m: &[Vec<R>]) -> R {
    fn go<R: Ring>(m: &[Vec<R>], rows: &mut Vec<usize>, col: usize) -> R {
        let size = m.len();
        if col == size {
            return R::one();
        }
        let mut acc = R::zero();
        for pos in 0..rows.len() {
            let r = rows[pos];
            let entry = &m[r][col];
            if entry.is_zero() {
                continue;
            }
            rows.remove(pos);
            let minor = go(m, rows, col + 1);
            rows.insert(pos, r);
            let t = entry.clone() * minor;
            acc = if pos % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }
    let mut rows: Vec<usize> = (0..m.len()).collect();
    go(m, &mut rows, 0)
}

/// A float carried as `mantissa·2^exponent` so long products neither
/// overflow nor underflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledFloat {
    pub mantissa: f64,
    pub exponent: i64,
}

pub(crate) const RESCALE_BITS: i32 = 512;

impl ScaledFloat {
    pub fn to_f64(self) -> f64 {
        let e = self.exponent.clamp(i64::from(i32::MIN), i64::from(i32::MAX)) as i32;
        // powi saturates, so split large shifts.
        let mut m = self.mantissa;
        let mut e = e;
        while e > 1000 {
            m *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            m *= 2f64.powi(-1000);
            e += 1000;
        }
        m * 2f64.powi(e)
    }

    /// `log2 |value|`.
    pub fn log2_abs(self) -> f64 {
        self.mantissa.abs().log2() + self.exponent as f64
    }

    /// `|self − other| / max(1, |other|)`, computed without leaving the
    /// scaled representation.
    pub fn relative_error(self, other: ScaledFloat) -> f64 {
        let top = self.exponent.max(other.exponent);
        let shift = |s: ScaledFloat| s.mantissa * 2f64.powi((s.exponent - top).max(-2000) as i32);
        let diff = (shift(self) - shift(other)).abs();
        let denom = shift(other).abs().max(2f64.powi((-top).clamp(-2000, 2000) as i32));
        diff / denom
    }

    pub(crate) fn renormalize(&mut self) {
        let a = self.mantissa.abs();
        if a > 2f64.powi(RESCALE_BITS) || (a != 0.0 && a < 2f64.powi(-RESCALE_BITS)) {
            let e = a.log2().floor() as i32;
            self.mantissa *= 2f64.powi(-e);
            self.exponent += i64::from(e);
        }
    }
}

impl From<f64> for ScaledFloat {
    fn from(x: f64) -> Self {
        let mut s = ScaledFloat {
            mantissa: x,
            exponent: 0,
        };
        s.renormalize();
        s
    }
}

impl Tridiagonal<f64> {
    /// Continuant determinant with periodic power-of-two rescaling, for
    /// orders where the plain product would overflow.
    pub fn det_scaled(&self) -> ScaledFloat {
        let big = 2f64.powi(RESCALE_BITS);
        let small = 2f64.powi(-RESCALE_BITS);
        let mut prev = 1.0f64;
        let mut cur = self.diag[0];
        let mut exponent = 0i64;
        for ((&a, &s), &t) in self.diag[1..].iter().zip(&self.subdiag).zip(&self.superdiag) {
            let next = a * cur - s * t * prev;
            prev = cur;
            cur = next;
            let m = cur.abs().max(prev.abs());
            if m > big {
                cur *= small;
                prev *= small;
                exponent += i64::from(RESCALE_BITS);
            } else if m < small && m != 0.0 {
                cur *= big;
                prev *= big;
                exponent -= i64::from(RESCALE_BITS);
            }
        }
        let mut out = ScaledFloat {
            mantissa: cur,
            exponent,
        };
        out.renormalize();
        out
    }
}
