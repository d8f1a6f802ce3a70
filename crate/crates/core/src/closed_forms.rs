//! Closed-form spectra and their radical-free expansions.
//!
//! Every family has eigenvalues `center + (n − 2k)·step·√D` for
//! `k = 0..=n`. Multiplying the factors for `k` and `n − k` cancels the
//! square root, which is how [`charpoly_closed`] produces a polynomial with
//! no radicals at all.

use num_complex::Complex64;
use num_traits::Zero;

use crate::exact_arith::{rat, MultiPoly, QuadExt, Rational, Ring};
use crate::families::{Instance, JParams, MParams, PmParams, SubstituteToM};
use crate::tridiag::{lambda_poly, ScaledFloat, RESCALE_BITS};

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<R> {
    pub n: usize,
    /// Mean of the eigenvalues.
    pub center: R,
    /// The quantity under the square root.
    pub step_discriminant: R,
    /// Coefficient of `(n − 2k)·√D`: `1/2` for the `M` families, `1` for `J`.
    pub step: Rational,
    /// In k-order, `k = 0..=n`; never sorted.
    pub eigenvalues: Vec<QuadExt<R>>,
}

impl<R: Ring> Spectrum<R> {
    pub fn new(n: usize, center: R, step_discriminant: R, step: Rational) -> Self {
        let eigenvalues = (0..=n)
            .map(|k| {
                QuadExt::new(
                    center.clone(),
                    R::from_rational(&(offset(n, k) * &step)),
                    step_discriminant.clone(),
                )
            })
            .collect();
        Spectrum {
            n,
            center,
            step_discriminant,
            step,
            eigenvalues,
        }
    }

    /// Squared radical coefficient of the pair `(k, n − k)`, i.e.
    /// `((n − 2k)·step)²`.
    fn pair_weight(&self, k: usize) -> Rational {
        let c = offset(self.n, k) * &self.step;
        &c * &c
    }

    fn pairs(&self) -> impl Iterator<Item = usize> {
        // k < n − k
        0..self.n.div_ceil(2)
    }

    /// `(λ − center)² − ((n − 2k)·step)²·D` for each conjugate pair, as
    /// coefficient triples `[c0, c1, c2]` in λ.
    fn pair_factors(&self) -> impl Iterator<Item = [R; 3]> + '_ {
        let mu = &self.center;
        self.pairs().map(move |k| {
            let c0 = mu.square() - self.step_discriminant.scale(&self.pair_weight(k));
            [c0, R::from_i64(-2) * mu.clone(), R::one()]
        })
    }

    /// Coefficients in λ of `∏ (λ − eigenvalue)`, lowest degree first,
    /// via the paired-conjugate expansion.
    pub fn charpoly_coeffs(&self) -> Vec<R> {
        let mut acc = if self.n.is_multiple_of(2) {
            vec![-self.center.clone(), R::one()]
        } else {
            vec![R::one()]
        };
        for factor in self.pair_factors() {
            acc = mul_univariate(&acc, &factor);
        }
        acc
    }

    /// Product of the eigenvalues, multiplied out in the quadratic extension.
    pub fn det_closed(&self) -> QuadExt<R> {
        let one = QuadExt::from_base(R::one(), self.step_discriminant.clone());
        self.eigenvalues
            .iter()
            .fold(one, |acc, e| acc.try_mul(e).expect("shared discriminant"))
    }

    /// The same product from the pair factors at λ = 0; radical-free.
    pub fn det_paired(&self) -> R {
        let middle = if self.n.is_multiple_of(2) {
            self.center.clone()
        } else {
            R::one()
        };
        self.pair_factors().fold(middle, |acc, [c0, _, _]| acc * c0)
    }
}

impl<R: Ring + Into<MultiPoly>> Spectrum<R> {
    /// Expanded `∏ (λ − eigenvalue)` as a polynomial in λ.
    pub fn charpoly_closed(&self) -> MultiPoly {
        lambda_poly(self.charpoly_coeffs().into_iter().map(Into::into).collect())
    }
}

impl Spectrum<f64> {
    /// Numeric eigenvalues in k-order; a negative discriminant gives
    /// complex-conjugate pairs.
    pub fn numeric_values(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(QuadExt::to_complex).collect()
    }

    /// Numeric eigenvalues sorted by real part, then imaginary part.
    pub fn sorted_values(&self) -> Vec<Complex64> {
        let mut v = self.numeric_values();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }
}

/// `n − 2k` as a rational.
fn offset(n: usize, k: usize) -> Rational {
    rat(n as i64 - 2 * k as i64, 1)
}

fn mul_univariate<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Eigenvalues `x + ny/2 + (n − 2k)/2·√(y² + 4uv)`.
pub fn spectrum_m<R: Ring>(p: &MParams<R>) -> Spectrum<R> {
    let center = p.x.clone() + p.y.scale(&rat(p.n as i64, 2));
    let disc = p.y.square() + R::from_i64(4) * p.u.clone() * p.v.clone();
    Spectrum::new(p.n, center, disc, rat(1, 2))
}

/// Eigenvalues `z0 + (n − 2k)·√(z1² + 1)`.
pub fn spectrum_j<R: Ring>(p: &JParams<R>) -> Spectrum<R> {
    let disc = p.z1.square() + R::one();
    Spectrum::new(p.n, p.z0.clone(), disc, rat(1, 1))
}

/// Eigenvalues `(n·r·(a ± b) + (n − 2k)·√(4ab + r²(a ∓ b)²)) / 2`.
pub fn spectrum_mpm<R: Ring>(p: &PmParams<R>) -> Spectrum<R> {
    let s = R::from_i64(p.sign.as_i64());
    let center = (p.r.clone() * (p.a.clone() + s.clone() * p.b.clone())).scale(&rat(p.n as i64, 2));
    let diff = p.a.clone() - s * p.b.clone();
    let disc = R::from_i64(4) * p.a.clone() * p.b.clone() + p.r.square() * diff.square();
    Spectrum::new(p.n, center, disc, rat(1, 2))
}

/// The Clement spectrum `{n, n − 2, …, −n}` (in k-order).
pub fn spectrum_clement<R: Ring>(n: usize) -> Spectrum<R> {
    spectrum_j(&JParams {
        n,
        z0: R::zero(),
        z1: R::zero(),
    })
}

pub fn spectrum<R: Ring>(instance: &Instance<R>) -> Spectrum<R> {
    match instance {
        Instance::Clement(n) => spectrum_clement(*n),
        Instance::J(p) => spectrum_j(p),
        Instance::M(p) => spectrum_m(p),
        Instance::Pm(p) => spectrum_mpm(p),
    }
}

/// `∏ (λ − eigenvalue)` for the spectrum.
pub fn charpoly_closed<R: Ring + Into<MultiPoly>>(s: &Spectrum<R>) -> MultiPoly {
    s.charpoly_closed()
}

pub fn det_closed<R: Ring>(s: &Spectrum<R>) -> QuadExt<R> {
    s.det_closed()
}

/// `M_n` spectrum of the substituted parameters; must agree with the
/// family's own closed form.
pub fn spectrum_via_m<R: Ring, P: SubstituteToM<R>>(p: &P) -> Spectrum<R> {
    spectrum_m(&p.substitution_to_m())
}

/// Closed-form determinant in floats, `O(n)` with no allocation: the pair
/// products `center² − (m·step)²·D` for `m = n, n − 2, …`, carried in
/// scaled form.
pub fn det_closed_scaled(n: usize, center: f64, disc: f64, step: f64) -> ScaledFloat {
    let mut acc = ScaledFloat::from(if n.is_multiple_of(2) { center } else { 1.0 });
    let c2 = center * center;
    let sd = step * step * disc;
    let (big, small) = (2f64.powi(RESCALE_BITS), 2f64.powi(-RESCALE_BITS));
    let mut m = n as f64;
    while m > 0.0 {
        acc.mantissa *= c2 - m * m * sd;
        let a = acc.mantissa.abs();
        if a > big {
            acc.mantissa *= small;
            acc.exponent += i64::from(RESCALE_BITS);
        } else if a < small && a != 0.0 {
            acc.mantissa *= big;
            acc.exponent -= i64::from(RESCALE_BITS);
        }
        m -= 2.0;
    }
    acc.renormalize();
    acc
}

impl Spectrum<f64> {
    pub fn det_scaled(&self) -> ScaledFloat {
        let step = f64::from_rational(&self.step);
        det_closed_scaled(self.n, self.center, self.step_discriminant, step)
    }
}

/// True if every eigenvalue has a rational value (zero radical part or a
/// perfect-square discriminant), returning them in k-order.
pub fn rational_values(s: &Spectrum<Rational>) -> Option<Vec<Rational>> {
    let root = if s.step_discriminant.is_zero() || s.eigenvalues.iter().all(|e| e.radical_part.is_zero()) {
        Rational::zero()
    } else {
        crate::exact_arith::exact_sqrt(&s.step_discriminant)?
    };
    Some(
        s.eigenvalues
            .iter()
            .map(|e| &e.rational_part + &e.radical_part * &root)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{Var, Monomial};
    use crate::families::Sign;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    fn lam() -> MultiPoly {
        Var::Lambda.into()
    }

    #[test]
    fn m_spectrum_n0_is_the_entry() {
        let s = spectrum_m(&MParams::symbolic(0));
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!(s.eigenvalues[0].rational_part, MultiPoly::var(Var::X));
        assert!(s.eigenvalues[0].radical_part.is_zero());
        assert_eq!(s.charpoly_closed(), lam() - MultiPoly::var(Var::X));
    }

    #[test]
    fn m2_all_ones() {
        let s = spectrum_m(&MParams::integer(2, 1, 1, 1, 1));
        assert_eq!(s.center, q(2));
        assert_eq!(s.step_discriminant, q(5));
        let radicals: Vec<_> = s.eigenvalues.iter().map(|e| e.radical_part.clone()).collect();
        assert_eq!(radicals, vec![q(1), q(0), q(-1)]);
        assert_eq!(s.det_closed(), QuadExt::from_base(q(-2), q(5)));
        assert_eq!(s.det_paired(), q(-2));
        assert_eq!(s.charpoly_coeffs(), vec![q(2), q(7), q(-6), q(1)]);
    }

    #[test]
    fn zero_discriminant_collapses() {
        let s = spectrum_m(&MParams::integer(2, 0, 2, 1, -1));
        assert_eq!(s.step_discriminant, q(0));
        assert_eq!(rational_values(&s), Some(vec![q(2), q(2), q(2)]));
        // (λ − 2)³
        let expected = (lam() - MultiPoly::int(2)).pow(3);
        assert_eq!(s.charpoly_closed(), expected);
    }

    #[test]
    fn j_spectra() {
        let s = spectrum_j(&JParams::integer(3, 0, 0));
        assert_eq!(rational_values(&s), Some(vec![q(3), q(1), q(-1), q(-3)]));
        assert_eq!(s.det_closed().rational_part, q(9));
        assert_eq!(s.charpoly_closed(), (lam().pow(2) - MultiPoly::int(1)) * (lam().pow(2) - MultiPoly::int(9)));

        let s = spectrum_j(&JParams::symbolic(0));
        assert_eq!(s.eigenvalues[0].rational_part, MultiPoly::var(Var::Z0));
        assert_eq!(s.det_closed().rational_part, MultiPoly::var(Var::Z0));

        let s = spectrum_j(&JParams::integer(1, 2, 0));
        assert_eq!(rational_values(&s), Some(vec![q(3), q(1)]));
        assert_eq!(s.det_paired(), q(3));
    }

    #[test]
    fn mpm_spectra() {
        let p = PmParams {
            n: 1,
            a: MultiPoly::int(1),
            b: MultiPoly::int(1),
            r: Var::R.into(),
            sign: Sign::Plus,
        };
        let s = spectrum_mpm(&p);
        assert_eq!(s.step_discriminant, MultiPoly::int(4));
        assert_eq!(s.center, MultiPoly::var(Var::R));

        let s = spectrum_mpm(&PmParams::integer(0, 3, 5, 7, Sign::Minus));
        assert_eq!(rational_values(&s), Some(vec![q(0)]));

        let s = spectrum_mpm(&PmParams::integer(2, 1, 1, 1, Sign::Plus));
        assert_eq!((s.center.clone(), s.step_discriminant.clone()), (q(2), q(4)));
        assert_eq!(rational_values(&s), Some(vec![q(4), q(2), q(0)]));
    }

    #[test]
    fn det_paired_matches_extension_product() {
        for n in 0..8 {
            let s = spectrum_m(&MParams::integer(n, 3, -2, 5, 7));
            let full = s.det_closed();
            assert!(full.radical_part.is_zero());
            assert_eq!(full.rational_part, s.det_paired());
        }
    }

    #[test]
    fn charpoly_is_monic_of_full_degree() {
        for n in 0..7 {
            let p = spectrum_m(&MParams::symbolic(n)).charpoly_closed();
            assert_eq!(usize::from(p.degree_in(Var::Lambda)), n + 1);
            assert_eq!(
                p.coefficient(&Monomial::var_pow(Var::Lambda, n as u16 + 1)),
                q(1)
            );
        }
    }

    #[test]
    fn float_spectrum_with_negative_discriminant() {
        let s = spectrum_m(&MParams { n: 1, x: 0.0, y: 0.0, u: 1.0, v: -1.0 });
        let vals = s.sorted_values();
        assert_eq!(vals, vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)]);
        assert!((s.det_scaled().to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scaled_closed_det_matches_plain_product() {
        let s = spectrum_j(&JParams { n: 5, z0: 0.5, z1: 0.75 });
        let plain: f64 = s.numeric_values().iter().map(|z| z.re).product();
        assert!((s.det_scaled().to_f64() - plain).abs() < 1e-9 * plain.abs());
    }
}
