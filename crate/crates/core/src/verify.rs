//! Per-instance certification of the closed forms.
//!
//! Symbolic checks compare the continuant characteristic polynomial with
//! the expanded closed-form product over the family's indeterminates, so a
//! pass is an exact proof of the identity for that `n`. Rational and
//! numeric modes exercise concrete parameter values.

use std::fmt::{Debug, Display};
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{spectrum, Spectrum};
use crate::exact_arith::{MultiPoly, QuadExt, Rational, Ring};
use crate::families::{
    m_matrix, Family, Instance, JParams, PmParams, Sign, SubstituteToM,
};
use crate::tridiag::Tridiagonal;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Symbolic,
    Rational,
    Numeric,
}

/// What was compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Continuant charpoly vs. expanded closed form.
    Charpoly,
    /// Entrywise equality with `M_n` at the substituted parameters.
    Substitution,
    /// Charpoly vanishes at every closed-form eigenvalue.
    Roots,
    /// Floating-point residuals within tolerance.
    Residual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub mode: Mode,
    pub check: Check,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    fn finish(
        family: Family,
        n: usize,
        mode: Mode,
        check: Check,
        started: Instant,
        witness: Option<String>,
    ) -> Self {
        VerificationReport {
            family,
            n,
            mode,
            check,
            passed: witness.is_none(),
            witness,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
            seed: None,
        }
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// First monomial whose coefficients differ, if any.
fn poly_mismatch(lhs: &MultiPoly, rhs: &MultiPoly) -> Option<String> {
    let diff = lhs - rhs;
    let (m, _) = diff.terms().next_back()?;
    Some(format!(
        "coefficient of {m}: continuant {} vs closed form {}",
        lhs.coefficient(m),
        rhs.coefficient(m)
    ))
}

/// Compares `det(λI − matrix)` with the closed-form product of `spectrum`.
pub fn certify_charpoly<R>(
    family: Family,
    mode: Mode,
    matrix: &Tridiagonal<R>,
    spectrum: &Spectrum<R>,
) -> VerificationReport
where
    R: Ring + Into<MultiPoly>,
{
    let started = Instant::now();
    let witness = if matrix.order() != spectrum.eigenvalues.len() {
        Some(format!(
            "order {} but {} eigenvalues",
            matrix.order(),
            spectrum.eigenvalues.len()
        ))
    } else {
        poly_mismatch(&matrix.charpoly(), &spectrum.charpoly_closed())
    };
    VerificationReport::finish(family, matrix.n(), mode, Check::Charpoly, started, witness)
}

fn certify_symbolic(family: Family, n: usize) -> VerificationReport {
    let inst = Instance::symbolic(family, n);
    certify_charpoly(family, Mode::Symbolic, &inst.matrix(), &spectrum(&inst))
}

/// `J_n(z0, z1)` against `∏ (λ − z0 − (n − 2k)√(z1² + 1))`.
pub fn verify_conjecture(n: usize) -> VerificationReport {
    certify_symbolic(Family::J, n)
}

/// `M_n(x, y, u, v)` against `∏ (λ − x − ny/2 − (n − 2k)/2·√(y² + 4uv))`.
pub fn verify_chu(n: usize) -> VerificationReport {
    certify_symbolic(Family::M, n)
}

/// `M±_n(a, b, r)` against its halved closed-form eigenvalues.
pub fn verify_mpm(n: usize, sign: Sign) -> VerificationReport {
    certify_symbolic(
        match sign {
            Sign::Plus => Family::MPlus,
            Sign::Minus => Family::MMinus,
        },
        n,
    )
}

/// The Clement matrix against the integers `−n, −n + 2, …, n`.
pub fn verify_clement(n: usize) -> VerificationReport {
    let inst: Instance<Rational> = Instance::Clement(n);
    certify_charpoly(Family::Clement, Mode::Rational, &inst.matrix(), &spectrum(&inst))
}

/// Symbolic charpoly certification for any family.
pub fn verify_family(family: Family, n: usize) -> VerificationReport {
    match family {
        Family::Clement => verify_clement(n),
        _ => certify_symbolic(family, n),
    }
}

/// First entry `(i, j)` where two dense matrices differ.
pub fn entry_mismatch<R: Ring + Display>(lhs: &Tridiagonal<R>, rhs: &Tridiagonal<R>) -> Option<String> {
    if lhs.order() != rhs.order() {
        return Some(format!("orders {} vs {}", lhs.order(), rhs.order()));
    }
    let (a, b) = (lhs.to_dense(), rhs.to_dense());
    for (i, (ra, rb)) in a.iter().zip(&b).enumerate() {
        for (j, (ea, eb)) in ra.iter().zip(rb).enumerate() {
            if ea != eb {
                return Some(format!("entry ({i}, {j}): {ea} vs {eb}"));
            }
        }
    }
    None
}

/// Checks `J_n = M_n(z0 + n·z1, −2z1, 1, 1)` and
/// `M±_n = M_n(n·a·r, (±b − a)·r, b, a)` entrywise over indeterminates.
pub fn verify_substitutions(n: usize) -> VerificationReport {
    let started = Instant::now();
    let j = JParams::symbolic(n);
    let mut witness = entry_mismatch(&crate::families::j_matrix(&j), &m_matrix(&j.substitution_to_m()))
        .map(|w| format!("j: {w}"));
    for sign in [Sign::Plus, Sign::Minus] {
        if witness.is_some() {
            break;
        }
        let p = PmParams::symbolic(n, sign);
        witness = entry_mismatch(&crate::families::m_pm_matrix(&p), &m_matrix(&p.substitution_to_m()))
            .map(|w| format!("m_{sign:?}: {w}").to_lowercase());
    }
    VerificationReport::finish(Family::M, n, Mode::Symbolic, Check::Substitution, started, witness)
}

/// Evaluates the coefficient list at `point` by Horner's rule inside the
/// quadratic extension.
pub fn eval_in_extension<R: Ring>(coeffs: &[R], point: &QuadExt<R>) -> QuadExt<R> {
    let d = point.discriminant.clone();
    coeffs.iter().rev().fold(QuadExt::from_base(R::zero(), d.clone()), |acc, c| {
        acc.try_mul(point)
            .and_then(|t| t.try_add(&QuadExt::from_base(c.clone(), d.clone())))
            .expect("shared discriminant")
    })
}

/// Checks that the continuant charpoly vanishes exactly at every
/// closed-form eigenvalue.
pub fn verify_roots<R: Ring + Debug>(
    family: Family,
    mode: Mode,
    matrix: &Tridiagonal<R>,
    spectrum: &Spectrum<R>,
) -> VerificationReport {
    let started = Instant::now();
    let coeffs = matrix.charpoly_coeffs();
    let witness = spectrum.eigenvalues.iter().enumerate().find_map(|(k, e)| {
        let value = eval_in_extension(&coeffs, e);
        (!value.is_zero()).then(|| format!("k = {k}: charpoly at eigenvalue is {value:?}"))
    });
    VerificationReport::finish(family, matrix.n(), mode, Check::Roots, started, witness)
}

/// Root membership over the family's indeterminates.
pub fn verify_roots_symbolic(family: Family, n: usize) -> VerificationReport {
    let inst = Instance::symbolic(family, n);
    verify_roots(family, Mode::Symbolic, &inst.matrix(), &spectrum(&inst))
}

/// Exact check at concrete rational parameters: charpoly coefficients and
/// the determinant (continuant vs. product of eigenvalues).
pub fn verify_rational(inst: &Instance<Rational>) -> VerificationReport {
    let started = Instant::now();
    let matrix = inst.matrix();
    let s = spectrum(inst);
    let lhs = matrix.charpoly_coeffs();
    let rhs = s.charpoly_coeffs();
    let mut witness = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| format!("coefficient of λ^{i}: continuant {a} vs closed form {b}"));
    if witness.is_none() {
        let det = matrix.det();
        let closed = s.det_closed();
        if !closed.radical_part.is_zero() || closed.rational_part != det {
            witness = Some(format!("determinant: continuant {det} vs closed form {closed}"));
        }
    }
    VerificationReport::finish(inst.family(), inst.n(), Mode::Rational, Check::Charpoly, started, witness)
}

/// Draws `family.arity()` rationals `p/q` with `p ∈ [−9, 9]`, `q ∈ [1, 9]`.
pub fn random_rationals(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    (0..count)
        .map(|_| crate::exact_arith::rat(rng.random_range(-9..=9), rng.random_range(1..=9)))
        .collect()
}

/// [`verify_rational`] over `draws` seeded random parameter vectors; the
/// first failure is returned, otherwise a passing summary report.
pub fn verify_random_rational(family: Family, n: usize, draws: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let params = random_rationals(&mut rng, family.arity());
        let inst = Instance::from_values(family, n, &params).expect("arity matches");
        let report = verify_rational(&inst);
        if !report.passed {
            let w = report.witness.unwrap_or_default();
            let shown: Vec<String> = params.iter().map(ToString::to_string).collect();
            return VerificationReport::finish(
                family,
                n,
                Mode::Rational,
                Check::Charpoly,
                started,
                Some(format!("params [{}]: {w}", shown.join(", "))),
            )
            .with_seed(seed);
        }
    }
    VerificationReport::finish(family, n, Mode::Rational, Check::Charpoly, started, None).with_seed(seed)
}

/// Residual tolerance for numeric mode at order `n + 1`.
pub fn numeric_tolerance(n: usize) -> f64 {
    if n <= 50 {
        1e-8
    } else {
        1e-6
    }
}

/// Outcome of one floating-point sanity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub family: Family,
    pub n: usize,
    pub params: Vec<f64>,
    pub seed: u64,
    /// Largest `|p(λ_k)| / (1 + max|coeff|·max(1, |λ_k|)^(n+1))`.
    pub max_scaled_residual: f64,
    /// `|det_continuant − det_closed| / max(1, |det_closed|)`.
    pub det_relative_error: f64,
    /// True when the closed-form spectrum is non-real.
    pub complex: bool,
}

impl NumericReport {
    pub fn within(&self, residual_tol: f64, det_tol: f64) -> bool {
        self.max_scaled_residual <= residual_tol && self.det_relative_error <= det_tol
    }

    pub fn to_verification(&self, elapsed_ms: f64) -> VerificationReport {
        let tol = numeric_tolerance(self.n);
        let witness = (!self.within(tol, tol)).then(|| {
            format!(
                "scaled residual {:e}, determinant relative error {:e} (tolerance {tol:e})",
                self.max_scaled_residual, self.det_relative_error
            )
        });
        VerificationReport {
            family: self.family,
            n: self.n,
            mode: Mode::Numeric,
            check: Check::Residual,
            passed: witness.is_none(),
            witness,
            elapsed_ms,
            seed: Some(self.seed),
        }
    }
}

/// Charpoly coefficients in floats with a shared power-of-two exponent, so
/// large orders do not overflow. Returns `(coeffs, log2 scale)`.
fn scaled_charpoly(m: &Tridiagonal<f64>) -> (Vec<f64>, i64) {
    let big = 2f64.powi(512);
    let mut exp = 0i64;
    let diag = m.diag();
    let mut prev = vec![1.0];
    let mut cur = vec![-diag[0], 1.0];
    for k in 1..diag.len() {
        let a = diag[k];
        let bc = m.subdiag()[k - 1] * m.superdiag()[k - 1];
        let mut next = Vec::with_capacity(cur.len() + 1);
        next.push(-a * cur[0]);
        for i in 1..cur.len() {
            next.push(cur[i - 1] - a * cur[i]);
        }
        next.push(cur[cur.len() - 1]);
        for (slot, p) in next.iter_mut().zip(&prev) {
            *slot -= bc * p;
        }
        prev = cur;
        cur = next;
        let top = cur.iter().chain(&prev).fold(0f64, |acc, c| acc.max(c.abs()));
        if top > big {
            cur.iter_mut().for_each(|c| *c /= big);
            prev.iter_mut().for_each(|c| *c /= big);
            exp += 512;
        }
    }
    (cur, exp)
}

/// `|p(λ)| / (1 + max|coeff|·max(1, |λ|)^deg)` evaluated without overflow.
fn scaled_residual(coeffs: &[f64], log2_scale: i64, lambda: Complex64) -> f64 {
    let maxc = coeffs.iter().fold(0f64, |acc, c| acc.max(c.abs()));
    if maxc == 0.0 {
        return 0.0;
    }
    let deg = coeffs.len() - 1;
    let r = lambda.norm();
    if log2_scale == 0 {
        let direct = coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda + c);
        let denom = 1.0 + maxc * r.max(1.0).powi(deg as i32);
        if direct.is_finite() && denom.is_finite() {
            return direct.norm() / denom;
        }
    }
    // q(λ) / max(1, |λ|)^deg with q = p / maxc
    let ratio = if r <= 1.0 {
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda + c / maxc)
    } else {
        let t = lambda.inv();
        let unit = lambda / r;
        let v = coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c / maxc);
        v * unit.powu(deg as u32)
    };
    let log_denom = (maxc.ln() + log2_scale as f64 * std::f64::consts::LN_2) + deg as f64 * r.max(1.0).ln();
    ratio.norm() / (1.0 + (-log_denom).exp())
}

/// Floating-point residuals of the closed-form eigenvalues against the
/// continuant charpoly, plus the determinant relative error.
///
/// With an empty `params`, parameters are drawn uniformly from `[−10, 10]`
/// using `seed`.
pub fn numeric_residual(family: Family, n: usize, params: &[f64], seed: u64) -> Result<NumericReport, Error> {
    let params: Vec<f64> = if params.is_empty() && family.arity() > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..family.arity()).map(|_| rng.random_range(-10.0..=10.0)).collect()
    } else {
        params.to_vec()
    };
    let inst = Instance::from_values(family, n, &params)?;
    let matrix = inst.matrix();
    let s = spectrum(&inst);

    let (coeffs, log2_scale) = scaled_charpoly(&matrix);
    let values = s.numeric_values();
    let max_scaled_residual = values
        .iter()
        .map(|&l| scaled_residual(&coeffs, log2_scale, l))
        .fold(0f64, f64::max);
    let det_relative_error = matrix.det_scaled().relative_error(s.det_scaled());
    Ok(NumericReport {
        family,
        n,
        params,
        seed,
        max_scaled_residual,
        det_relative_error,
        complex: s.step_discriminant < 0.0 && n > 0,
    })
}

/// Worst-case [`numeric_residual`] over `draws` seeded parameter vectors,
/// judged against [`numeric_tolerance`].
pub fn verify_numeric_draws(family: Family, n: usize, draws: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let mut worst: Option<NumericReport> = None;
    for i in 0..draws.max(1) as u64 {
        let r = numeric_residual(family, n, &[], seed.wrapping_add(i)).expect("random params match arity");
        let score = |r: &NumericReport| r.max_scaled_residual.max(r.det_relative_error);
        if worst.as_ref().is_none_or(|w| !(score(&r) <= score(w))) {
            worst = Some(r);
        }
    }
    let worst = worst.expect("at least one draw");
    let mut report = worst.to_verification(started.elapsed().as_secs_f64() * 1e3);
    report.seed = Some(seed);
    if let Some(w) = report.witness.as_mut() {
        *w = format!("{w} at params {:?} (seed {})", worst.params, worst.seed);
    }
    report
}

/// Number of worker threads for suite runs: `SK_SPECTRA_THREADS` if set and
/// positive, otherwise rayon's default.
pub fn thread_cap() -> Option<usize> {
    std::env::var("SK_SPECTRA_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// One unit of work in a suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Job {
    Charpoly(Family),
    Substitutions,
    Roots(Family),
    /// [`verify_random_rational`] with `draws` parameter vectors.
    RandomRational { family: Family, draws: usize, seed: u64 },
    /// [`numeric_residual`] at `draws` random parameter vectors, seeds
    /// `seed, seed + 1, …`.
    Numeric { family: Family, draws: usize, seed: u64 },
}

impl Job {
    pub fn run(self, n: usize) -> VerificationReport {
        match self {
            Job::Charpoly(f) => verify_family(f, n),
            Job::Substitutions => verify_substitutions(n),
            Job::Roots(f) if f == Family::Clement => {
                let inst: Instance<Rational> = Instance::Clement(n);
                verify_roots(f, Mode::Rational, &inst.matrix(), &spectrum(&inst))
            }
            Job::Roots(f) => verify_roots_symbolic(f, n),
            Job::RandomRational { family, draws, seed } => verify_random_rational(family, n, draws, seed),
            Job::Numeric { family, draws, seed } => verify_numeric_draws(family, n, draws, seed),
        }
    }
}

/// Runs every job for every `n`, fanning out across threads. Reports are
/// ordered by `n`, then by job order, regardless of completion order.
pub fn run_suite(jobs: &[Job], ns: impl IntoIterator<Item = usize>, threads: Option<usize>) -> Vec<VerificationReport> {
    let work: Vec<(usize, usize, Job)> = ns
        .into_iter()
        .flat_map(|n| jobs.iter().enumerate().map(move |(i, &j)| (n, i, j)))
        .collect();
    let run = || {
        let mut out: Vec<(usize, usize, VerificationReport)> =
            work.par_iter().map(|&(n, i, j)| (n, i, j.run(n))).collect();
        out.sort_by_key(|&(n, i, _)| (n, i));
        out.into_iter().map(|(_, _, r)| r).collect()
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    }
}

/// The default certification jobs for a family selection.
pub fn charpoly_jobs(families: &[Family]) -> Vec<Job> {
    families.iter().map(|&f| Job::Charpoly(f)).collect()
}
