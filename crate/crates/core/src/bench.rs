//! Timing harness: closed-form determinant vs. continuant vs. dense
//! cofactor expansion, all in floats.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::closed_forms::{det_closed_scaled, spectrum};
use crate::exact_arith::Ring;
use crate::families::{Family, Instance};
use crate::tridiag::{cofactor_det, ScaledFloat, Tridiagonal};
use crate::Error;

/// Largest order the dense cofactor method accepts.
pub const MAX_COFACTOR_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormDet,
    ContinuantDet,
    CofactorDense,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ClosedFormDet, Method::ContinuantDet, Method::CofactorDense];

    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedFormDet => "closed_form_det",
            Method::ContinuantDet => "continuant_det",
            Method::CofactorDense => "cofactor_dense",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bench method {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub params: Vec<f64>,
    pub ns: Vec<usize>,
    pub methods: Vec<Method>,
    pub repetitions: usize,
    /// Each timed sample repeats the call until at least this much time has
    /// passed, so small `n` are not lost in timer noise.
    pub min_sample: Duration,
}

impl BenchConfig {
    pub fn new(family: Family, params: Vec<f64>, ns: Vec<usize>) -> Self {
        BenchConfig {
            family,
            params,
            ns,
            methods: vec![Method::ClosedFormDet, Method::ContinuantDet],
            repetitions: 5,
            min_sample: Duration::from_millis(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    /// Median wall-clock time of one call.
    pub nanoseconds: f64,
}

/// Determinants of one small instance by all three methods.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub n: usize,
    pub closed_form: f64,
    pub continuant: f64,
    pub cofactor: f64,
    pub max_relative_difference: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub cross_check: CrossCheck,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,method,nanoseconds\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{:.0}\n", r.n, r.method, r.nanoseconds));
        }
        s
    }

    pub fn median(&self, n: usize, method: Method) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.method == method)
            .map(|r| r.nanoseconds)
    }
}

struct Prepared {
    matrix: Tridiagonal<f64>,
    center: f64,
    disc: f64,
    step: f64,
}

fn prepare(family: Family, n: usize, params: &[f64]) -> Result<Prepared, Error> {
    let inst = Instance::from_values(family, n, params)?;
    let matrix = inst.matrix();
    let s = spectrum(&inst);
    Ok(Prepared {
        matrix,
        center: s.center,
        disc: s.step_discriminant,
        step: f64::from_rational(&s.step),
    })
}

fn run_method(method: Method, p: &Prepared) -> ScaledFloat {
    match method {
        Method::ClosedFormDet => det_closed_scaled(p.matrix.n(), p.center, p.disc, p.step),
        Method::ContinuantDet => p.matrix.det_scaled(),
        Method::CofactorDense => ScaledFloat::from(cofactor_det(&p.matrix.to_dense())),
    }
}

/// Computes the determinant of the order-6 (`n = 5`) instance three ways.
pub fn cross_check(family: Family, params: &[f64]) -> Result<CrossCheck, Error> {
    let n = 5;
    let p = prepare(family, n, params)?;
    let closed = run_method(Method::ClosedFormDet, &p);
    let cont = run_method(Method::ContinuantDet, &p);
    let cof = run_method(Method::CofactorDense, &p);
    let rel = cont.relative_error(closed).max(cof.relative_error(closed));
    Ok(CrossCheck {
        n,
        closed_form: closed.to_f64(),
        continuant: cont.to_f64(),
        cofactor: cof.to_f64(),
        max_relative_difference: rel,
    })
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn time_method(method: Method, p: &Prepared, repetitions: usize, min_sample: Duration) -> f64 {
    // calibrate the inner loop count
    let mut inner = 1usize;
    loop {
        let start = Instant::now();
        for _ in 0..inner {
            black_box(run_method(method, black_box(p)));
        }
        let el = start.elapsed();
        if el >= min_sample || inner >= 1 << 24 {
            break;
        }
        let grow = (min_sample.as_secs_f64() / el.as_secs_f64().max(1e-9)).ceil() as usize;
        inner = inner.saturating_mul(grow.clamp(2, 100));
    }
    let samples = (0..repetitions)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..inner {
                black_box(run_method(method, black_box(p)));
            }
            start.elapsed().as_secs_f64() * 1e9 / inner as f64
        })
        .collect();
    median(samples)
}

/// Runs the benchmark. The small-`n` cross-check must agree to `1e−12`
/// relative before anything is timed.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, Error> {
    if config.repetitions == 0 {
        return Err(Error::Usage("repetitions must be at least 1".into()));
    }
    if config.methods.contains(&Method::CofactorDense) {
        if let Some(&n) = config.ns.iter().find(|&&n| n + 1 > MAX_COFACTOR_ORDER) {
            return Err(Error::Usage(format!(
                "cofactor_dense is limited to order {MAX_COFACTOR_ORDER}; schedule contains n = {n}"
            )));
        }
    }
    let check = cross_check(config.family, &config.params)?;
    if !(check.max_relative_difference <= 1e-12) {
        return Err(Error::Usage(format!(
            "determinant methods disagree at n = 5: {check:?}"
        )));
    }
    let mut rows = Vec::new();
    for &n in &config.ns {
        let p = prepare(config.family, n, &config.params)?;
        for &method in &config.methods {
            rows.push(BenchRow {
                n,
                method,
                nanoseconds: time_method(method, &p, config.repetitions, config.min_sample),
            });
        }
    }
    Ok(BenchReport {
        cross_check: check,
        rows,
    })
}

/// Parameters for the benchmark when none are given: a shifted Clement
/// matrix, `J_n(1/2, 0)`, whose determinant never vanishes.
pub fn default_params(family: Family) -> Vec<f64> {
    match family {
        Family::Clement => vec![],
        Family::J => vec![0.5, 0.0],
        Family::M => vec![0.5, 0.0, 1.0, 1.0],
        Family::MPlus | Family::MMinus => vec![1.0, 1.0, 0.5],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_repetitions_is_a_usage_error() {
        let mut c = BenchConfig::new(Family::J, default_params(Family::J), vec![10]);
        c.repetitions = 0;
        assert!(matches!(run_bench(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn cofactor_refuses_large_orders() {
        let mut c = BenchConfig::new(Family::J, default_params(Family::J), vec![5, 12]);
        c.methods = vec![Method::CofactorDense];
        assert!(run_bench(&c).is_err());
        c.ns = vec![5, 11];
        c.min_sample = Duration::from_micros(100);
        assert_eq!(run_bench(&c).unwrap().rows.len(), 2);
    }

    #[test]
    fn methods_agree_at_n5() {
        for f in Family::ALL {
            let check = cross_check(f, &default_params(f)).unwrap();
            assert!(check.max_relative_difference <= 1e-12, "{f}: {check:?}");
        }
        let check = cross_check(Family::M, &[1.5, -0.5, 2.0, 3.0]).unwrap();
        assert!(check.max_relative_difference <= 1e-12, "{check:?}");
    }

    #[test]
    fn csv_shape() {
        let mut c = BenchConfig::new(Family::Clement, vec![], vec![10, 100]);
        c.min_sample = Duration::from_micros(50);
        c.repetitions = 3;
        let report = run_bench(&c).unwrap();
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("n,method,nanoseconds\n10,closed_form_det,"));
    }

    #[test]
    fn method_names_parse() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }
}
