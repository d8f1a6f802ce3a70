// Times the closed-form product against the continuant recurrence.
// Pass a larger top order as the first argument, e.g. `1000000`.

use sk_spectra::bench::{run_bench, BenchConfig, Method};
use sk_spectra::families::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let top: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let mut ns = vec![];
    let mut n = 1_000;
    while n <= top {
        ns.push(n);
        n *= 10;
    }
    let mut small = BenchConfig::new(Family::Clement, vec![], vec![3, 7, 11]);
    small.methods.push(Method::CofactorDense);
    let report = run_bench(&small)?;
    println!(
        "cross-check at n = {}: max relative difference {:.1e}",
        report.cross_check.n, report.cross_check.max_relative_difference
    );
    print!("{}", report.to_csv());

    let report = run_bench(&BenchConfig::new(Family::Clement, vec![], ns))?;
    print!("{}", report.to_csv().lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bench example");
}
