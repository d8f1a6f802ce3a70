// Floating-point sanity: closed-form eigenvalues plugged into the
// continuant characteristic polynomial, over seeded random parameters.

use sk_spectra::families::Family;
use sk_spectra::verify::{numeric_residual, numeric_tolerance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for family in Family::ALL {
        for n in [5, 20, 50] {
            let mut worst = 0f64;
            let mut worst_det = 0f64;
            for seed in 0..20 {
                let r = numeric_residual(family, n, &[], seed)?;
                worst = worst.max(r.max_scaled_residual);
                worst_det = worst_det.max(r.det_relative_error);
            }
            println!(
                "{family:<8} n={n:<3} worst residual {worst:.1e}  worst det error {worst_det:.1e}  (tol {:.0e})",
                numeric_tolerance(n)
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("numeric example");
}
