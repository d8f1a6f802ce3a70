// Certifies det J_n(z0, z1) = prod (z0 - (n-2k) sqrt(z1^2+1)) symbolically
// for a range of n, then prints the n = 2 polynomial identity.

use sk_spectra::closed_forms::spectrum_j;
use sk_spectra::families::{j_matrix, JParams};
use sk_spectra::verify::verify_conjecture;
use sk_spectra::MultiPoly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = JParams::<MultiPoly>::symbolic(2);
    println!("continuant   {}", j_matrix(&p).charpoly());
    println!("closed form  {}", spectrum_j(&p).charpoly_closed());

    for n in 0..=12 {
        let r = verify_conjecture(n);
        println!("n = {n:2}  {}  {:.2} ms", if r.passed { "certified" } else { "FAILED" }, r.elapsed_ms);
        if !r.passed {
            return Err(r.witness.unwrap_or_default().into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("conjecture example");
}
