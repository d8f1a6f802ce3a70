// The four-parameter family M_n(x, y, u, v): symbolic certificate, then a
// rational instance with its spectrum in Q(sqrt D).

use sk_spectra::closed_forms::spectrum_m;
use sk_spectra::exact_arith::parse_rational;
use sk_spectra::families::{m_matrix, MParams};
use sk_spectra::verify::verify_chu;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [1, 5, 10] {
        let r = verify_chu(n);
        println!("symbolic n = {n}: {}", if r.passed { "pass" } else { "FAIL" });
    }

    let p = MParams {
        n: 4,
        x: parse_rational("1/2")?,
        y: parse_rational("1")?,
        u: parse_rational("2")?,
        v: parse_rational("-3/4")?,
    };
    let s = spectrum_m(&p);
    println!("D = {}", s.step_discriminant);
    for e in &s.eigenvalues {
        println!("  {e}");
    }
    println!("continuant det   {}", m_matrix(&p).det());
    println!("closed-form det  {}", s.det_closed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("chu example");
}
