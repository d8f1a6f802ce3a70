// Clement matrix: integer spectrum and an exact characteristic polynomial.

use sk_spectra::closed_forms::{rational_values, spectrum_clement};
use sk_spectra::families::clement;
use sk_spectra::Rational;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 4, 7] {
        let m = clement::<Rational>(n);
        let mut values = rational_values(&spectrum_clement::<Rational>(n)).ok_or("irrational spectrum")?;
        values.sort();
        let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("n = {n}");
        println!("  charpoly  {}", m.charpoly());
        println!("  det       {}", m.det());
        println!("  spectrum  [{}]", shown.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("clement example");
}
