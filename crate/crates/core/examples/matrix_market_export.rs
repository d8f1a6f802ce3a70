// Writes matrices in Matrix Market coordinate format and a spectrum as CSV.

use sk_spectra::closed_forms::spectrum_j;
use sk_spectra::families::{clement, j_matrix, JParams};
use sk_spectra::io::{write_csv_rows, write_matrix_market};
use sk_spectra::Rational;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = std::io::stdout().lock();
    write_matrix_market(&mut out, &clement::<Rational>(3))?;

    let p = JParams { n: 2, z0: 0.25, z1: -1.5 };
    write_matrix_market(&mut out, &j_matrix(&p))?;

    let rows: Vec<Vec<String>> = spectrum_j(&p)
        .sorted_values()
        .iter()
        .map(|z| vec![z.re.to_string()])
        .collect();
    write_csv_rows(&mut out, &rows)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("matrix market example");
}
