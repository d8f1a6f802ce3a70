// M±_n(a, b, r) for both signs: the closed form, the map into M_n, and a
// numeric look at the eigenvalues.

use sk_spectra::closed_forms::{spectrum_mpm, spectrum_via_m};
use sk_spectra::families::{PmParams, Sign};
use sk_spectra::verify::verify_mpm;
use sk_spectra::MultiPoly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for sign in [Sign::Plus, Sign::Minus] {
        let p = PmParams::<MultiPoly>::symbolic(3, sign);
        let direct = spectrum_mpm(&p);
        let via_m = spectrum_via_m(&p);
        println!("sign {:+}", sign.as_i64());
        println!("  center        {}", direct.center);
        println!("  discriminant  {}", direct.step_discriminant);
        println!("  same as via M: {}", direct.center == via_m.center && direct.step_discriminant == via_m.step_discriminant);
        println!("  certified n=0..=10: {}", (0..=10).all(|n| verify_mpm(n, sign).passed));

        let numeric = spectrum_mpm(&PmParams { n: 3, a: 1.0, b: 2.0, r: 0.5, sign });
        let values: Vec<String> = numeric.sorted_values().iter().map(|z| format!("{:.4}", z.re)).collect();
        println!("  a=1 b=2 r=1/2: [{}]", values.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("signed family example");
}
