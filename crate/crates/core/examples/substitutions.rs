// J_n and M±_n are specialisations of M_n. Applying the parameter maps to
// the symbolic matrices reproduces them entry by entry.

use sk_spectra::families::{j_matrix, m_matrix, JParams, PmParams, Sign, SubstituteToM};
use sk_spectra::verify::{entry_mismatch, verify_substitutions};
use sk_spectra::MultiPoly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let j = JParams::<MultiPoly>::symbolic(3);
    let m = j.substitution_to_m();
    println!("J -> M: x = {}, y = {}, u = {}, v = {}", m.x, m.y, m.u, m.v);
    println!("  mismatch: {:?}", entry_mismatch(&j_matrix(&j), &m_matrix(&m)));

    let pm = PmParams::<MultiPoly>::symbolic(3, Sign::Minus);
    let m = pm.substitution_to_m();
    println!("M- -> M: x = {}, y = {}, u = {}, v = {}", m.x, m.y, m.u, m.v);

    let all = (0..=20).map(verify_substitutions).all(|r| r.passed);
    println!("entrywise identities hold for n = 0..=20: {all}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("substitution example");
}
