// Arithmetic in Q(sqrt D): an eigenvalue times its conjugate is rational.

use sk_spectra::exact_arith::rat;
use sk_spectra::{MultiPoly, QuadExt, Var};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = QuadExt::new(rat(1, 2), rat(3, 2), rat(5, 1));
    let beta = alpha.conjugate();
    println!("alpha        {alpha}");
    println!("alpha + beta {}", alpha.clone() + beta.clone());
    println!("alpha * beta {}", alpha.clone() * beta);
    println!("norm         {}", alpha.norm());

    let other = QuadExt::sqrt_of(rat(2, 1));
    match alpha.try_mul(&other) {
        Ok(v) => println!("unexpected {v}"),
        Err(e) => println!("mixing radicals: {e}"),
    }

    // symbolic discriminant: (z0 + sqrt(z1^2+1)) (z0 - sqrt(z1^2+1))
    let d = MultiPoly::var(Var::Z1).pow(2) + MultiPoly::int(1);
    let e = QuadExt::new(MultiPoly::var(Var::Z0), MultiPoly::int(1), d);
    println!("symbolic     {}", e.clone() * e.conjugate());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("quadratic extension example");
}
