//! Conjugation in the degree-1 group and the correctors sigma and tau.
//!
//! ```bash
//! cargo run --example conjugation_correctors
//! ```

use cdgl::bch::{bullet, bullet_many, conjugate_by_exp};
use cdgl::correctors::{corrector_pair, sigma, tau};
use cdgl::differential::UniversalAlgebra;

fn main() -> cdgl::Result<()> {
    let alg = UniversalAlgebra::new(2, 6)?;
    let d = alg.differential();
    let (alpha, beta) = (alg.u(1), alg.u(2));
    let a = d.apply(&alpha)?;

    // sigma starts with [alpha, beta]/2
    let s = sigma(d, &alpha, &beta)?;
    println!("sigma lowest term: {}", s.component(2)?);

    // conjugation through sigma: x•y•x^{-1} = e^{ad_a}(y) - d sigma(x,y)
    let conjugated = bullet_many(d, &[alpha.clone(), beta.clone(), -&alpha])?;
    let through_sigma = &conjugate_by_exp(&a, &beta)? - &d.apply(&s)?;
    println!("conjugation via sigma: {}", conjugated == through_sigma);

    // tau reshapes the corrector so conjugation becomes a product:
    // x•y•x^{-1} = e^{ad_a}(y) • d tau(x,y)^{-1}
    let t = tau(d, &alpha, &beta)?;
    println!("tau through length 3:");
    for len in 2..=3 {
        println!("  length {len}: {}", t.component(len)?);
    }
    let through_tau = bullet(d, &conjugate_by_exp(&a, &beta)?, &-&d.apply(&t)?)?;
    println!("conjugation via tau: {}", conjugated == through_tau);

    // when the second argument is a cycle the two correctors coincide
    let cycle = d.apply(&alg.u(1).bracket(&alg.u(2))?)?;
    let pair = corrector_pair(d, &alpha, &cycle)?;
    println!("tau = sigma on cycles: {}", pair.tau == pair.sigma);
    Ok(())
}
