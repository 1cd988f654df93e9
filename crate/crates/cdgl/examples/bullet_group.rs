//! The product on degree-1 elements that integrates the BCH product:
//! `d(x • y) = dx * dy`.
//!
//! ```bash
//! cargo run --example bullet_group
//! ```

use cdgl::bch::{bch, bullet, bullet_many, bullet_universal};
use cdgl::differential::UniversalAlgebra;
use cdgl::sampling::ElementSampler;

fn main() -> cdgl::Result<()> {
    // the universal algebra on two pairs u_i (degree 1), v_i = d(u_i)
    let alg = UniversalAlgebra::new(2, 5)?;
    let d = alg.differential();

    let b = bullet_universal(2, 5)?;
    println!("u1 • u2 up to length 3:");
    for len in 1..=3 {
        println!("  length {len}: {}", b.component(len)?);
    }

    // d(u1 • u2) recovers the BCH product of the boundaries
    let boundary = d.apply(&b)?;
    println!(
        "d(u1 • u2) = v1 * v2: {}",
        boundary == bch(&alg.v(1), &alg.v(2))?
    );

    // identity, inverse, and multiplication of cycles
    let mut sampler = ElementSampler::new(alg.context(), 7);
    let alpha = sampler.homogeneous(1, 4, 4);
    let zero = cdgl::Element::zero(alg.context());
    println!("alpha • 0 = alpha: {}", bullet(d, &alpha, &zero)? == alpha);
    println!(
        "alpha • (-alpha) = 0: {}",
        bullet(d, &alpha, &-&alpha)?.is_zero()
    );
    let x = d.apply(&alg.u(1).bracket(&alg.u(2))?)?;
    let y = d.apply(&alg.u(1).bracket(&alg.u(1))?)?;
    println!(
        "cycles multiply by adding: {}",
        bullet(d, &x, &y)? == &x + &y
    );

    // chains are flattened products through one universal algebra; binary
    // folds are NOT the same operation from word length 3 on
    let alg3 = UniversalAlgebra::new(3, 5)?;
    let d3 = alg3.differential();
    let (u1, u2, u3) = (alg3.u(1), alg3.u(2), alg3.u(3));
    let flat = bullet_many(d3, &[u1.clone(), u2.clone(), u3.clone()])?;
    let folded = bullet(d3, &bullet(d3, &u1, &u2)?, &u3)?;
    let diff = &folded - &flat;
    println!(
        "flattened triple == left fold: {} (difference starts at length {:?})",
        folded == flat,
        diff.min_word_length()
    );
    println!(
        "both integrate the same BCH product: {}",
        d3.apply(&flat)? == d3.apply(&folded)?
    );
    Ok(())
}
