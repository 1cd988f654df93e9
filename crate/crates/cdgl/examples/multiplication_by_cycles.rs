//! Closed formulas for multiplying by a cycle, and translating by one.
//!
//! ```bash
//! cargo run --example multiplication_by_cycles
//! ```

use cdgl::algebra::{AlgebraContext, Element};
use cdgl::bch::bullet;
use cdgl::correctors::{bullet_cycle_left, bullet_cycle_right, solve_translation};
use cdgl::differential::Derivation;

fn main() -> cdgl::Result<()> {
    // two differential pairs plus a degree-1 cycle generator w
    let ctx = AlgebraContext::new(&[("u1", 1), ("u2", 1), ("w", 1), ("v1", 0), ("v2", 0)], 6)?;
    let d = Derivation::new(
        &ctx,
        -1,
        &[
            ("u1", Element::generator(&ctx, "v1")?),
            ("u2", Element::generator(&ctx, "v2")?),
            ("w", Element::zero(&ctx)),
            ("v1", Element::zero(&ctx)),
            ("v2", Element::zero(&ctx)),
        ],
    )?;
    let alpha = Element::generator(&ctx, "u1")?;
    let w = Element::generator(&ctx, "w")?;

    // multiplying a cycle on the right: a Bernoulli series in ad_{d(alpha)}
    let closed = bullet_cycle_right(&d, &alpha, &w)?;
    let general = bullet(&d, &alpha, &w)?;
    println!("closed form (right cycle) up to length 3:");
    for len in 1..=3 {
        println!("  length {len}: {}", closed.component(len)?);
    }
    println!("matches the general product: {}", closed == general);

    // and on the left
    let closed = bullet_cycle_left(&d, &w, &alpha)?;
    let general = bullet(&d, &w, &alpha)?;
    println!("left-cycle closed form matches: {}", closed == general);

    // translation: find beta with alpha • beta = alpha + gamma
    let gamma = Element::generator(&ctx, "v1")?.bracket(&w)?;
    println!("gamma is a cycle: {}", d.apply(&gamma)?.is_zero());
    let beta = solve_translation(&d, &alpha, &gamma)?;
    println!("beta = xi(ad_a)(gamma) up to length 3:");
    for len in 1..=3 {
        println!("  length {len}: {}", beta.component(len)?);
    }
    println!(
        "alpha • beta = alpha + gamma: {}",
        bullet(&d, &alpha, &beta)? == &alpha + &gamma
    );
    Ok(())
}
