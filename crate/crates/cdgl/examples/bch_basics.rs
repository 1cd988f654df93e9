//! Baker-Campbell-Hausdorff products on degree-0 elements.
//!
//! ```bash
//! cargo run --example bch_basics
//! ```

use cdgl::algebra::{AlgebraContext, Element};
use cdgl::bch::{bch, bch_many};
use cdgl::frontend::{format_element, Style};
use cdgl::series::{dynkin_project, is_lie};

fn main() -> cdgl::Result<()> {
    // two commuting-in-name-only generators, words kept up to length 5
    let ctx = AlgebraContext::new(&[("x", 0), ("y", 0)], 5)?;
    let x = Element::generator(&ctx, "x")?;
    let y = Element::generator(&ctx, "y")?;

    let p = bch(&x, &y)?;
    println!("x * y up to length 3:");
    for len in 1..=3 {
        println!("  length {len}: {}", p.component(len)?);
    }
    println!("as nested brackets:");
    println!("  {}", format_element(&p.component(3)?, Style::Brackets)?);

    // the product is a Lie element: the left-bracketing projection fixes it
    println!("bch(x, y) is Lie: {}", is_lie(&p)?);
    let bare = x.mul(&y)?;
    println!("the bare word x.y is Lie: {}", is_lie(&bare)?);
    println!(
        "its projection: {}",
        format_element(&dynkin_project(&bare)?, Style::Brackets)?
    );

    // group structure: 0 is neutral, negation is the inverse
    println!("x * 0 = {}", bch(&x, &Element::zero(&ctx))?);
    println!("x * (-x) = {}", bch(&x, &-&x)?);

    // associativity of the BCH product, checked both ways
    let left = bch(&bch(&x, &y)?, &x)?;
    let right = bch(&x, &bch(&y, &x)?)?;
    let flat = bch_many(&[&x, &y, &x])?;
    println!(
        "BCH is associative at truncation: {}",
        left == flat && right == flat
    );
    Ok(())
}
