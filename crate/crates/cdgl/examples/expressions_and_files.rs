//! Parsing element expressions and reading/writing the JSON formats.
//!
//! ```bash
//! cargo run --example expressions_and_files
//! ```

use cdgl::differential::UniversalAlgebra;
use cdgl::frontend::{
    deserialize_algebra, deserialize_element, format_element, parse_expression, serialize_algebra,
    serialize_element, Style,
};

fn main() -> cdgl::Result<()> {
    let alg = UniversalAlgebra::new(2, 4)?;
    let ctx = alg.context();
    let d = alg.differential();

    // expressions: words, brackets, rational scalars, calls
    for text in [
        "v1.v2 - 1/2*[v1,v2]",
        "bch(v1, v2)",
        "bullet(u1, u2)",
        "theta_tilde(bch(v1, v2))",
        "sigma(u1, u2)",
    ] {
        let value = parse_expression(text, ctx, Some(d))?;
        println!("{text}");
        println!("  = {}", format_element(&value, Style::Words)?);
    }

    // the canonical words rendering reparses to the same element
    let x = parse_expression("bullet(u1, u2)", ctx, Some(d))?;
    let text = format_element(&x, Style::Words)?;
    println!(
        "format then parse is the identity: {}",
        parse_expression(&text, ctx, None)? == x
    );

    // elements serialize with their context descriptor
    let json = serialize_element(&x);
    let (_, back) = deserialize_element(&json)?;
    println!("element file round trip: {}", back == x);

    // whole differential algebras are data
    let algebra_json = serialize_algebra(ctx, Some(d));
    let (ctx2, d2) = deserialize_algebra(&algebra_json, None)?;
    let d2 = d2.expect("differential stored");
    println!(
        "algebra file round trip: {}",
        (0..ctx2.generator_count() as u16).all(|i| d2.image(i) == d.image(i))
    );
    println!("first lines of the algebra file:");
    for line in algebra_json.lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}
