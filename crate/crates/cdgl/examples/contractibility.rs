//! Per-block exactness of the universal algebras: the differential pairing
//! `u_i -> v_i` kills all homology in every (word length, degree) block.
//!
//! ```bash
//! cargo run --example contractibility
//! ```

use cdgl::algebra::{AlgebraContext, Element};
use cdgl::differential::{exactness_report, Derivation, DglPresentation, UniversalAlgebra};

fn main() -> cdgl::Result<()> {
    for k in [1usize, 2] {
        let alg = UniversalAlgebra::new(k, 5)?;
        let pres = DglPresentation::new(alg.context(), alg.differential().clone())?;
        let report = exactness_report(&pres, 5)?;
        println!("universal algebra on {k} pair(s), blocks through length 5:");
        println!("{report}");
        println!();
    }

    // negative control: one generator with zero differential has homology
    let ctx = AlgebraContext::new(&[("x", 0)], 4)?;
    let zero_d = Derivation::new(&ctx, -1, &[("x", Element::zero(&ctx))])?;
    let pres = DglPresentation::new(&ctx, zero_d)?;
    let report = exactness_report(&pres, 3)?;
    println!("free generator with d = 0:");
    println!("{report}");
    Ok(())
}
