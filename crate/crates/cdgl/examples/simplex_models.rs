//! Building and verifying the Lie models of the simplices.
//!
//! ```bash
//! cargo run --example simplex_models
//! ```

use cdgl::simplex::{top_boundary_phi, verify_model_with, SimplexModel};

fn main() -> cdgl::Result<()> {
    // the interval: Bernoulli series differential on the edge
    let interval = SimplexModel::build(1, 4)?;
    println!("interval edge differential at N=4:");
    println!("  {}", interval.differential().image_of("a01")?);

    // the triangle: the perturbed boundary of the top generator is the BCH
    // product of the edge chain
    let triangle = SimplexModel::build(2, 4)?;
    let phi = top_boundary_phi(&triangle)?;
    println!(
        "triangle perturbed boundary, linear part: {}",
        phi.component(1)?
    );

    // dimensions 0..3 verify completely
    for (n, trunc) in [(0usize, 6usize), (1, 6), (2, 5), (3, 4)] {
        let model = SimplexModel::build(n, trunc)?;
        let report = verify_model_with(&model, 2)?;
        println!(
            "model dim {n} at N={trunc}: verified {}",
            if report.verified() { "yes" } else { "NO" }
        );
    }

    // dimension 4: the construction is total and the verifier reports the
    // honest state of the stated top boundary
    let model = SimplexModel::build(4, 3)?;
    let report = verify_model_with(&model, 2)?;
    println!("model dim 4 at N=3:");
    println!("{report}");
    Ok(())
}
