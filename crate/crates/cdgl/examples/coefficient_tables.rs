//! The exact coefficient sequences behind the series operators.
//!
//! ```bash
//! cargo run --example coefficient_tables
//! ```

use cdgl::series::{format_table_entry, CoefficientTable};
use cdgl::Rat;

fn main() {
    let k = 8;
    let bernoulli = CoefficientTable::bernoulli(k);
    let f = CoefficientTable::f(k);
    let eps = CoefficientTable::epsilon(k);
    let xi = CoefficientTable::xi(k);

    println!("Bernoulli numbers (B_1 = -1/2 convention):");
    for n in 0..=k {
        println!("  {}", format_table_entry(&bernoulli, n));
    }
    println!("f_n = (-1)^n B_n/(n+1)! and eps_n = 1/(n+1)!:");
    for n in 0..=4 {
        println!(
            "  {}   {}",
            format_table_entry(&f, n),
            format_table_entry(&eps, n)
        );
    }
    println!("A_n, the coefficients of the formal inverse 1/f:");
    for n in 0..=k {
        println!("  {}", format_table_entry(&xi, n));
    }

    // the defining identity of the inversion, checked exactly
    let exact = (1..=k).all(|n| {
        let mut acc = Rat::from_integer(0.into());
        for i in 0..=n {
            acc += &xi.values()[i] * &f.values()[n - i];
        }
        acc == Rat::from_integer(0.into())
    });
    println!("xi * f = 1 exactly through order {k}: {exact}");

    // A_4 is often quoted as -4/15829, which matches the first decimal
    // digits of the exact value but is a different rational number
    let quoted = cdgl::frac(-4, 15829);
    println!(
        "A_4 exact = {}, quoted -4/15829 equal: {}",
        xi.values()[4],
        xi.values()[4] == quoted
    );
}
