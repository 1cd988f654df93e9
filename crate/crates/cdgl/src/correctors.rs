//! The degree-2 correctors `sigma` and `tau` whose boundaries measure how
//! far the `•` product is from the naive conjugation law, together with the
//! closed formulas for multiplying by cycles and for translating by one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::differential::Derivation;
use crate::error::{Error, Result};
use crate::series::{ad_series, CoefficientTable};
use crate::Rat;

fn require_degree_one(x: &Element) -> Result<()> {
    if !x.scalar().is_zero() {
        return Err(Error::NonzeroScalar(x.scalar().to_string()));
    }
    if !x.words_homogeneous_of(1) {
        return Err(Error::NotHomogeneous { expected: 1 });
    }
    Ok(())
}

/// `sigma(x, y) = sum_{i,j >= 0} ad_a^i ad_x ad_a^j (y) / (i+j+2)!` with
/// `a = d(x)`; a degree-2 element whose lowest term is `[x, y] / 2`.
///
/// Each `ad` raises word length by at least one, so only `i + j <= N - 2`
/// contributes and the double series is exact at truncation.
pub fn sigma(d: &Derivation, x: &Element, y: &Element) -> Result<Element> {
    require_degree_one(x)?;
    require_degree_one(y)?;
    let a = d.apply(x)?;
    let n = x.context().truncation();
    let mut factorials = vec![BigInt::one(); n + 3];
    for m in 1..factorials.len() {
        let prev = factorials[m - 1].clone();
        factorials[m] = prev * BigInt::from(m as u64);
    }
    let mut out = Element::zero(x.context());
    if n < 2 {
        return Ok(out);
    }
    // inner_j = ad_x (ad_a^j (y))
    let mut ad_a_j = y.clone();
    for j in 0..=(n - 2) {
        if j > 0 {
            ad_a_j = a.bracket(&ad_a_j)?;
        }
        if ad_a_j.is_zero() {
            break;
        }
        let mut term = x.bracket(&ad_a_j)?;
        for i in 0..=(n - 2 - j) {
            if term.is_zero() {
                break;
            }
            let coeff = Rat::new(BigInt::one(), factorials[i + j + 2].clone());
            out = &out + &term.scale(&coeff);
            term = a.bracket(&term)?;
        }
    }
    Ok(out)
}

/// `tau(x, y) = xi(ad_{a*b*a^{-1}})(sigma(x, y))` where `a = d(x)`,
/// `b = d(y)`. The conjugated exponent `a*b*a^{-1}` is computed as
/// `e^{ad_a}(b)`, which agrees with the BCH route. When `b = 0` the series
/// collapses and `tau = sigma`.
pub fn tau(d: &Derivation, x: &Element, y: &Element) -> Result<Element> {
    let s = sigma(d, x, y)?;
    let a = d.apply(x)?;
    let b = d.apply(y)?;
    let exponent = crate::bch::conjugate_by_exp(&a, &b)?;
    let n = x.context().truncation();
    let xi = CoefficientTable::xi(n);
    ad_series(xi.values(), &exponent, &s)
}

/// Both correctors for one pair of inputs.
#[derive(Debug, Clone)]
pub struct CorrectorPair {
    pub sigma: Element,
    pub tau: Element,
}

pub fn corrector_pair(d: &Derivation, x: &Element, y: &Element) -> Result<CorrectorPair> {
    Ok(CorrectorPair {
        sigma: sigma(d, x, y)?,
        tau: tau(d, x, y)?,
    })
}

/// Closed form for `x • y` when `y` is a cycle:
/// `x + sum_n (-1)^n B_n / (n+1)! ad_a^n (y)` with `a = d(x)`.
pub fn bullet_cycle_right(d: &Derivation, x: &Element, y: &Element) -> Result<Element> {
    require_degree_one(x)?;
    require_degree_one(y)?;
    if !d.apply(y)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let a = d.apply(x)?;
    let n = x.context().truncation();
    let f = CoefficientTable::f(n);
    Ok(x + &ad_series(f.values(), &a, y)?)
}

/// Closed form for `x • y` when `x` is a cycle:
/// `y + sum_n B_n / (n+1)! ad_b^n (x)` with `b = d(y)`.
pub fn bullet_cycle_left(d: &Derivation, x: &Element, y: &Element) -> Result<Element> {
    require_degree_one(x)?;
    require_degree_one(y)?;
    if !d.apply(x)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let b = d.apply(y)?;
    let n = x.context().truncation();
    // B_n / (n+1)! = (-1)^n f_n
    let coeffs: Vec<Rat> = CoefficientTable::f(n)
        .values()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    Ok(y + &ad_series(&coeffs, &b, x)?)
}

/// Solves `x • ? = x + c` for a cycle `c`: the answer is
/// `xi(ad_a)(c)` with `a = d(x)`, itself a cycle.
pub fn solve_translation(d: &Derivation, x: &Element, c: &Element) -> Result<Element> {
    require_degree_one(x)?;
    require_degree_one(c)?;
    if !d.apply(c)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let a = d.apply(x)?;
    let n = x.context().truncation();
    let xi = CoefficientTable::xi(n);
    ad_series(xi.values(), &a, c)
}
