//! The Baker-Campbell-Hausdorff product on degree-0 elements and the `•`
//! product on degree-1 elements, defined through the universal contractible
//! algebra on paired generators: `u_1 • … • u_k = theta_tilde(v_1 * … * v_k)`
//! pushed forward along the morphism sending each `u_i` to the factor and
//! each `v_i` to its differential. The `•` product takes the differential as
//! an explicit argument so that it can be formed with respect to perturbed
//! differentials as well.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::algebra::{Element, Morphism};
use crate::differential::{theta_tilde, Derivation, UniversalAlgebra};
use crate::error::{Error, Result};
use crate::series::{exp, log, CoefficientTable};

fn require_degree(x: &Element, q: i64) -> Result<()> {
    if !x.scalar().is_zero() {
        return Err(Error::NonzeroScalar(x.scalar().to_string()));
    }
    if !x.words_homogeneous_of(q) {
        return Err(Error::NotHomogeneous { expected: q });
    }
    Ok(())
}

/// The BCH product `x * y = log(exp(x) exp(y))` of degree-0 elements,
/// exact at the truncation order.
pub fn bch(x: &Element, y: &Element) -> Result<Element> {
    require_degree(x, 0)?;
    require_degree(y, 0)?;
    log(&exp(x)?.mul(&exp(y)?)?)
}

/// The iterated BCH product `x_1 * x_2 * … * x_k`; the empty product is 0.
pub fn bch_many(xs: &[&Element]) -> Result<Element> {
    match xs.split_first() {
        None => Err(Error::TooFewFactors { needed: 1 }),
        Some((first, rest)) => {
            require_degree(first, 0)?;
            let mut p = exp(first)?;
            for x in rest {
                require_degree(x, 0)?;
                p = p.mul(&exp(x)?)?;
            }
            log(&p)
        }
    }
}

/// Conjugation by an exponential: `e^{ad_x}(y) = sum_n ad_x^n(y) / n!`.
pub fn conjugate_by_exp(x: &Element, y: &Element) -> Result<Element> {
    require_degree(x, 0)?;
    let n = x.context().truncation();
    let table = CoefficientTable::exponential(n);
    crate::series::ad_series(&table, x, y)
}

/// The universal `•` product `theta_tilde(v_1 * … * v_k)` in the universal
/// algebra on `k` pairs, at the given truncation. Results are cached per
/// `(k, N)`; the cache is semantically invisible.
pub fn bullet_universal(k: usize, truncation: usize) -> Result<Element> {
    Ok((*bullet_universal_cached(k, truncation)?).clone())
}

/// Cache-backed variant used internally to avoid cloning large elements.
fn bullet_universal_cached(k: usize, truncation: usize) -> Result<Arc<Element>> {
    if k < 2 {
        return Err(Error::TooFewFactors { needed: 2 });
    }
    type Cache = Mutex<HashMap<(usize, usize), Arc<Element>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(k, truncation)) {
        return Ok(Arc::clone(hit));
    }
    let alg = UniversalAlgebra::new(k, truncation)?;
    let vs: Vec<Element> = (1..=k).map(|i| alg.v(i)).collect();
    let refs: Vec<&Element> = vs.iter().collect();
    let product = bch_many(&refs)?;
    let value = Arc::new(theta_tilde(alg.theta(), &product)?);
    let mut guard = cache.lock().unwrap();
    let entry = guard
        .entry((k, truncation))
        .or_insert_with(|| Arc::clone(&value));
    Ok(Arc::clone(entry))
}

/// The `•` product of two degree-1 elements with respect to a differential
/// `d`: the image of the universal product under `u_1 -> x`, `u_2 -> y`,
/// `v_i -> d(of the factor)`. Satisfies `d(x • y) = d(x) * d(y)`.
pub fn bullet(d: &Derivation, x: &Element, y: &Element) -> Result<Element> {
    bullet_many(d, &[x.clone(), y.clone()])
}

/// The `k`-fold `•` product through the universal element
/// `theta_tilde(v_1 * … * v_k)`. An empty list gives 0 by convention and a
/// single element passes through unchanged.
pub fn bullet_many(d: &Derivation, factors: &[Element]) -> Result<Element> {
    let ctx = d.context();
    assert_eq!(d.degree(), -1, "bullet products need a differential");
    match factors.len() {
        0 => return Ok(Element::zero(ctx)),
        1 => {
            require_degree(&factors[0], 1)?;
            crate::algebra::require_same_context(factors[0].context(), ctx, "bullet factor")?;
            return Ok(factors[0].clone());
        }
        _ => {}
    }
    let k = factors.len();
    let n = ctx.truncation();
    for x in factors {
        require_degree(x, 1)?;
        crate::algebra::require_same_context(x.context(), ctx, "bullet factor")?;
    }
    let alg = UniversalAlgebra::new(k, n)?;
    let universal = bullet_universal_cached(k, n)?;
    let mut images: Vec<(String, Element)> = Vec::with_capacity(2 * k);
    for (i, x) in factors.iter().enumerate() {
        images.push((format!("u{}", i + 1), x.clone()));
        images.push((format!("v{}", i + 1), d.apply(x)?));
    }
    let m = Morphism::new(alg.context(), ctx, &images)?;
    m.apply(&universal)
}

/// Group wrapper for the two truncation-complete group laws: the BCH
/// product on degree 0 and the `•` product on degree 1. The inverse of an
/// element is its negative for both.
#[derive(Debug, Clone)]
pub struct GroupElementView<'a> {
    differential: &'a Derivation,
    element: Element,
}

impl<'a> GroupElementView<'a> {
    pub fn new(differential: &'a Derivation, element: Element) -> Result<Self> {
        let q = match element.homogeneous_degree() {
            None if element.is_zero() => 0,
            None => return Err(Error::NotHomogeneous { expected: 0 }),
            Some(q) => q,
        };
        if q != 0 && q != 1 {
            return Err(Error::NotHomogeneous { expected: 0 });
        }
        Ok(GroupElementView {
            differential,
            element,
        })
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// Group law: BCH in degree 0, `•` in degree 1.
    pub fn mul(&self, rhs: &GroupElementView<'a>) -> Result<GroupElementView<'a>> {
        let degree = self
            .element
            .homogeneous_degree()
            .or(rhs.element.homogeneous_degree())
            .unwrap_or(0);
        let product = match degree {
            0 => bch(&self.element, &rhs.element)?,
            1 => bullet(self.differential, &self.element, &rhs.element)?,
            _ => return Err(Error::NotHomogeneous { expected: 1 }),
        };
        Ok(GroupElementView {
            differential: self.differential,
            element: product,
        })
    }

    /// The group inverse `x^{-1} = -x`.
    pub fn inverse(&self) -> GroupElementView<'a> {
        GroupElementView {
            differential: self.differential,
            element: -&self.element,
        }
    }
}
