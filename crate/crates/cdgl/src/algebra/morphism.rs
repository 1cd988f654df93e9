//! Generator-substitution homomorphisms between contexts.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::context::{require_same_context, AlgebraContext};
use crate::algebra::element::Element;
use crate::differential::Derivation;
use crate::error::{Error, Result};

/// A homomorphism of truncated tensor algebras determined by generator
/// images. Images must be degree-homogeneous of the generator's degree, have
/// zero scalar part, and consist of words of length at least 1, so the map
/// preserves the word-length filtration and source truncation suffices for
/// target precision.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<AlgebraContext>,
    target: Arc<AlgebraContext>,
    images: Vec<Element>,
}

impl Morphism {
    /// Builds a morphism from `(generator name, image)` pairs. Every source
    /// generator needs an image; zero images are allowed.
    pub fn new<S: AsRef<str>>(
        source: &Arc<AlgebraContext>,
        target: &Arc<AlgebraContext>,
        images: &[(S, Element)],
    ) -> Result<Self> {
        if source.truncation() != target.truncation() {
            return Err(Error::TruncationMismatch {
                from: source.truncation(),
                to: target.truncation(),
            });
        }
        let mut by_index: Vec<Option<Element>> = vec![None; source.generator_count()];
        for (name, image) in images {
            let name = name.as_ref();
            let idx = source
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            require_same_context(image.context(), target, "morphism image")?;
            let expected = source.generator(idx).degree();
            if !image.scalar().is_zero() {
                return Err(Error::ImageScalar {
                    generator: name.to_string(),
                });
            }
            if !image.words_homogeneous_of(expected) {
                return Err(Error::ImageDegree {
                    generator: name.to_string(),
                    expected,
                });
            }
            by_index[idx as usize] = Some(image.clone());
        }
        let mut resolved = Vec::with_capacity(by_index.len());
        for (i, img) in by_index.into_iter().enumerate() {
            match img {
                Some(e) => resolved.push(e),
                None => {
                    return Err(Error::UnknownGenerator(format!(
                        "no image given for `{}`",
                        source.generator(i as u16).name()
                    )))
                }
            }
        }
        Ok(Morphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images: resolved,
        })
    }

    /// The identity morphism of a context.
    pub fn identity(ctx: &Arc<AlgebraContext>) -> Self {
        let images = (0..ctx.generator_count() as u16)
            .map(|i| Element::generator(ctx, ctx.generator(i).name()).expect("generator exists"))
            .collect();
        Morphism {
            source: Arc::clone(ctx),
            target: Arc::clone(ctx),
            images,
        }
    }

    pub fn source(&self) -> &Arc<AlgebraContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraContext> {
        &self.target
    }

    pub fn image(&self, index: u16) -> &Element {
        &self.images[index as usize]
    }

    /// Applies the morphism: each word maps to the product of its letter
    /// images, truncated in the target. Consecutive words share prefix
    /// products, and partial products whose shortest word cannot be extended
    /// to length `N` by the remaining letters are pruned early.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        require_same_context(x.context(), &self.source, "morphism argument")?;
        let n = self.target.truncation();
        let mut out = Element::from_scalar(&self.target, x.scalar().clone());

        // Stack of partial products for the current word prefix.
        let mut prefix: Vec<Element> = Vec::new();
        let mut prev: Vec<u16> = Vec::new();

        for (word, coeff) in x.terms() {
            let letters = word.letters();
            let mut common = 0;
            while common < prefix.len()
                && common < letters.len()
                && prev.get(common) == Some(&letters[common])
            {
                common += 1;
            }
            prefix.truncate(common);
            prev.truncate(common);
            while prefix.len() < letters.len() {
                let pos = prefix.len();
                let img = &self.images[letters[pos] as usize];
                let remaining = letters.len() - pos - 1;
                let acc = match prefix.last() {
                    None => img.clone(),
                    Some(p) => p.mul(img)?,
                };
                // Every remaining letter contributes at least one more letter
                // to each word, so anything longer than N - remaining is dead.
                let acc = if remaining > 0 && n >= remaining {
                    prune_longer_than(acc, n - remaining)
                } else {
                    acc
                };
                prefix.push(acc);
                prev.push(letters[pos]);
            }
            out.accumulate(prefix.last().expect("nonempty word"), coeff);
        }
        Ok(out)
    }
}

fn prune_longer_than(x: Element, max_len: usize) -> Element {
    if x.max_word_length().is_none_or(|m| m <= max_len) {
        return x;
    }
    let ctx = x.context().clone();
    let mut out = Element::from_scalar(&ctx, x.scalar().clone());
    for (w, c) in x.terms() {
        if w.len() > max_len {
            break;
        }
        out.add_word(w.clone(), c.clone());
    }
    out
}

/// Report from checking whether a morphism commutes with differentials.
#[derive(Debug, Clone)]
pub struct ChainMapReport {
    /// Generators where `m(d_src(g)) != d_tgt(m(g))`, with the lowest word
    /// length at which the two sides differ (`None` when they differ in the
    /// scalar part).
    pub failures: Vec<(String, Option<usize>)>,
}

impl ChainMapReport {
    pub fn is_chain_map(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `m(d_src(g)) = d_tgt(m(g))` on every source generator, up to
/// truncation, and reports each generator that fails.
pub fn validate_chain_morphism(
    m: &Morphism,
    d_src: &Derivation,
    d_tgt: &Derivation,
) -> Result<ChainMapReport> {
    require_same_context(d_src.context(), m.source(), "source differential")?;
    require_same_context(d_tgt.context(), m.target(), "target differential")?;
    let mut failures = Vec::new();
    for i in 0..m.source().generator_count() as u16 {
        let g = Element::generator(m.source(), m.source().generator(i).name())?;
        let lhs = m.apply(&d_src.apply(&g)?)?;
        let rhs = d_tgt.apply(&m.apply(&g)?)?;
        if lhs != rhs {
            let diff = &lhs - &rhs;
            let at = diff.min_word_length();
            failures.push((m.source().generator(i).name().to_string(), at));
        }
    }
    Ok(ChainMapReport { failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::context::Word;
    use crate::frac;

    fn ctx2(n: usize) -> Arc<AlgebraContext> {
        AlgebraContext::new(&[("u1", 1), ("u2", 1), ("v1", 0), ("v2", 0)], n).unwrap()
    }

    #[test]
    fn identity_morphism_is_identity() {
        let ctx = ctx2(5);
        let m = Morphism::identity(&ctx);
        let v1 = Element::generator(&ctx, "v1").unwrap();
        let v2 = Element::generator(&ctx, "v2").unwrap();
        let x = &v1.bracket(&v2).unwrap() + &v1;
        assert_eq!(m.apply(&x).unwrap(), x);
    }

    #[test]
    fn folding_morphism_kills_the_bch_product() {
        // u1 -> u, u2 -> -u, v1 -> v, v2 -> -v sends v1 * v2 to v * (-v) = 0
        let src = ctx2(5);
        let tgt = AlgebraContext::new(&[("u", 1), ("v", 0)], 5).unwrap();
        let u = Element::generator(&tgt, "u").unwrap();
        let v = Element::generator(&tgt, "v").unwrap();
        let m = Morphism::new(
            &src,
            &tgt,
            &[
                ("u1", u.clone()),
                ("u2", -&u),
                ("v1", v.clone()),
                ("v2", -&v),
            ],
        )
        .unwrap();
        let v1 = Element::generator(&src, "v1").unwrap();
        let v2 = Element::generator(&src, "v2").unwrap();
        let bch = crate::bch::bch(&v1, &v2).unwrap();
        assert!(m.apply(&bch).unwrap().is_zero());
        // plain concatenation picture
        let prod = v1.mul(&v2).unwrap();
        let expected = v.mul(&-&v).unwrap();
        assert_eq!(m.apply(&prod).unwrap(), expected);
    }

    #[test]
    fn chain_morphism_validation() {
        use crate::differential::UniversalAlgebra;
        // the substitution u1 -> x, u2 -> y, v_i -> d(image) is a chain map
        let alg = UniversalAlgebra::new(2, 5).unwrap();
        let d = alg.differential();
        let x = &alg.u(1) + &alg.u(1).bracket(&alg.v(2)).unwrap();
        let y = alg.u(2);
        let m = Morphism::new(
            alg.context(),
            alg.context(),
            &[
                ("u1", x.clone()),
                ("u2", y.clone()),
                ("v1", d.apply(&x).unwrap()),
                ("v2", d.apply(&y).unwrap()),
            ],
        )
        .unwrap();
        let report = validate_chain_morphism(&m, d, d).unwrap();
        assert!(report.is_chain_map(), "{:?}", report.failures);

        // corrupt one image: the report names the offending generator
        let bad = Morphism::new(
            alg.context(),
            alg.context(),
            &[
                ("u1", x.clone()),
                ("u2", y),
                ("v1", alg.v(1)),
                ("v2", d.apply(&x).unwrap()),
            ],
        )
        .unwrap();
        let report = validate_chain_morphism(&bad, d, d).unwrap();
        assert!(!report.is_chain_map());
        assert!(report.failures.iter().any(|(g, _)| g == "u1" || g == "u2"));
    }

    #[test]
    fn image_validation() {
        let src = ctx2(5);
        let tgt = ctx2(5);
        let v1 = Element::generator(&tgt, "v1").unwrap();
        // degree mismatch: u1 has degree 1, image degree 0
        let err = Morphism::new(
            &src,
            &tgt,
            &[
                ("u1", v1.clone()),
                ("u2", v1.clone()),
                ("v1", v1.clone()),
                ("v2", v1.clone()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ImageDegree { .. }));
        // scalar part forbidden
        let with_scalar = &Element::one(&tgt) + &v1;
        let err = Morphism::new(
            &src,
            &tgt,
            &[
                ("u1", Element::zero(&tgt)),
                ("u2", Element::zero(&tgt)),
                ("v1", with_scalar),
                ("v2", v1),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ImageScalar { .. }));
    }

    #[test]
    fn morphism_respects_product_and_bracket() {
        let src = ctx2(6);
        let tgt = ctx2(6);
        let u1 = Element::generator(&tgt, "u1").unwrap();
        let u2 = Element::generator(&tgt, "u2").unwrap();
        let v1 = Element::generator(&tgt, "v1").unwrap();
        let v2 = Element::generator(&tgt, "v2").unwrap();
        let m = Morphism::new(
            &src,
            &tgt,
            &[
                ("u1", &u1 + &u2),
                ("u2", u2.clone()),
                ("v1", v1.bracket(&v2).unwrap()),
                ("v2", &v2 + &v1.scale(&frac(2, 3))),
            ],
        )
        .unwrap();
        let x = &Element::generator(&src, "v1").unwrap()
            + &Element::from_word(&src, Word::new(vec![3u16, 2]), frac(1, 2));
        let xs =
            &Element::generator(&src, "v2").unwrap() + &Element::generator(&src, "u1").unwrap();
        let lhs = m.apply(&x.bracket(&xs).unwrap()).unwrap();
        let rhs = m
            .apply(&x)
            .unwrap()
            .bracket(&m.apply(&xs).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        let lhs = m.apply(&x.mul(&xs).unwrap()).unwrap();
        let rhs = m.apply(&x).unwrap().mul(&m.apply(&xs).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
