//! Sparse exact-rational elements of the truncated tensor algebra.
//!
//! An [`Element`] is a rational linear combination of tensor words plus an
//! optional scalar (unit) part. The free graded Lie algebra embeds in the
//! tensor algebra in characteristic 0, so Lie elements are stored expanded:
//! brackets normalize to word combinations and equality is coefficient-wise.
//! All words longer than the context truncation `N` are dropped, which keeps
//! every operation exact below `N`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::context::{require_same_context, AlgebraContext, Word};
use crate::error::{Error, Result};
use crate::Rat;

/// Element of the truncated tensor algebra over a context.
///
/// Invariants: no stored coefficient is zero, every word length is at most
/// `N`, and Lie-algebra elements have zero scalar part. Terms iterate in the
/// canonical length-lexicographic word order.
#[derive(Debug, Clone)]
pub struct Element {
    ctx: Arc<AlgebraContext>,
    scalar: Rat,
    terms: BTreeMap<Word, Rat>,
}

impl Element {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        Element {
            ctx: Arc::clone(ctx),
            scalar: Rat::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Element::from_scalar(ctx, Rat::one())
    }

    pub fn from_scalar(ctx: &Arc<AlgebraContext>, scalar: Rat) -> Self {
        Element {
            ctx: Arc::clone(ctx),
            scalar,
            terms: BTreeMap::new(),
        }
    }

    /// The element represented by a single named generator.
    pub fn generator(ctx: &Arc<AlgebraContext>, name: &str) -> Result<Self> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Element::from_word(ctx, Word::single(idx), Rat::one()))
    }

    /// A single word with a coefficient; words beyond the truncation give 0.
    pub fn from_word(ctx: &Arc<AlgebraContext>, word: Word, coeff: Rat) -> Self {
        let mut e = Element::zero(ctx);
        e.add_word(word, coeff);
        e
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &Word) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    /// Merges one word into the term map, pruning zeros and truncating.
    pub(crate) fn add_word(&mut self, word: Word, coeff: Rat) {
        if coeff.is_zero() || word.len() > self.ctx.truncation() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coeff * rhs` into `self` (contexts must already agree).
    pub(crate) fn accumulate(&mut self, rhs: &Element, coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        self.scalar += &rhs.scalar * coeff;
        for (w, c) in &rhs.terms {
            self.add_word(w.clone(), c * coeff);
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, coeff: &Rat) -> Element {
        if coeff.is_zero() {
            return Element::zero(&self.ctx);
        }
        Element {
            ctx: Arc::clone(&self.ctx),
            scalar: &self.scalar * coeff,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * coeff))
                .collect(),
        }
    }

    /// Tensor-algebra (concatenation) product. Words longer than `N` are
    /// dropped; scalars multiply through.
    pub fn mul(&self, rhs: &Element) -> Result<Element> {
        require_same_context(&self.ctx, &rhs.ctx, "product of elements")?;
        let n = self.ctx.truncation();
        let mut out = Element::zero(&self.ctx);
        out.scalar = &self.scalar * &rhs.scalar;
        if !rhs.scalar.is_zero() {
            for (w, c) in &self.terms {
                out.add_word(w.clone(), c * &rhs.scalar);
            }
        }
        if !self.scalar.is_zero() {
            for (w, c) in &rhs.terms {
                out.add_word(w.clone(), c * &self.scalar);
            }
        }
        for (wl, cl) in &self.terms {
            if wl.len() >= n {
                continue;
            }
            for (wr, cr) in &rhs.terms {
                if wl.len() + wr.len() > n {
                    break; // rhs terms are sorted by length first
                }
                out.add_word(wl.concat(wr), cl * cr);
            }
        }
        Ok(out)
    }

    /// Graded commutator `[x, y] = xy - (-1)^{|x||y|} yx`, computed per
    /// homogeneous word pair and extended bilinearly. Scalar parts commute
    /// with everything and contribute nothing.
    pub fn bracket(&self, rhs: &Element) -> Result<Element> {
        require_same_context(&self.ctx, &rhs.ctx, "bracket of elements")?;
        let n = self.ctx.truncation();
        let mut out = Element::zero(&self.ctx);
        for (wl, cl) in &self.terms {
            if wl.len() >= n {
                continue;
            }
            let dl = self.ctx.word_degree(wl);
            for (wr, cr) in &rhs.terms {
                if wl.len() + wr.len() > n {
                    break;
                }
                let dr = self.ctx.word_degree(wr);
                let c = cl * cr;
                out.add_word(wl.concat(wr), c.clone());
                let sign_negative = (dl * dr).rem_euclid(2) == 1;
                // -(-1)^{|x||y|} yx
                out.add_word(wr.concat(wl), if sign_negative { c } else { -c });
            }
        }
        Ok(out)
    }

    /// The homogeneous-length piece of the element; the scalar part is not a
    /// word and belongs to no length component.
    pub fn component(&self, word_length: usize) -> Result<Element> {
        let n = self.ctx.truncation();
        if word_length < 1 || word_length > n {
            return Err(Error::LengthOutOfRange(word_length, n));
        }
        let mut out = Element::zero(&self.ctx);
        for (w, c) in &self.terms {
            if w.len() == word_length {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Length of the shortest word present, if any.
    pub fn min_word_length(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    /// Largest word length present, if any.
    pub fn max_word_length(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// True when every word has degree `q` (vacuously true without words).
    pub fn words_homogeneous_of(&self, q: i64) -> bool {
        self.terms.keys().all(|w| self.ctx.word_degree(w) == q)
    }

    /// The common degree of all words, if the element is homogeneous and has
    /// at least one word.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = self.ctx.word_degree(it.next()?);
        for w in it {
            if self.ctx.word_degree(w) != first {
                return None;
            }
        }
        Some(first)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        crate::algebra::context::same_context(&self.ctx, &other.ctx)
            && self.scalar == other.scalar
            && self.terms == other.terms
    }
}

impl Eq for Element {}

fn assert_same(a: &Element, b: &Element, op: &str) {
    assert!(
        crate::algebra::context::same_context(&a.ctx, &b.ctx),
        "{op} of elements from different contexts"
    );
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert_same(self, rhs, "sum");
        let mut out = self.clone();
        out.scalar += &rhs.scalar;
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert_same(self, rhs, "difference");
        let mut out = self.clone();
        out.scalar -= &rhs.scalar;
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Rat::one())
    }
}

impl Mul<&Rat> for &Element {
    type Output = Element;

    fn mul(self, rhs: &Rat) -> Element {
        self.scale(rhs)
    }
}

impl fmt::Display for Element {
    /// Canonical words-style rendering, e.g. `1/2*v1.v2 - 1/2*v2.v1`.
    /// Reparsing the output reproduces the element exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.scalar.is_zero() {
            write!(f, "{}", self.scalar)?;
            first = false;
        }
        for (w, c) in &self.terms {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut firstl = true;
            for &l in w.letters() {
                if !firstl {
                    write!(f, ".")?;
                }
                write!(f, "{}", self.ctx.generator(l).name())?;
                firstl = false;
            }
        }
        Ok(())
    }
}
