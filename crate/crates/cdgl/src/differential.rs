//! Graded derivations from generator images, differentials squaring to zero,
//! the scaled section of the differential in the universal contractible
//! algebras, perturbed differentials at Maurer-Cartan elements, and an
//! exactness checker working per word-length block.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{require_same_context, AlgebraContext, Element, Word};
use crate::error::{Error, Result};
use crate::Rat;

/// A degree-`k` derivation determined by generator images and extended by
/// the graded Leibniz rule `D(xy) = D(x) y + (-1)^{k |x|} x D(y)`.
#[derive(Debug, Clone)]
pub struct Derivation {
    ctx: Arc<AlgebraContext>,
    degree: i64,
    images: Vec<Element>,
}

impl Derivation {
    /// Builds a derivation; each image must be degree-homogeneous of degree
    /// `|g| + degree` with zero scalar part.
    pub fn new<S: AsRef<str>>(
        ctx: &Arc<AlgebraContext>,
        degree: i64,
        images: &[(S, Element)],
    ) -> Result<Self> {
        let mut by_index: Vec<Option<Element>> = vec![None; ctx.generator_count()];
        for (name, image) in images {
            let name = name.as_ref();
            let idx = ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            require_same_context(image.context(), ctx, "derivation image")?;
            let expected = ctx.generator(idx).degree() + degree;
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
                        ctx.generator(i as u16).name()
                    )))
                }
            }
        }
        Ok(Derivation {
            ctx: Arc::clone(ctx),
            degree,
            images: resolved,
        })
    }

    /// The zero derivation of a given degree.
    pub fn zero(ctx: &Arc<AlgebraContext>, degree: i64) -> Self {
        Derivation {
            ctx: Arc::clone(ctx),
            degree,
            images: vec![Element::zero(ctx); ctx.generator_count()],
        }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn image(&self, index: u16) -> &Element {
        &self.images[index as usize]
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        let idx = self
            .ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(&self.images[idx as usize])
    }

    /// Applies the derivation by the graded Leibniz rule. The scalar part of
    /// the argument contributes nothing. Words beyond the truncation order
    /// are dropped.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        require_same_context(x.context(), &self.ctx, "derivation argument")?;
        let n = self.ctx.truncation();
        let mut out = Element::zero(&self.ctx);
        for (word, coeff) in x.terms() {
            let letters = word.letters();
            let mut prefix_degree: i64 = 0;
            for (pos, &letter) in letters.iter().enumerate() {
                let image = &self.images[letter as usize];
                if !image.is_zero() {
                    let negative = (self.degree * prefix_degree).rem_euclid(2) == 1;
                    for (iw, ic) in image.terms() {
                        if letters.len() - 1 + iw.len() > n {
                            break;
                        }
                        let spliced = word.splice(pos, iw);
                        let c = coeff * ic;
                        out.add_word(spliced, if negative { -c } else { c });
                    }
                }
                prefix_degree += self.ctx.generator(letter).degree();
            }
        }
        Ok(out)
    }

    /// Replaces the image of one generator, returning a new derivation.
    pub fn with_image(&self, name: &str, image: Element) -> Result<Derivation> {
        let idx = self
            .ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let expected = self.ctx.generator(idx).degree() + self.degree;
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
        let mut images = self.images.clone();
        images[idx as usize] = image;
        Ok(Derivation {
            ctx: Arc::clone(&self.ctx),
            degree: self.degree,
            images,
        })
    }
}

/// A context together with a validated differential: a degree `-1`
/// derivation squaring to zero on every generator up to truncation.
#[derive(Debug, Clone)]
pub struct DglPresentation {
    ctx: Arc<AlgebraContext>,
    differential: Derivation,
}

impl DglPresentation {
    pub fn new(ctx: &Arc<AlgebraContext>, differential: Derivation) -> Result<Self> {
        require_same_context(differential.context(), ctx, "differential")?;
        assert_eq!(differential.degree(), -1, "differentials have degree -1");
        for i in 0..ctx.generator_count() as u16 {
            let g = Element::generator(ctx, ctx.generator(i).name())?;
            let dd = differential.apply(&differential.apply(&g)?)?;
            if !dd.is_zero() {
                return Err(Error::DifferentialSquare {
                    generator: ctx.generator(i).name().to_string(),
                });
            }
        }
        Ok(DglPresentation {
            ctx: Arc::clone(ctx),
            differential,
        })
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }
}

/// The free differential algebra on `k` degree-1 generators `u_i` and their
/// boundaries `v_i = d(u_i)`, together with the degree `+1` derivation
/// `theta` sending `v_i` to `u_i`. This contractible algebra is the
/// universal home of the `•` product.
#[derive(Debug, Clone)]
pub struct UniversalAlgebra {
    ctx: Arc<AlgebraContext>,
    differential: Derivation,
    theta: Derivation,
    k: usize,
}

impl UniversalAlgebra {
    pub fn new(k: usize, truncation: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::TooFewFactors { needed: 1 });
        }
        let mut gens: Vec<(String, i64)> = Vec::with_capacity(2 * k);
        for i in 1..=k {
            gens.push((format!("u{i}"), 1));
        }
        for i in 1..=k {
            gens.push((format!("v{i}"), 0));
        }
        let ctx = AlgebraContext::new(&gens, truncation)?;
        let mut d_images = Vec::new();
        let mut theta_images = Vec::new();
        for i in 1..=k {
            let u = format!("u{i}");
            let v = format!("v{i}");
            d_images.push((u.clone(), Element::generator(&ctx, &v)?));
            theta_images.push((v.clone(), Element::generator(&ctx, &u)?));
            d_images.push((v.clone(), Element::zero(&ctx)));
            theta_images.push((u, Element::zero(&ctx)));
        }
        let differential = Derivation::new(&ctx, -1, &d_images)?;
        let theta = Derivation::new(&ctx, 1, &theta_images)?;
        Ok(UniversalAlgebra {
            ctx,
            differential,
            theta,
            k,
        })
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn theta(&self) -> &Derivation {
        &self.theta
    }

    pub fn factor_count(&self) -> usize {
        self.k
    }

    /// The `i`-th degree-1 generator, 1-based.
    pub fn u(&self, i: usize) -> Element {
        Element::generator(&self.ctx, &format!("u{i}")).expect("generator exists")
    }

    /// The `i`-th degree-0 generator, 1-based.
    pub fn v(&self, i: usize) -> Element {
        Element::generator(&self.ctx, &format!("v{i}")).expect("generator exists")
    }
}

/// The scaled section of the differential: `(1/n) theta` on each length-`n`
/// component. On degree-0 elements of a universal algebra this is a section
/// of `d`, i.e. `d(theta_tilde(x)) = x`.
pub fn theta_tilde(theta: &Derivation, x: &Element) -> Result<Element> {
    if !x.scalar().is_zero() {
        return Err(Error::NonzeroScalar(x.scalar().to_string()));
    }
    if !x.words_homogeneous_of(0) {
        return Err(Error::NotHomogeneous { expected: 0 });
    }
    let mut out = Element::zero(x.context());
    let (min, max) = match (x.min_word_length(), x.max_word_length()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(out),
    };
    for len in min..=max {
        let piece = x.component(len)?;
        if piece.is_zero() {
            continue;
        }
        let scaled = theta
            .apply(&piece)?
            .scale(&Rat::new(BigInt::one(), BigInt::from(len as u64)));
        out = &out + &scaled;
    }
    Ok(out)
}

/// True when `a` is a Maurer-Cartan element for `d`: degree `-1`,
/// zero scalar, and `d(a) + 1/2 [a, a] = 0` up to truncation.
pub fn is_maurer_cartan(d: &Derivation, a: &Element) -> Result<bool> {
    if !a.scalar().is_zero() {
        return Err(Error::NonzeroScalar(a.scalar().to_string()));
    }
    if !a.words_homogeneous_of(-1) {
        return Err(Error::MaurerCartanDegree {
            found: a
                .homogeneous_degree()
                .map(|d| d.to_string())
                .unwrap_or_else(|| "mixed".to_string()),
        });
    }
    let lhs = &d.apply(a)? + &a.bracket(a)?.scale(&crate::frac(1, 2));
    Ok(lhs.is_zero())
}

/// The differential perturbed at a Maurer-Cartan element:
/// `d_a(x) = d(x) + [a, x]`. With the Leibniz and bracket conventions used
/// here this is the unique orientation of the adjoint term for which the
/// perturbation squares to zero.
pub fn perturbed_differential(d: &Derivation, a: &Element) -> Result<Derivation> {
    assert_eq!(d.degree(), -1, "perturbation starts from a differential");
    if !is_maurer_cartan(d, a)? {
        return Err(Error::NotMaurerCartan);
    }
    let ctx = d.context();
    let mut images = Vec::with_capacity(ctx.generator_count());
    for i in 0..ctx.generator_count() as u16 {
        let g = Element::generator(ctx, ctx.generator(i).name())?;
        let image = &d.apply(&g)? + &a.bracket(&g)?;
        images.push((ctx.generator(i).name().to_string(), image));
    }
    Derivation::new(ctx, -1, &images)
}

/// Builds the degree `+1` pairing section of a differential that matches
/// each generator `g` with `d(g)` when `d` maps every generator either to
/// zero or to a single partner generator with coefficient 1, and the
/// partners pair up perfectly. This recovers `theta` for the universal
/// algebras from their differential alone.
pub fn pairing_section(d: &Derivation) -> Result<Derivation> {
    let ctx = d.context();
    let count = ctx.generator_count();
    let mut partner_of: Vec<Option<u16>> = vec![None; count];
    let mut is_target: Vec<bool> = vec![false; count];
    for i in 0..count as u16 {
        let img = d.image(i);
        if img.is_zero() {
            continue;
        }
        let mut words = img.terms();
        let only = match (words.next(), words.next()) {
            (Some((w, c)), None) if w.len() == 1 && c.is_one() => w.letters()[0],
            _ => return Err(Error::NoSection),
        };
        if is_target[only as usize] || only == i {
            return Err(Error::NoSection);
        }
        is_target[only as usize] = true;
        partner_of[only as usize] = Some(i);
    }
    // Targets must be cycles, or the pairing is not a section.
    for (i, &hit) in is_target.iter().enumerate() {
        if hit && !d.image(i as u16).is_zero() {
            return Err(Error::NoSection);
        }
    }
    // Perfect pairing: every generator is a source or a matched target.
    let mut images = Vec::with_capacity(count);
    for i in 0..count as u16 {
        let name = ctx.generator(i).name().to_string();
        match partner_of[i as usize] {
            Some(src) => {
                images.push((name, Element::generator(ctx, ctx.generator(src).name())?));
            }
            None => {
                if d.image(i).is_zero() {
                    // unmatched cycle generator: no section exists
                    return Err(Error::NoSection);
                }
                images.push((name, Element::zero(ctx)));
            }
        }
    }
    Derivation::new(ctx, 1, &images)
}

/// One `(word length, degree)` block of an exactness report.
#[derive(Debug, Clone)]
pub struct ExactnessBlock {
    pub length: usize,
    pub degree: i64,
    /// Dimension of the Lie component in this block.
    pub lie_dim: usize,
    /// Rank of the differential restricted to this block.
    pub rank_out: usize,
    /// Rank of the differential arriving from the block one degree up.
    pub rank_in: usize,
    /// `lie_dim - rank_out - rank_in`; zero means the block is exact.
    pub homology_dim: usize,
}

/// Exactness report over all `(length, degree)` blocks up to a word length.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub max_length: usize,
    pub blocks: Vec<ExactnessBlock>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.blocks.iter().all(|b| b.homology_dim == 0)
    }

    pub fn failing_blocks(&self) -> impl Iterator<Item = &ExactnessBlock> {
        self.blocks.iter().filter(|b| b.homology_dim != 0)
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            writeln!(
                f,
                "length {} degree {}: dim {} rank_out {} rank_in {} homology {}",
                b.length, b.degree, b.lie_dim, b.rank_out, b.rank_in, b.homology_dim
            )?;
        }
        write!(
            f,
            "exact through length {}: {}",
            self.max_length,
            if self.is_exact() { "yes" } else { "NO" }
        )
    }
}

/// Checks per-block exactness of a length-preserving differential.
///
/// For each word length the Lie component is spanned by right-nested
/// brackets of generators; exact rational elimination computes the ranks
/// needed to decide whether kernel equals image in every degree.
pub fn exactness_report(
    presentation: &DglPresentation,
    max_length: usize,
) -> Result<ExactnessReport> {
    let ctx = presentation.context();
    let d = presentation.differential();
    if max_length < 1 || max_length > ctx.truncation() {
        return Err(Error::LengthOutOfRange(max_length, ctx.truncation()));
    }
    // The construction below decomposes by word length, so the differential
    // must preserve it: every image is a combination of single letters.
    for i in 0..ctx.generator_count() as u16 {
        let img = d.image(i);
        if img.terms().any(|(w, _)| w.len() != 1) {
            return Err(Error::NotLengthHomogeneous(
                ctx.generator(i).name().to_string(),
            ));
        }
    }

    let k = ctx.generator_count();
    let mut blocks = Vec::new();
    for length in 1..=max_length {
        // span_cols[q] spans the Lie component; d_cols[q] its differential.
        let mut span_cols: BTreeMap<i64, Vec<Element>> = BTreeMap::new();
        let mut d_cols: BTreeMap<i64, Vec<Element>> = BTreeMap::new();
        let mut seq = vec![0u16; length];
        loop {
            let bracket = right_nested_bracket(ctx, &seq)?;
            if !bracket.is_zero() {
                let q: i64 = seq.iter().map(|&i| ctx.generator(i).degree()).sum();
                let img = d.apply(&bracket)?;
                span_cols.entry(q).or_default().push(bracket);
                if !img.is_zero() {
                    d_cols.entry(q).or_default().push(img);
                }
            }
            // advance the odometer
            let mut pos = 0;
            loop {
                if pos == length {
                    break;
                }
                seq[pos] += 1;
                if (seq[pos] as usize) < k {
                    break;
                }
                seq[pos] = 0;
                pos += 1;
            }
            if pos == length {
                break;
            }
        }
        let degrees: Vec<i64> = span_cols.keys().copied().collect();
        let rank_d: BTreeMap<i64, usize> = degrees
            .iter()
            .map(|q| {
                let r = d_cols.get(q).map(|c| rank_of_columns(c)).unwrap_or(0);
                (*q, r)
            })
            .collect();
        for q in &degrees {
            let lie_dim = rank_of_columns(&span_cols[q]);
            let rank_out = rank_d[q];
            let rank_in = rank_d.get(&(q + 1)).copied().unwrap_or(0);
            debug_assert!(lie_dim >= rank_out + rank_in);
            blocks.push(ExactnessBlock {
                length,
                degree: *q,
                lie_dim,
                rank_out,
                rank_in,
                homology_dim: lie_dim - rank_out - rank_in,
            });
        }
    }
    Ok(ExactnessReport { max_length, blocks })
}

fn right_nested_bracket(ctx: &Arc<AlgebraContext>, seq: &[u16]) -> Result<Element> {
    let last = seq[seq.len() - 1];
    let mut cur = Element::generator(ctx, ctx.generator(last).name())?;
    for &i in seq[..seq.len() - 1].iter().rev() {
        let g = Element::generator(ctx, ctx.generator(i).name())?;
        cur = g.bracket(&cur)?;
    }
    Ok(cur)
}

/// Rank of the span of sparse word-vectors, by exact Gaussian elimination.
fn rank_of_columns(cols: &[Element]) -> usize {
    let mut row_index: BTreeMap<Word, usize> = BTreeMap::new();
    for col in cols {
        for (w, _) in col.terms() {
            let next = row_index.len();
            row_index.entry(w.clone()).or_insert(next);
        }
    }
    let rows = row_index.len();
    // pivots[r] = reduced column with leading row r
    let mut pivots: Vec<Option<Vec<Rat>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut v = vec![Rat::zero(); rows];
        for (w, c) in col.terms() {
            v[row_index[w]] = c.clone();
        }
        let mut lead = 0;
        while lead < rows {
            if v[lead].is_zero() {
                lead += 1;
                continue;
            }
            match &pivots[lead] {
                Some(p) => {
                    let factor = v[lead].clone();
                    for r in lead..rows {
                        let delta = &p[r] * &factor;
                        if !delta.is_zero() {
                            v[r] -= delta;
                        }
                    }
                    lead += 1;
                }
                None => {
                    let inv = v[lead].clone();
                    for entry in v[lead..].iter_mut() {
                        if !entry.is_zero() {
                            *entry = &*entry / &inv;
                        }
                    }
                    pivots[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
