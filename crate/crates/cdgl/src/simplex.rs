//! Lie models of the simplices in dimensions 0 through 4.
//!
//! The model in dimension `n` is the completed free Lie algebra on
//! generators `a_I`, one for each nonempty subset `I` of the vertex set,
//! with `|a_I| = #I - 2`. Vertices are Maurer-Cartan elements, the linear
//! part of the differential is the alternating face sum, and the
//! differential of every proper face is pushed forward from the top
//! generator of the lower-dimensional model along the coface relabeling.
//! The top differential is stated through the perturbed differential
//! `d_0 = d + [a_0, -]`: the models store `d(top) = phi - [a_0, top]` where
//! `phi = d_0(top)` involves only boundary generators.
//!
//! Dimensions 0 through 3 verify completely. In dimension 4 the stated
//! boundary element is not a perturbed cycle for the substitution-based
//! product: its defect starts at word length 3 and traces to the fact that
//! the product on degree-1 elements is not associative (binary folds differ
//! from the flattened product), so the chain regroupings behind the stated
//! formula do not hold. [`verify_model`] reports this honestly through its
//! `d-squared` and `phi-cycle` checks while every other check passes.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{validate_chain_morphism, AlgebraContext, Element, Morphism};
use crate::bch::{bch_many, bullet_many, conjugate_by_exp};
use crate::correctors::tau;
use crate::differential::{is_maurer_cartan, perturbed_differential, Derivation, DglPresentation};
use crate::error::{Error, Result};
use crate::frac;
use crate::series::{ad_series, CoefficientTable};
use crate::Rat;

/// A built model of the `n`-simplex.
#[derive(Debug, Clone)]
pub struct SimplexModel {
    n: usize,
    subsets: Vec<Vec<u8>>,
    ctx: Arc<AlgebraContext>,
    differential: Derivation,
}

impl SimplexModel {
    /// Builds the model of the `n`-simplex at a truncation order, for
    /// `n <= 4`. The construction is total: it always produces the stated
    /// differential, and [`verify_model`] reports whether the axioms hold.
    /// For dimensions up to 3 every check passes; in dimension 4 the stated
    /// boundary of the top generator is not closed for the substitution
    /// product (see [`verify_model`]), which the report shows as failing
    /// `d-squared` and `phi-cycle` checks.
    pub fn build(n: usize, truncation: usize) -> Result<SimplexModel> {
        let mut chain = build_chain(n, truncation)?;
        Ok(chain.pop().expect("chain is nonempty"))
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.ctx.truncation()
    }

    /// The model as a validated presentation; fails when the differential
    /// does not square to zero (dimension 4).
    pub fn presentation(&self) -> Result<DglPresentation> {
        DglPresentation::new(&self.ctx, self.differential.clone())
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn subsets(&self) -> &[Vec<u8>] {
        &self.subsets
    }

    /// The generator element `a_I` for a set of vertices.
    pub fn generator(&self, vertices: &[u8]) -> Result<Element> {
        Element::generator(self.context(), &subset_name(vertices))
    }

    fn top_subset(&self) -> Vec<u8> {
        (0..=self.n as u8).collect()
    }

    /// The top generator `a_{0..n}`.
    pub fn top_generator(&self) -> Element {
        self.generator(&self.top_subset()).expect("top exists")
    }

    /// The differential perturbed at a vertex, `d_i = d + [a_i, -]`.
    pub fn vertex_perturbation(&self, vertex: u8) -> Result<Derivation> {
        let a = self.generator(&[vertex])?;
        perturbed_differential(self.differential(), &a)
    }
}

/// Canonical generator name for a vertex subset, e.g. `a013`.
pub fn subset_name(vertices: &[u8]) -> String {
    let mut s = String::with_capacity(vertices.len() + 1);
    s.push('a');
    for v in vertices {
        s.push_str(&v.to_string());
    }
    s
}

/// All nonempty subsets of `{0..n}` in canonical order: by size, then
/// lexicographically. This is the generator order of the model contexts.
fn canonical_subsets(n: usize) -> Vec<Vec<u8>> {
    let mut subsets: Vec<Vec<u8>> = (1u32..(1 << (n + 1)))
        .map(|mask| (0..=n as u8).filter(|v| mask & (1 << v) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

fn model_context(n: usize, truncation: usize) -> Result<(Arc<AlgebraContext>, Vec<Vec<u8>>)> {
    let subsets = canonical_subsets(n);
    let gens: Vec<(String, i64)> = subsets
        .iter()
        .map(|s| (subset_name(s), s.len() as i64 - 2))
        .collect();
    Ok((AlgebraContext::new(&gens, truncation)?, subsets))
}

/// Generator-relabeling morphism along a vertex map, without chain-map
/// validation (used while differentials are still being defined).
fn relabel_morphism(
    source: &Arc<AlgebraContext>,
    source_subsets: &[Vec<u8>],
    target: &Arc<AlgebraContext>,
    f: &[u8],
) -> Result<Morphism> {
    let mut images = Vec::with_capacity(source_subsets.len());
    for subset in source_subsets {
        let image_subset: Vec<u8> = subset.iter().map(|&j| f[j as usize]).collect();
        images.push((
            subset_name(subset),
            Element::generator(target, &subset_name(&image_subset))?,
        ));
    }
    Morphism::new(source, target, &images)
}

/// Builds the models of dimensions `0..=n` at one truncation order.
pub fn build_chain(n: usize, truncation: usize) -> Result<Vec<SimplexModel>> {
    if n > 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    if truncation < 2 {
        return Err(Error::ModelTruncation(truncation));
    }
    let mut chain: Vec<SimplexModel> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let (ctx, subsets) = model_context(m, truncation)?;
        let mut images: Vec<(String, Element)> = Vec::new();
        // vertices are Maurer-Cartan: d(a_i) = -[a_i, a_i]/2
        for i in 0..=m as u8 {
            let a = Element::generator(&ctx, &subset_name(&[i]))?;
            images.push((subset_name(&[i]), a.bracket(&a)?.scale(&frac(-1, 2))));
        }
        // proper faces: push the top differential of the lower model along
        // the coface relabeling
        for subset in subsets.iter().filter(|s| s.len() >= 2 && s.len() < m + 1) {
            let k = subset.len() - 1;
            let lower = &chain[k];
            let relabel = relabel_morphism(lower.context(), &lower.subsets, &ctx, subset)?;
            let top_image = lower
                .differential()
                .image_of(&subset_name(&lower.top_subset()))?;
            images.push((subset_name(subset), relabel.apply(top_image)?));
        }
        // top generator
        if m >= 1 {
            let top_name = subset_name(&(0..=m as u8).collect::<Vec<_>>());
            let mut provisional = images.clone();
            provisional.push((top_name.clone(), Element::zero(&ctx)));
            let d_prov = Derivation::new(&ctx, -1, &provisional)?;
            let top_image = top_differential(m, &ctx, &d_prov)?;
            images.push((top_name, top_image));
        }
        let differential = Derivation::new(&ctx, -1, &images)?;
        chain.push(SimplexModel {
            n: m,
            subsets,
            ctx,
            differential,
        });
    }
    Ok(chain)
}

/// The stated differential of the top generator `a_{0..m}`, converted from
/// the perturbed form: for `m >= 2`, `d(top) = phi - [a_0, top]` where `phi`
/// is the displayed boundary element.
fn top_differential(m: usize, ctx: &Arc<AlgebraContext>, d_prov: &Derivation) -> Result<Element> {
    let gen = |vertices: &[u8]| Element::generator(ctx, &subset_name(vertices));
    match m {
        1 => {
            // interval: d(a01) = [a01, a1] + sum_k B_k/k! ad_{a01}^k (a1 - a0)
            let a01 = gen(&[0, 1])?;
            let a0 = gen(&[0])?;
            let a1 = gen(&[1])?;
            let n = ctx.truncation();
            let bernoulli = CoefficientTable::bernoulli(n);
            let mut fact = num_bigint::BigInt::from(1u8);
            let coeffs: Vec<Rat> = bernoulli
                .values()
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    if k > 0 {
                        fact *= num_bigint::BigInt::from(k as u64);
                    }
                    b / Rat::from_integer(fact.clone())
                })
                .collect();
            let series = ad_series(&coeffs, &a01, &(&a1 - &a0))?;
            Ok(&a01.bracket(&a1)? + &series)
        }
        2..=4 => {
            let a0 = gen(&[0])?;
            let d0 = perturbed_differential(d_prov, &a0)?;
            let phi = top_phi(m, ctx, &d0)?;
            let top = gen(&(0..=m as u8).collect::<Vec<_>>())?;
            Ok(&phi - &a0.bracket(&top)?)
        }
        _ => unreachable!("top_differential called for m >= 1"),
    }
}

/// The displayed perturbed boundary `phi = d_0(a_{0..m})` of the top
/// generator, built from lower faces only.
fn top_phi(m: usize, ctx: &Arc<AlgebraContext>, d0: &Derivation) -> Result<Element> {
    let gen = |vertices: &[u8]| Element::generator(ctx, &subset_name(vertices));
    match m {
        2 => {
            // triangle: a01 * a12 * a02^{-1}
            let (a01, a12, a02) = (gen(&[0, 1])?, gen(&[1, 2])?, gen(&[0, 2])?);
            bch_many(&[&a01, &a12, &-&a02])
        }
        3 => {
            // tetrahedron: e^{01}(a123) • a013 • a023^{-1} • a012^{-1}
            let e01_a123 = conjugate_by_exp(&gen(&[0, 1])?, &gen(&[1, 2, 3])?)?;
            bullet_many(
                d0,
                &[
                    e01_a123,
                    gen(&[0, 1, 3])?,
                    -&gen(&[0, 2, 3])?,
                    -&gen(&[0, 1, 2])?,
                ],
            )
        }
        4 => {
            // pentahedroid: six summands, • products taken for d_0,
            // exponents chained by the BCH product with a_{ji} = -a_{ij}
            let a01 = gen(&[0, 1])?;
            let a12 = gen(&[1, 2])?;
            let a23 = gen(&[2, 3])?;
            let a34 = gen(&[3, 4])?;
            let a02 = gen(&[0, 2])?;
            let a13 = gen(&[1, 3])?;
            let a24 = gen(&[2, 4])?;

            let beta = bullet_many(
                d0,
                &[gen(&[0, 2, 4])?, -&gen(&[0, 3, 4])?, -&gen(&[0, 2, 3])?],
            )?;
            let chi1 = tau(d0, &gen(&[0, 1, 2])?, &beta)?;

            let x_0234 = bch_many(&[&a01, &a12, &-&a02])?;
            let chi2 = conjugate_by_exp(&x_0234, &-&gen(&[0, 2, 3, 4])?)?;

            let chi3 = conjugate_by_exp(&a01, &gen(&[1, 2, 3, 4])?)?;

            let chi4 = gen(&[0, 1, 2, 3])?;

            let n = ctx.truncation();
            let eps = CoefficientTable::epsilon(n);
            let x_0134 = bch_many(&[&a01, &a12, &a23, &-&a13, &-&a01])?;
            let chi5 = ad_series(eps.values(), &x_0134, &gen(&[0, 1, 3, 4])?)?;

            let x_0124 = bch_many(&[&a01, &a12, &a23, &a34, &-&a24, &-&a12, &-&a01])?;
            let chi6 = ad_series(eps.values(), &x_0124, &-&gen(&[0, 1, 2, 4])?)?;

            Ok(&(&(&chi1 + &chi2) + &(&chi3 + &chi4)) + &(&chi5 + &chi6))
        }
        _ => unreachable!("top_phi called for m in 2..=4"),
    }
}

/// The coface morphism induced by a strictly increasing vertex map,
/// validated as a chain map between built models.
pub fn coface_morphism(f: &[u8], source: &SimplexModel, target: &SimplexModel) -> Result<Morphism> {
    if f.len() != source.n + 1 {
        return Err(Error::InvalidCoface(format!(
            "map lists {} vertices but the source has {}",
            f.len(),
            source.n + 1
        )));
    }
    if !f.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidCoface(
            "map is not strictly increasing".into(),
        ));
    }
    if f.iter().any(|&v| v as usize > target.n) {
        return Err(Error::InvalidCoface(format!(
            "vertex out of range for a {}-simplex",
            target.n
        )));
    }
    let m = relabel_morphism(source.context(), &source.subsets, target.context(), f)?;
    let report = validate_chain_morphism(&m, source.differential(), target.differential())?;
    match report.failures.first() {
        None => Ok(m),
        Some((g, _)) => Err(Error::CofaceNotChainMap(g.clone())),
    }
}

/// The perturbed boundary `d_0(top)` of a built model, for `2 <= n <= 4`.
pub fn top_boundary_phi(model: &SimplexModel) -> Result<Element> {
    if !(2..=4).contains(&model.n) {
        return Err(Error::UnsupportedDimension(model.n));
    }
    let a0 = model.generator(&[0])?;
    let top = model.top_generator();
    let d_top = model.differential().apply(&top)?;
    Ok(&d_top + &a0.bracket(&top)?)
}

/// One verification check with an optional failure witness.
#[derive(Debug, Clone)]
pub struct ModelCheck {
    pub name: String,
    pub passed: bool,
    /// Offending generator or check detail, with the lowest word length at
    /// which a discrepancy appears when that is meaningful.
    pub witness: Option<String>,
}

/// Verification report over a built simplex model.
#[derive(Debug, Clone)]
pub struct ModelReport {
    pub dimension: usize,
    pub truncation: usize,
    pub checks: Vec<ModelCheck>,
}

impl ModelReport {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "model of the {}-simplex at truncation {}",
            self.dimension, self.truncation
        )?;
        for c in &self.checks {
            match (&c.passed, &c.witness) {
                (true, _) => writeln!(f, "  check {}: pass", c.name)?,
                (false, Some(w)) => writeln!(f, "  check {}: FAIL ({})", c.name, w)?,
                (false, None) => writeln!(f, "  check {}: FAIL", c.name)?,
            }
        }
        write!(
            f,
            "verified: {}",
            if self.verified() { "yes" } else { "NO" }
        )
    }
}

fn witness_at(generator: &str, diff: &Element) -> String {
    match diff.min_word_length() {
        Some(len) => format!("{generator}, first discrepancy at word length {len}"),
        None => format!("{generator}, discrepancy in the scalar part"),
    }
}

/// Runs every verification check on a built model: Maurer-Cartan vertices,
/// cellular linear parts, `d^2 = 0`, the inductive form of the top
/// differential, the perturbed-cycle condition on its boundary part, the
/// chain-map property of every coface, and the gauge identity on the
/// interval. `threads` > 1 runs the checks concurrently.
pub fn verify_model_with(model: &SimplexModel, threads: usize) -> Result<ModelReport> {
    type Job<'a> = Box<dyn FnOnce() -> Result<Vec<ModelCheck>> + Send + 'a>;
    let mut jobs: Vec<Job<'_>> = Vec::new();

    jobs.push(Box::new(move || check_mc_vertices(model)));
    jobs.push(Box::new(move || check_linear_parts(model)));
    jobs.push(Box::new(move || check_d_squared(model)));
    if model.n >= 2 {
        jobs.push(Box::new(move || check_inductive_form(model)));
        jobs.push(Box::new(move || check_phi_cycle(model)));
    }
    jobs.push(Box::new(move || check_cofaces(model)));
    if model.n == 1 {
        jobs.push(Box::new(move || check_interval_gauge(model)));
    }

    let results: Vec<Result<Vec<ModelCheck>>> = if threads <= 1 {
        jobs.into_iter().map(|j| j()).collect()
    } else {
        run_jobs(jobs, threads)
    };
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(ModelReport {
        dimension: model.n,
        truncation: model.truncation(),
        checks,
    })
}

/// [`verify_model_with`] on a single thread.
pub fn verify_model(model: &SimplexModel) -> Result<ModelReport> {
    verify_model_with(model, 1)
}

fn run_jobs<'a>(
    jobs: Vec<Box<dyn FnOnce() -> Result<Vec<ModelCheck>> + Send + 'a>>,
    threads: usize,
) -> Vec<Result<Vec<ModelCheck>>> {
    let total = jobs.len();
    let mut slots: Vec<Option<Result<Vec<ModelCheck>>>> = Vec::new();
    slots.resize_with(total, || None);
    let queue = std::sync::Mutex::new(jobs.into_iter().enumerate().collect::<Vec<_>>());
    let slots_mutex = std::sync::Mutex::new(slots);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(total) {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop();
                match job {
                    None => break,
                    Some((index, job)) => {
                        let out = job();
                        slots_mutex.lock().unwrap()[index] = Some(out);
                    }
                }
            });
        }
    });
    slots_mutex
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|s| s.expect("job ran"))
        .collect()
}

fn check_mc_vertices(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    let d = model.differential();
    let mut failed = Vec::new();
    for i in 0..=model.n as u8 {
        let a = model.generator(&[i])?;
        if !is_maurer_cartan(d, &a)? {
            failed.push(subset_name(&[i]));
        }
    }
    Ok(vec![ModelCheck {
        name: "mc-vertices".into(),
        passed: failed.is_empty(),
        witness: failed.first().cloned(),
    }])
}

fn check_linear_parts(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    let d = model.differential();
    let mut witness = None;
    for subset in &model.subsets {
        let g = model.generator(subset)?;
        let image = d.apply(&g)?;
        let linear = image.component(1)?;
        let mut expected = Element::zero(model.context());
        if subset.len() >= 2 {
            for (j, _) in subset.iter().enumerate() {
                let mut face = subset.clone();
                face.remove(j);
                let sign = if j % 2 == 0 { frac(1, 1) } else { frac(-1, 1) };
                expected = &expected + &model.generator(&face)?.scale(&sign);
            }
        }
        if linear != expected {
            witness = Some(witness_at(&subset_name(subset), &(&linear - &expected)));
            break;
        }
    }
    Ok(vec![ModelCheck {
        name: "linear-parts".into(),
        passed: witness.is_none(),
        witness,
    }])
}

fn check_d_squared(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    let d = model.differential();
    let mut witness = None;
    for subset in &model.subsets {
        let g = model.generator(subset)?;
        let dd = d.apply(&d.apply(&g)?)?;
        if !dd.is_zero() {
            witness = Some(witness_at(&subset_name(subset), &dd));
            break;
        }
    }
    Ok(vec![ModelCheck {
        name: "d-squared".into(),
        passed: witness.is_none(),
        witness,
    }])
}

fn check_inductive_form(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    let phi = top_boundary_phi(model)?;
    let top_index = model
        .context()
        .index_of(&subset_name(&model.top_subset()))
        .expect("top generator");
    let mentions_top = phi.terms().any(|(w, _)| w.letters().contains(&top_index));
    Ok(vec![ModelCheck {
        name: "inductive-form".into(),
        passed: !mentions_top,
        witness: mentions_top.then(|| "top generator appears in its own boundary".into()),
    }])
}

fn check_phi_cycle(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    let a0 = model.generator(&[0])?;
    let d0 = perturbed_differential(model.differential(), &a0)?;
    let phi = top_boundary_phi(model)?;
    let image = d0.apply(&phi)?;
    Ok(vec![ModelCheck {
        name: "phi-cycle".into(),
        passed: image.is_zero(),
        witness: (!image.is_zero()).then(|| witness_at("phi", &image)),
    }])
}

fn check_cofaces(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    // lower models are rebuilt; the full-subset coface reuses the model
    let chain = if model.n == 0 {
        Vec::new()
    } else {
        build_chain(model.n - 1, model.truncation())?
    };
    let mut failed = Vec::new();
    let mut count = 0usize;
    for subset in &model.subsets {
        let k = subset.len() - 1;
        let source = if k == model.n { model } else { &chain[k] };
        count += 1;
        if coface_morphism(subset, source, model).is_err() {
            failed.push(format!("vertices {:?}", subset));
        }
    }
    Ok(vec![ModelCheck {
        name: format!("cofaces({count})"),
        passed: failed.is_empty(),
        witness: failed.first().cloned(),
    }])
}

fn check_interval_gauge(model: &SimplexModel) -> Result<Vec<ModelCheck>> {
    // d_0(e^{ad_{a01}}(g)) = e^{ad_{a01}}(d_1(g)) on every generator
    let d0 = model.vertex_perturbation(0)?;
    let d1 = model.vertex_perturbation(1)?;
    let a01 = model.generator(&[0, 1])?;
    let mut witness = None;
    for subset in &model.subsets {
        let g = model.generator(subset)?;
        let lhs = d0.apply(&conjugate_by_exp(&a01, &g)?)?;
        let rhs = conjugate_by_exp(&a01, &d1.apply(&g)?)?;
        if lhs != rhs {
            witness = Some(witness_at(&subset_name(subset), &(&lhs - &rhs)));
            break;
        }
    }
    Ok(vec![ModelCheck {
        name: "interval-gauge".into(),
        passed: witness.is_none(),
        witness,
    }])
}
