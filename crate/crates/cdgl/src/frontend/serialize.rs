//! JSON file formats for contexts, differentials, and elements.
//!
//! Algebra files carry the generator list, the truncation order, and the
//! differential images as expression text, so whole differential algebras
//! are data. Element files embed the context descriptor and list terms as
//! `[[word...], "p/q"]` pairs in canonical order; serialization round-trips
//! bit-exactly.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, Element, Word};
use crate::differential::Derivation;
use crate::error::{Error, Result};
use crate::frontend::parse::parse_expression;
use crate::Rat;

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct GeneratorDescriptor {
    name: String,
    degree: i64,
}

/// On-disk description of a context and optional differential.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    version: u32,
    generators: Vec<GeneratorDescriptor>,
    truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    differential: Option<BTreeMap<String, String>>,
}

/// On-disk description of one element, with its context descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFile {
    version: u32,
    generators: Vec<GeneratorDescriptor>,
    truncation: usize,
    scalar: String,
    terms: Vec<(Vec<String>, String)>,
}

fn descriptors(ctx: &AlgebraContext) -> Vec<GeneratorDescriptor> {
    ctx.generators()
        .iter()
        .map(|g| GeneratorDescriptor {
            name: g.name().to_string(),
            degree: g.degree(),
        })
        .collect()
}

fn parse_coefficient(text: &str) -> Result<Rat> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n = BigInt::from_str(numer.trim()).map_err(|_| Error::InvalidRational(text.into()))?;
    let d = BigInt::from_str(denom.trim()).map_err(|_| Error::InvalidRational(text.into()))?;
    if d.is_zero() {
        return Err(Error::InvalidRational(text.into()));
    }
    Ok(Rat::new(n, d))
}

/// Serializes one element, context descriptor included.
pub fn serialize_element(x: &Element) -> String {
    let file = ElementFile {
        version: FORMAT_VERSION,
        generators: descriptors(x.context()),
        truncation: x.context().truncation(),
        scalar: x.scalar().to_string(),
        terms: x
            .terms()
            .map(|(w, c)| {
                let names = w
                    .letters()
                    .iter()
                    .map(|&l| x.context().generator(l).name().to_string())
                    .collect();
                (names, c.to_string())
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

/// Reads an element file, rebuilding its context.
pub fn deserialize_element(text: &str) -> Result<(Arc<AlgebraContext>, Element)> {
    let file: ElementFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(file.version));
    }
    let gens: Vec<(String, i64)> = file
        .generators
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    let ctx = AlgebraContext::new(&gens, file.truncation)?;
    let element = element_from_parts(&ctx, &file)?;
    Ok((ctx, element))
}

/// Reads an element file against an existing context; the stored descriptor
/// must match it exactly.
pub fn deserialize_element_in(ctx: &Arc<AlgebraContext>, text: &str) -> Result<Element> {
    let file: ElementFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(file.version));
    }
    if file.generators != descriptors(ctx) {
        return Err(Error::ContextDescriptor(
            "generator lists differ".to_string(),
        ));
    }
    if file.truncation != ctx.truncation() {
        return Err(Error::ContextDescriptor(format!(
            "truncation {} in file, {} expected",
            file.truncation,
            ctx.truncation()
        )));
    }
    element_from_parts(ctx, &file)
}

fn element_from_parts(ctx: &Arc<AlgebraContext>, file: &ElementFile) -> Result<Element> {
    let mut out = Element::from_scalar(ctx, parse_coefficient(&file.scalar)?);
    for (names, coeff) in &file.terms {
        let mut letters = Vec::with_capacity(names.len());
        for name in names {
            let idx = ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            letters.push(idx);
        }
        if letters.is_empty() {
            return Err(Error::ContextDescriptor("empty word in terms".into()));
        }
        out.add_word(Word::new(letters), parse_coefficient(coeff)?);
    }
    Ok(out)
}

/// Serializes a context and optional differential, images rendered as
/// canonical expression text.
pub fn serialize_algebra(ctx: &Arc<AlgebraContext>, d: Option<&Derivation>) -> String {
    let differential = d.map(|d| {
        (0..ctx.generator_count() as u16)
            .map(|i| (ctx.generator(i).name().to_string(), d.image(i).to_string()))
            .collect()
    });
    let file = AlgebraFile {
        version: FORMAT_VERSION,
        generators: descriptors(ctx),
        truncation: ctx.truncation(),
        differential,
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

/// Reads an algebra file. `truncation_override` rebuilds the context at a
/// different order; differential images are expression text and re-evaluate
/// exactly at the requested order.
pub fn deserialize_algebra(
    text: &str,
    truncation_override: Option<usize>,
) -> Result<(Arc<AlgebraContext>, Option<Derivation>)> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(file.version));
    }
    let gens: Vec<(String, i64)> = file
        .generators
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    let truncation = truncation_override.unwrap_or(file.truncation);
    let ctx = AlgebraContext::new(&gens, truncation)?;
    let differential = match &file.differential {
        None => None,
        Some(images) => {
            let mut pairs = Vec::with_capacity(images.len());
            for (name, expr) in images {
                pairs.push((name.clone(), parse_expression(expr, &ctx, None)?));
            }
            // generators without an entry default to zero image
            for g in ctx.generators() {
                if !images.contains_key(g.name()) {
                    pairs.push((g.name().to_string(), Element::zero(&ctx)));
                }
            }
            Some(Derivation::new(&ctx, -1, &pairs)?)
        }
    };
    Ok((ctx, differential))
}
