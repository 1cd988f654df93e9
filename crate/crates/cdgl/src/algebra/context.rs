//! Generators, contexts, and tensor words.
//!
//! An [`AlgebraContext`] fixes an ordered alphabet of graded generators and a
//! truncation order `N`. Every element, derivation, and morphism refers back
//! to one context; operations on values from different contexts are errors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A named generator with an integer degree (which may be negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    name: String,
    degree: i64,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered alphabet of graded generators together with the truncation
/// order `N`: words longer than `N` are dropped by every operation.
///
/// Contexts are immutable once built and shared behind an [`Arc`].
#[derive(Debug)]
pub struct AlgebraContext {
    generators: Vec<Generator>,
    by_name: HashMap<String, u16>,
    truncation: usize,
}

impl AlgebraContext {
    /// Builds a context from `(name, degree)` pairs and a truncation order.
    ///
    /// Names must be distinct identifiers and `truncation >= 1`; the
    /// generator order is the input order and is part of the context
    /// identity.
    pub fn new<S: AsRef<str>>(generators: &[(S, i64)], truncation: usize) -> Result<Arc<Self>> {
        if truncation < 1 {
            return Err(Error::InvalidTruncation);
        }
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut gens = Vec::with_capacity(generators.len());
        let mut by_name = HashMap::with_capacity(generators.len());
        for (i, (name, degree)) in generators.iter().enumerate() {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::InvalidGeneratorName(name.to_string()));
            }
            if by_name.insert(name.to_string(), i as u16).is_some() {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
            gens.push(Generator {
                name: name.to_string(),
                degree: *degree,
            });
        }
        Ok(Arc::new(AlgebraContext {
            generators: gens,
            by_name,
            truncation,
        }))
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: u16) -> &Generator {
        &self.generators[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.by_name.get(name).copied()
    }

    /// Degree of a word, the sum of its letter degrees.
    pub fn word_degree(&self, word: &Word) -> i64 {
        word.letters()
            .iter()
            .map(|&i| self.generators[i as usize].degree)
            .sum()
    }
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation && self.generators == other.generators
    }
}

impl Eq for AlgebraContext {}

/// Checks that two contexts agree (pointer fast path, then by value).
pub(crate) fn same_context(a: &Arc<AlgebraContext>, b: &Arc<AlgebraContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn require_same_context(
    a: &Arc<AlgebraContext>,
    b: &Arc<AlgebraContext>,
    what: &str,
) -> Result<()> {
    if same_context(a, b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch(what.to_string()))
    }
}

/// A nonempty tensor word: a sequence of generator indices.
///
/// Words order length first, then lexicographically by index, which fixes the
/// canonical term order used everywhere (iteration, formatting, files).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Box<[u16]>);

impl Word {
    pub fn new(letters: impl Into<Box<[u16]>>) -> Self {
        let letters = letters.into();
        debug_assert!(!letters.is_empty());
        Word(letters)
    }

    pub fn single(letter: u16) -> Self {
        Word(Box::new([letter]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    /// Concatenation `self . other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v.into_boxed_slice())
    }

    /// Replaces the letter at `pos` by the word `mid` (used by derivations).
    pub fn splice(&self, pos: usize, mid: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - 1 + mid.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&mid.0);
        v.extend_from_slice(&self.0[pos + 1..]);
        Word(v.into_boxed_slice())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "g{l}")?;
        }
        Ok(())
    }
}
