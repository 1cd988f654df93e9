//! Deterministic pseudo-random elements for test suites and self-checks.
//!
//! A fixed seed always produces the same elements, so suites built on this
//! module are reproducible byte for byte.

use std::sync::Arc;

use crate::algebra::{AlgebraContext, Element, Word};
use crate::frac;

/// SplitMix64 generator; tiny, seedable, and stable across platforms.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound must be nonzero).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// A small nonzero rational with numerator in `-9..=9` and denominator
    /// in `1..=4`.
    pub fn small_rational(&mut self) -> crate::Rat {
        let numer = loop {
            let n = self.below(19) as i64 - 9;
            if n != 0 {
                break n;
            }
        };
        let denom = self.below(4) as i64 + 1;
        frac(numer, denom)
    }
}

/// Draws sparse elements from a context with all words of one degree.
#[derive(Debug)]
pub struct ElementSampler {
    ctx: Arc<AlgebraContext>,
    rng: Rng,
}

impl ElementSampler {
    pub fn new(ctx: &Arc<AlgebraContext>, seed: u64) -> Self {
        ElementSampler {
            ctx: Arc::clone(ctx),
            rng: Rng::new(seed),
        }
    }

    /// A random word of exactly `len` letters whose degrees sum to `degree`,
    /// by bounded rejection. Panics if the context cannot produce one within
    /// the attempt budget (a misuse, not a runtime condition).
    fn word_of_degree(&mut self, len: usize, degree: i64) -> Option<Word> {
        let k = self.ctx.generator_count();
        'attempt: for _ in 0..20_000 {
            let mut letters = Vec::with_capacity(len);
            let mut sum = 0i64;
            for _ in 0..len {
                let g = self.rng.below(k) as u16;
                sum += self.ctx.generator(g).degree();
                letters.push(g);
            }
            if sum == degree {
                return Some(Word::new(letters));
            }
            continue 'attempt;
        }
        None
    }

    /// A sparse element homogeneous of `degree`: `terms` random words of
    /// length between 1 and `max_len` with small rational coefficients.
    pub fn homogeneous(&mut self, degree: i64, max_len: usize, terms: usize) -> Element {
        let mut out = Element::zero(&self.ctx);
        let mut produced = 0;
        let mut guard = 0;
        while produced < terms && guard < 100 * terms + 100 {
            guard += 1;
            let len = self.rng.below(max_len) + 1;
            if let Some(word) = self.word_of_degree(len, degree) {
                let coeff = self.rng.small_rational();
                out.add_word(word, coeff);
                produced += 1;
            }
        }
        out
    }
}
