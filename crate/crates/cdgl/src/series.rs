//! Exponentials, logarithms, operator power series in `ad`, the exact
//! coefficient sequences driving them, and a Lie-ness checker.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::Rat;

/// Which sequence a [`CoefficientTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    /// Bernoulli numbers `B_n` with `B_1 = -1/2`.
    Bernoulli,
    /// `f_n = (-1)^n B_n / (n+1)!`, the series multiplying a right cycle.
    F,
    /// `eps_n = 1/(n+1)!`, the series of `(e^t - 1)/t`.
    Epsilon,
    /// `A_n`, the coefficients of `xi(t) = 1/f(t)`.
    Xi,
}

impl CoefficientKind {
    /// Symbol used when printing a table entry, e.g. `B_3`.
    pub fn symbol(&self) -> &'static str {
        match self {
            CoefficientKind::Bernoulli => "B",
            CoefficientKind::F => "f",
            CoefficientKind::Epsilon => "eps",
            CoefficientKind::Xi => "A",
        }
    }
}

/// An exact rational sequence `c_0 .. c_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    kind: CoefficientKind,
    values: Vec<Rat>,
}

impl CoefficientTable {
    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Rat> {
        self.values.get(n)
    }

    /// Bernoulli numbers `B_0 .. B_K` from the defining recurrence
    /// `sum_{j<=m} binom(m+1, j) B_j = 0` with `B_0 = 1`.
    pub fn bernoulli(max_index: usize) -> CoefficientTable {
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(Rat::one());
        for m in 1..=max_index {
            let mut acc = Rat::zero();
            for (j, b) in values.iter().enumerate() {
                acc += b * Rat::from_integer(binomial(m + 1, j));
            }
            let denom = Rat::from_integer(BigInt::from(m as u64 + 1));
            values.push(-acc / denom);
        }
        CoefficientTable {
            kind: CoefficientKind::Bernoulli,
            values,
        }
    }

    /// `f_n = (-1)^n B_n / (n+1)!`.
    pub fn f(max_index: usize) -> CoefficientTable {
        let bernoulli = CoefficientTable::bernoulli(max_index);
        let mut fact = BigInt::one(); // (n+1)!
        let mut values = Vec::with_capacity(max_index + 1);
        for (n, b) in bernoulli.values.iter().enumerate() {
            fact *= BigInt::from(n as u64 + 1);
            let mut c = b / Rat::from_integer(fact.clone());
            if n % 2 == 1 {
                c = -c;
            }
            values.push(c);
        }
        CoefficientTable {
            kind: CoefficientKind::F,
            values,
        }
    }

    /// `eps_n = 1/(n+1)!`.
    pub fn epsilon(max_index: usize) -> CoefficientTable {
        let mut fact = BigInt::one();
        let mut values = Vec::with_capacity(max_index + 1);
        for n in 0..=max_index {
            fact *= BigInt::from(n as u64 + 1);
            values.push(Rat::new(BigInt::one(), fact.clone()));
        }
        CoefficientTable {
            kind: CoefficientKind::Epsilon,
            values,
        }
    }

    /// Coefficients `A_n` of the formal inverse `xi(t) = 1/f(t)`, via
    /// `A_0 = 1`, `A_n = -sum_{l=1..n} A_{n-l} f_l`. The product identity
    /// `sum_{i+j=n} A_i f_j = [n = 0]` holds exactly for every computed
    /// order.
    pub fn xi(max_index: usize) -> CoefficientTable {
        let f = CoefficientTable::f(max_index);
        let mut values: Vec<Rat> = Vec::with_capacity(max_index + 1);
        values.push(Rat::one());
        for n in 1..=max_index {
            let mut acc = Rat::zero();
            for l in 1..=n {
                acc += &values[n - l] * &f.values[l];
            }
            values.push(-acc);
        }
        CoefficientTable {
            kind: CoefficientKind::Xi,
            values,
        }
    }

    /// The series with all coefficients `1/n!` (the exponential), used when
    /// an `ad` series should reproduce `e^{ad_x}`.
    pub fn exponential(max_index: usize) -> Vec<Rat> {
        let mut fact = BigInt::one();
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(Rat::one());
        for n in 1..=max_index {
            fact *= BigInt::from(n as u64);
            values.push(Rat::new(BigInt::one(), fact.clone()));
        }
        values
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n as u64), BigInt::from(k as u64))
}

fn require_zero_scalar(x: &Element) -> Result<()> {
    if x.scalar().is_zero() {
        Ok(())
    } else {
        Err(Error::NonzeroScalar(x.scalar().to_string()))
    }
}

fn require_words_of_degree(x: &Element, q: i64) -> Result<()> {
    if x.words_homogeneous_of(q) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { expected: q })
    }
}

/// `exp(x) = sum_{m} x^m / m!` for a degree-0 element with zero scalar part.
/// The lowest word length of `x` is at least 1, so the sum is finite and
/// exact at the truncation order.
pub fn exp(x: &Element) -> Result<Element> {
    require_zero_scalar(x)?;
    require_words_of_degree(x, 0)?;
    let n = x.context().truncation();
    let mut acc = Element::one(x.context());
    let mut power = Element::one(x.context());
    let mut mfact = BigInt::one();
    for m in 1..=n {
        power = power.mul(x)?;
        if power.is_zero() {
            break;
        }
        mfact *= BigInt::from(m as u64);
        acc = &acc + &power.scale(&Rat::new(BigInt::one(), mfact.clone()));
    }
    Ok(acc)
}

/// `log(x) = sum_{m>=1} (-1)^{m+1} (x-1)^m / m` for an element with scalar
/// part 1. Inverse of [`exp`] at the truncation order.
pub fn log(x: &Element) -> Result<Element> {
    if !x.scalar().is_one() {
        return Err(Error::ScalarNotOne(x.scalar().to_string()));
    }
    let n = x.context().truncation();
    let y = x - &Element::one(x.context());
    let mut acc = Element::zero(x.context());
    let mut power = Element::one(x.context());
    for m in 1..=n {
        power = power.mul(&y)?;
        if power.is_zero() {
            break;
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&Rat::new(BigInt::from(sign), BigInt::from(m as u64)));
    }
    Ok(acc)
}

/// The adjoint action `ad_x(y) = [x, y]`.
pub fn ad_apply(x: &Element, y: &Element) -> Result<Element> {
    x.bracket(y)
}

/// `sum_n c_n ad_x^n(y)`, exact at truncation. Each `ad_x` raises word
/// length by at least one, so the series terminates; the table must cover
/// every order that survives truncation.
pub fn ad_series(coeffs: &[Rat], x: &Element, y: &Element) -> Result<Element> {
    require_zero_scalar(x)?;
    let n = x.context().truncation();
    let mut acc = Element::zero(x.context());
    let mut cur = y.clone();
    for order in 0..=n {
        if cur.is_zero() {
            break;
        }
        match coeffs.get(order) {
            Some(c) => acc = &acc + &cur.scale(c),
            None => {
                return Err(Error::TableTooShort {
                    needed: order + 1,
                    have: coeffs.len(),
                })
            }
        }
        if order == n {
            break;
        }
        cur = x.bracket(&cur)?;
    }
    Ok(acc)
}

/// Left-bracketing projection: each length-`n` word `g_1 .. g_n` maps to
/// `(1/n) [g_1, [g_2, .. [g_{n-1}, g_n] .. ]]`. Fixes exactly the Lie
/// elements when all generators have degree 0; on mixed-degree alphabets it
/// is used as a diagnostic only.
pub fn dynkin_project(x: &Element) -> Result<Element> {
    require_zero_scalar(x)?;
    let ctx = x.context();
    let mut out = Element::zero(ctx);
    for (word, coeff) in x.terms() {
        let letters = word.letters();
        let len = letters.len();
        let mut cur = Element::generator(ctx, ctx.generator(letters[len - 1]).name())?;
        for &l in letters[..len - 1].iter().rev() {
            let g = Element::generator(ctx, ctx.generator(l).name())?;
            cur = g.bracket(&cur)?;
        }
        out.accumulate(&cur, &(coeff / Rat::from_integer(BigInt::from(len as u64))));
    }
    Ok(out)
}

/// True when the left-bracketing projection fixes `x`.
pub fn is_lie(x: &Element) -> Result<bool> {
    Ok(&dynkin_project(x)? == x)
}

/// Formats one table entry as `B_3 = 0` style text.
pub fn format_table_entry(table: &CoefficientTable, n: usize) -> String {
    format!("{}_{} = {}", table.kind().symbol(), n, table.values()[n])
}
