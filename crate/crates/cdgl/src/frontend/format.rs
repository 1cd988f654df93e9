//! Canonical text rendering of elements.

use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::error::Result;
use crate::series::{dynkin_project, is_lie};
use crate::Rat;

/// Output style for [`format_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Canonical word terms; reparsing reproduces the element exactly.
    Words,
    /// Left-bracketing display for Lie elements, words otherwise.
    Brackets,
}

/// Renders an element. The words style is the parse-stable canonical form;
/// the brackets style rewrites Lie elements through the left-bracketing
/// projection and falls back to words when the element is not Lie.
pub fn format_element(x: &Element, style: Style) -> Result<String> {
    match style {
        Style::Words => Ok(x.to_string()),
        Style::Brackets => {
            if x.scalar().is_zero() && !x.is_zero() && is_lie(x)? {
                format_brackets(x)
            } else {
                Ok(x.to_string())
            }
        }
    }
}

fn format_brackets(x: &Element) -> Result<String> {
    // dynkin_project(x) = x here, so print each word as its left-bracketing
    // with the coefficient divided by the word length.
    let ctx = x.context();
    let mut out = String::new();
    let mut first = true;
    for (word, coeff) in x.terms() {
        let letters = word.letters();
        let scaled = coeff / Rat::from_integer((letters.len() as u64).into());
        let negative = scaled < Rat::zero();
        let abs = if negative { -scaled.clone() } else { scaled };
        if first {
            if negative {
                out.push('-');
            }
            first = false;
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        for (i, &l) in letters.iter().enumerate() {
            if i + 1 < letters.len() {
                out.push('[');
                out.push_str(ctx.generator(l).name());
                out.push(',');
            } else {
                out.push_str(ctx.generator(l).name());
                out.push_str(&"]".repeat(letters.len() - 1));
            }
        }
    }
    debug_assert!(&dynkin_project(x)? == x);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraContext;
    use crate::frac;
    use crate::frontend::parse::parse_expression;

    #[test]
    fn words_style_examples() {
        let ctx = AlgebraContext::new(&[("v1", 0), ("v2", 0)], 4).unwrap();
        let v1 = Element::generator(&ctx, "v1").unwrap();
        let v2 = Element::generator(&ctx, "v2").unwrap();
        let zero = Element::zero(&ctx);
        assert_eq!(format_element(&zero, Style::Words).unwrap(), "0");
        let half = v1.bracket(&v2).unwrap().scale(&frac(1, 2));
        assert_eq!(
            format_element(&half, Style::Words).unwrap(),
            "1/2*v1.v2 - 1/2*v2.v1"
        );
    }

    #[test]
    fn brackets_style_round_trips_through_parse() {
        let ctx = AlgebraContext::new(&[("v1", 0), ("v2", 0)], 4).unwrap();
        let v1 = Element::generator(&ctx, "v1").unwrap();
        let v2 = Element::generator(&ctx, "v2").unwrap();
        let lie = &v1.bracket(&v2).unwrap().scale(&frac(3, 7)) + &v1;
        let text = format_element(&lie, Style::Brackets).unwrap();
        assert_eq!(parse_expression(&text, &ctx, None).unwrap(), lie);
        // non-Lie elements fall back to words
        let word = v1.mul(&v2).unwrap();
        assert_eq!(
            format_element(&word, Style::Brackets).unwrap(),
            word.to_string()
        );
    }

    #[test]
    fn words_style_round_trips_through_parse() {
        let ctx = AlgebraContext::new(&[("u", 1), ("v", 0)], 4).unwrap();
        let u = Element::generator(&ctx, "u").unwrap();
        let v = Element::generator(&ctx, "v").unwrap();
        let x = &(&u.mul(&v).unwrap().scale(&frac(-5, 3)) + &v)
            + &Element::from_scalar(&ctx, frac(7, 2));
        let text = format_element(&x, Style::Words).unwrap();
        assert_eq!(parse_expression(&text, &ctx, None).unwrap(), x);
    }
}
