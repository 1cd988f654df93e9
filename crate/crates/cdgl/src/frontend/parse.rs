//! Expression parser for elements.
//!
//! Grammar:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := rational ['*' factor] | factor
//! factor   := word | '[' expr ',' expr ']' | call '(' expr {',' expr} ')' | '(' expr ')'
//! word     := name ('.' name)*
//! rational := ['-'] int ['/' uint]
//! ```
//!
//! Call names: `bch`, `bullet`, `exp_ad`, `eps_ad`, `xi_ad`, `sigma`, `tau`,
//! `d`, `theta_tilde`, `inv`. The calls `bullet`, `sigma`, `tau`, `d`, and
//! `theta_tilde` need a differential; `theta_tilde` additionally needs the
//! differential to pair generators one-to-one so that the section can be
//! reconstructed from it.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{AlgebraContext, Element, Word};
use crate::differential::{pairing_section, theta_tilde, Derivation};
use crate::error::{Error, Result};
use crate::series::CoefficientTable;
use crate::Rat;

/// Call names usable in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallName {
    Bch,
    Bullet,
    ExpAd,
    EpsAd,
    XiAd,
    Sigma,
    Tau,
    Differential,
    ThetaTilde,
    Inv,
}

impl CallName {
    fn from_name(name: &str) -> Option<CallName> {
        Some(match name {
            "bch" => CallName::Bch,
            "bullet" => CallName::Bullet,
            "exp_ad" => CallName::ExpAd,
            "eps_ad" => CallName::EpsAd,
            "xi_ad" => CallName::XiAd,
            "sigma" => CallName::Sigma,
            "tau" => CallName::Tau,
            "d" => CallName::Differential,
            "theta_tilde" => CallName::ThetaTilde,
            "inv" => CallName::Inv,
            _ => return None,
        })
    }

    fn arity(&self) -> usize {
        match self {
            CallName::Differential | CallName::ThetaTilde | CallName::Inv => 1,
            _ => 2,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            CallName::Bch => "bch",
            CallName::Bullet => "bullet",
            CallName::ExpAd => "exp_ad",
            CallName::EpsAd => "eps_ad",
            CallName::XiAd => "xi_ad",
            CallName::Sigma => "sigma",
            CallName::Tau => "tau",
            CallName::Differential => "d",
            CallName::ThetaTilde => "theta_tilde",
            CallName::Inv => "inv",
        }
    }
}

/// Abstract syntax of element expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(Rat),
    Word(Vec<String>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    ScalarMul(Rat, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Call(CallName, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    name.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            tokens.push((Tok::Name(name), tline, tcol));
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            tokens.push((Tok::Number(digits), tline, tcol));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            other => {
                return Err(Error::Parse {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        bump(&mut chars);
        tokens.push((tok, tline, tcol));
    }
    tokens.push((Tok::Eof, line, col));
    Ok(Lexer { tokens, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.tokens[self.pos];
        (*l, *c)
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.peek() == tok {
            self.next();
            Ok(())
        } else {
            let (line, col) = self.here();
            Err(Error::Parse {
                line,
                col,
                message: format!(
                    "expected {}, found {}",
                    tok.describe(),
                    self.peek().describe()
                ),
            })
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse {
            line,
            col,
            message: message.into(),
        })
    }
}

/// Parses expression text into an AST; arity errors are caught here.
pub fn parse_text(text: &str) -> Result<Expr> {
    let mut lx = lex(text)?;
    let expr = parse_expr(&mut lx)?;
    if lx.peek() != &Tok::Eof {
        return lx.error(format!("trailing input: {}", lx.peek().describe()));
    }
    Ok(expr)
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = if lx.peek() == &Tok::Minus {
        lx.next();
        Expr::Neg(Box::new(parse_term(lx)?))
    } else {
        parse_term(lx)?
    };
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.next();
                acc = Expr::Add(Box::new(acc), Box::new(parse_term(lx)?));
            }
            Tok::Minus => {
                lx.next();
                acc = Expr::Sub(Box::new(acc), Box::new(parse_term(lx)?));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_rational(lx: &mut Lexer, negative: bool) -> Result<Rat> {
    let numer = match lx.next() {
        Tok::Number(digits) => digits,
        other => return lx.error(format!("expected a number, found {}", other.describe())),
    };
    let mut denom = String::from("1");
    if lx.peek() == &Tok::Slash {
        lx.next();
        denom = match lx.next() {
            Tok::Number(digits) => digits,
            other => {
                return lx.error(format!(
                    "expected a denominator, found {}",
                    other.describe()
                ))
            }
        };
    }
    let n = BigInt::from_str(&numer).map_err(|_| Error::InvalidRational(numer.clone()))?;
    let d = BigInt::from_str(&denom).map_err(|_| Error::InvalidRational(denom.clone()))?;
    if d.is_zero() {
        return Err(Error::InvalidRational(format!("{numer}/{denom}")));
    }
    let r = Rat::new(n, d);
    Ok(if negative { -r } else { r })
}

fn parse_term(lx: &mut Lexer) -> Result<Expr> {
    if matches!(lx.peek(), Tok::Number(_)) {
        let r = parse_rational(lx, false)?;
        if lx.peek() == &Tok::Star {
            lx.next();
            let f = parse_factor(lx)?;
            return Ok(Expr::ScalarMul(r, Box::new(f)));
        }
        return Ok(Expr::Rational(r));
    }
    parse_factor(lx)
}

fn parse_factor(lx: &mut Lexer) -> Result<Expr> {
    match lx.peek().clone() {
        Tok::Name(name) => {
            lx.next();
            if lx.peek() == &Tok::LParen {
                let call = match CallName::from_name(&name) {
                    Some(c) => c,
                    None => return lx.error(format!("unknown function `{name}`")),
                };
                lx.expect(&Tok::LParen)?;
                let mut args = vec![parse_expr(lx)?];
                while lx.peek() == &Tok::Comma {
                    lx.next();
                    args.push(parse_expr(lx)?);
                }
                lx.expect(&Tok::RParen)?;
                if args.len() != call.arity() {
                    return lx.error(format!(
                        "`{}` takes {} argument(s), got {}",
                        call.name(),
                        call.arity(),
                        args.len()
                    ));
                }
                return Ok(Expr::Call(call, args));
            }
            let mut letters = vec![name];
            while lx.peek() == &Tok::Dot {
                lx.next();
                match lx.next() {
                    Tok::Name(n) => letters.push(n),
                    other => {
                        return lx.error(format!(
                            "expected a generator after `.`, found {}",
                            other.describe()
                        ))
                    }
                }
            }
            Ok(Expr::Word(letters))
        }
        Tok::LBracket => {
            lx.next();
            let left = parse_expr(lx)?;
            lx.expect(&Tok::Comma)?;
            let right = parse_expr(lx)?;
            lx.expect(&Tok::RBracket)?;
            Ok(Expr::Bracket(Box::new(left), Box::new(right)))
        }
        Tok::LParen => {
            lx.next();
            let inner = parse_expr(lx)?;
            lx.expect(&Tok::RParen)?;
            Ok(inner)
        }
        other => lx.error(format!(
            "expected an expression, found {}",
            other.describe()
        )),
    }
}

/// Evaluates an AST over a context, with an optional differential for the
/// calls that need one.
pub fn eval(expr: &Expr, ctx: &Arc<AlgebraContext>, d: Option<&Derivation>) -> Result<Element> {
    match expr {
        Expr::Rational(r) => Ok(Element::from_scalar(ctx, r.clone())),
        Expr::Word(names) => {
            let mut letters = Vec::with_capacity(names.len());
            for name in names {
                let idx = ctx
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                letters.push(idx);
            }
            Ok(Element::from_word(
                ctx,
                Word::new(letters),
                Rat::from_integer(BigInt::from(1u8)),
            ))
        }
        Expr::Neg(inner) => Ok(-&eval(inner, ctx, d)?),
        Expr::Add(l, r) => Ok(&eval(l, ctx, d)? + &eval(r, ctx, d)?),
        Expr::Sub(l, r) => Ok(&eval(l, ctx, d)? - &eval(r, ctx, d)?),
        Expr::ScalarMul(c, inner) => Ok(eval(inner, ctx, d)?.scale(c)),
        Expr::Bracket(l, r) => eval(l, ctx, d)?.bracket(&eval(r, ctx, d)?),
        Expr::Call(call, args) => {
            let values: Vec<Element> = args
                .iter()
                .map(|a| eval(a, ctx, d))
                .collect::<Result<_>>()?;
            let diff = || -> Result<&Derivation> {
                d.ok_or_else(|| Error::NeedsDifferential(call.name().to_string()))
            };
            match call {
                CallName::Bch => crate::bch::bch(&values[0], &values[1]),
                CallName::Bullet => crate::bch::bullet(diff()?, &values[0], &values[1]),
                CallName::ExpAd => crate::bch::conjugate_by_exp(&values[0], &values[1]),
                CallName::EpsAd => {
                    let eps = CoefficientTable::epsilon(ctx.truncation());
                    crate::series::ad_series(eps.values(), &values[0], &values[1])
                }
                CallName::XiAd => {
                    let xi = CoefficientTable::xi(ctx.truncation());
                    crate::series::ad_series(xi.values(), &values[0], &values[1])
                }
                CallName::Sigma => crate::correctors::sigma(diff()?, &values[0], &values[1]),
                CallName::Tau => crate::correctors::tau(diff()?, &values[0], &values[1]),
                CallName::Differential => diff()?.apply(&values[0]),
                CallName::ThetaTilde => {
                    let theta = pairing_section(diff()?)?;
                    theta_tilde(&theta, &values[0])
                }
                CallName::Inv => Ok(-&values[0]),
            }
        }
    }
}

/// Parses and evaluates expression text against a context.
pub fn parse_expression(
    text: &str,
    ctx: &Arc<AlgebraContext>,
    d: Option<&Derivation>,
) -> Result<Element> {
    eval(&parse_text(text)?, ctx, d)
}
