//! Text syntax for integral 2-forms.
//!
//! ```text
//! form := '0' | ['-'] term (('+' | '-') term)*
//! term := [uint '*'] gen '^' gen
//! gen  := ('x' | 'y') uint
//! ```
//! Whitespace is ignored. Subscripts run over `1..=g`.

use std::fmt;
use std::sync::Arc;

use brauer_core::{AlgebraContext, MultiVector};
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("position {pos}: expected {expected}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("position {pos}: subscript {index} outside 1..={g}")]
    SubscriptOutOfRange { pos: usize, index: u64, g: usize },
    #[error("position {pos}: number too large")]
    Overflow { pos: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub y: bool,
    pub index: usize,
}

impl Gen {
    /// Position in the ordering `x1, y1, x2, y2, …`, from 1.
    fn generator_index(self) -> usize {
        2 * (self.index - 1) + self.y as usize + 1
    }

    fn from_bit(bit: u32) -> Self {
        Self {
            y: bit % 2 == 1,
            index: bit as usize / 2 + 1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.y { 'y' } else { 'x' }, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub coefficient: u64,
    pub left: Gen,
    pub right: Gen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormExpression {
    pub source: String,
    pub g: usize,
    pub terms: Vec<Term>,
}

impl FormExpression {
    pub fn to_multivector(&self, ctx: &Arc<AlgebraContext>) -> MultiVector {
        let mut out = MultiVector::zero(ctx);
        for t in &self.terms {
            let c = BigInt::from(t.coefficient);
            let c = if t.negative { -c } else { c };
            let w = MultiVector::generator(ctx, t.left.generator_index())
                .wedge(&MultiVector::generator(ctx, t.right.generator_index()))
                .scaled_int(&c);
            out = out + w;
        }
        out
    }
}

impl fmt::Display for FormExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if t.coefficient != 1 {
                write!(f, "{}*", t.coefficient)?;
            }
            write!(f, "{}^{}", t.left, t.right)?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    source: &'a str,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.source.len(), |(p, _)| p)
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".into(), |(_, c)| format!("{c:?}"))
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        Err(ParseError::Unexpected {
            pos: self.pos(),
            expected,
            found: self.found(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().map(|(_, x)| x) == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<Option<u64>, ParseError> {
        let pos = self.pos();
        let mut value: Option<u64> = None;
        while let Some((_, c)) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = Some(
                value
                    .unwrap_or(0)
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64))
                    .ok_or(ParseError::Overflow { pos })?,
            );
            self.at += 1;
        }
        Ok(value)
    }

    fn gen(&mut self, g: usize) -> Result<Gen, ParseError> {
        let y = match self.peek() {
            Some((_, 'x')) => false,
            Some((_, 'y')) => true,
            _ => return self.fail("generator x<k> or y<k>"),
        };
        self.at += 1;
        let pos = self.pos();
        let Some(index) = self.uint()? else {
            return self.fail("subscript");
        };
        if index == 0 || index > g as u64 {
            return Err(ParseError::SubscriptOutOfRange { pos, index, g });
        }
        Ok(Gen {
            y,
            index: index as usize,
        })
    }

    fn term(&mut self, negative: bool, g: usize) -> Result<Term, ParseError> {
        let coefficient = match self.uint()? {
            Some(c) => {
                if !self.eat('*') {
                    return self.fail("'*'");
                }
                c
            }
            None => 1,
        };
        let left = self.gen(g)?;
        if !self.eat('^') {
            return self.fail("'^'");
        }
        let right = self.gen(g)?;
        Ok(Term {
            negative,
            coefficient,
            left,
            right,
        })
    }
}

pub fn parse_form(text: &str, g: usize) -> Result<FormExpression, ParseError> {
    let mut lx = Lexer {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        at: 0,
        source: text,
    };
    let done = |terms| FormExpression {
        source: text.to_string(),
        g,
        terms,
    };
    if lx.chars.len() == 1 && lx.eat('0') {
        return Ok(done(Vec::new()));
    }
    let mut terms = vec![{
        let negative = lx.eat('-');
        lx.term(negative, g)?
    }];
    while lx.peek().is_some() {
        let negative = if lx.eat('+') {
            false
        } else if lx.eat('-') {
            true
        } else {
            return lx.fail("'+' or '-'");
        };
        terms.push(lx.term(negative, g)?);
    }
    Ok(done(terms))
}

/// Writes an integral 2-form back in the grammar, one term per basis
/// element with the lower generator first.
pub fn print_form(b: &MultiVector) -> String {
    let g = b.context().g();
    let terms = b
        .terms()
        .map(|(blade, c)| {
            assert!(
                blade.count_ones() == 2 && c.is_integer(),
                "print_form needs an integral 2-form"
            );
            let c = c.numer();
            let lo = blade.trailing_zeros();
            let hi = 31 - blade.leading_zeros();
            Term {
                negative: c.is_negative(),
                coefficient: u64::try_from(c.abs()).expect("coefficient fits in u64"),
                left: Gen::from_bit(lo),
                right: Gen::from_bit(hi),
            }
        })
        .collect();
    FormExpression {
        source: String::new(),
        g,
        terms,
    }
    .to_string()
}
