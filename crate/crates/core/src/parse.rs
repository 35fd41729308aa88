//! Polynomial text parser.
//!
//! Grammar (ASCII, whitespace insignificant, no implicit multiplication):
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' natural)?
//! base    := rational | variable | '(' expr ')'
//! rational:= natural ('/' natural)?
//! ```
//!
//! Unary minus is only allowed at the head of an expression, which
//! includes the position right after `(`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, ParseError, ParseErrorKind};
use crate::poly::{Polynomial, VariableContext};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Number(String),
    Ident(String),
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\r' | '\n' => i += 1,
                '+' => {
                    out.push((i, Tok::Plus));
                    i += 1;
                }
                '-' => {
                    out.push((i, Tok::Minus));
                    i += 1;
                }
                '*' => {
                    out.push((i, Tok::Star));
                    i += 1;
                }
                '^' => {
                    out.push((i, Tok::Caret));
                    i += 1;
                }
                '/' => {
                    out.push((i, Tok::Slash));
                    i += 1;
                }
                '(' => {
                    out.push((i, Tok::LParen));
                    i += 1;
                }
                ')' => {
                    out.push((i, Tok::RParen));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((start, Tok::Number(text[start..i].to_string())));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    out.push((start, Tok::Ident(text[start..i].to_string())));
                }
                other => {
                    return Err(ParseError {
                        position: i,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a VariableContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.here(),
            kind,
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(ParseErrorKind::Expected(what))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let pos = self.here();
            match self.bump() {
                Some((_, Tok::Number(digits))) => {
                    let e: u64 = digits.parse().map_err(|_| ParseError {
                        position: pos,
                        kind: ParseErrorKind::BadLiteral(format!("exponent `{digits}` too large")),
                    })?;
                    Ok(base.pow(e))
                }
                Some(_) => Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::Expected("a natural-number exponent"),
                }),
                None => Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::UnexpectedEnd,
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some((_, Tok::Number(digits))) => {
                let numer: BigInt = digits.parse().expect("digits parse as integer");
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    let dpos = self.here();
                    match self.bump() {
                        Some((_, Tok::Number(den_digits))) => {
                            let denom: BigInt =
                                den_digits.parse().expect("digits parse as integer");
                            if denom.is_zero() {
                                return Err(ParseError {
                                    position: dpos,
                                    kind: ParseErrorKind::BadLiteral(
                                        "denominator must be positive".to_string(),
                                    ),
                                });
                            }
                            Ok(Polynomial::constant(
                                self.ctx.len(),
                                Rational::new(numer, denom),
                            ))
                        }
                        Some(_) => Err(ParseError {
                            position: dpos,
                            kind: ParseErrorKind::Expected("a positive integer denominator"),
                        }),
                        None => Err(ParseError {
                            position: dpos,
                            kind: ParseErrorKind::UnexpectedEnd,
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.ctx.len(),
                        Rational::from_integer(numer),
                    ))
                }
            }
            Some((p, Tok::Ident(name))) => match self.ctx.index_of(&name) {
                Some(idx) => Ok(Polynomial::variable(self.ctx.len(), idx)),
                None => Err(ParseError {
                    position: p,
                    kind: ParseErrorKind::UnknownVariable(name),
                }),
            },
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => Err(ParseError {
                position: pos,
                kind: ParseErrorKind::Expected("a literal, variable, or `(`"),
            }),
            None => Err(ParseError {
                position: pos,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
        }
    }
}

/// Parses polynomial text against a variable context, returning the
/// canonical sparse form.
pub fn parse_polynomial(text: &str, ctx: &VariableContext) -> Result<Polynomial, Error> {
    let tokens = Lexer::run(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        ctx,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(parser.err(ParseErrorKind::TrailingInput)));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;

    fn ctx_xy() -> VariableContext {
        VariableContext::new(["x", "y"]).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn direct_transcription() {
        let p = parse_polynomial("2*x^2 - y", &ctx_xy()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&ExponentVector::new(vec![2, 0])), rat(2));
        assert_eq!(p.coefficient(&ExponentVector::new(vec![0, 1])), rat(-1));
    }

    #[test]
    fn expansion_cancels_constants() {
        // (x-1)*(y-1) - 1 = xy - x - y + 1 - 1
        let p = parse_polynomial("(x-1)*(y-1) - 1", &ctx_xy()).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coefficient(&ExponentVector::new(vec![1, 1])), rat(1));
        assert_eq!(p.coefficient(&ExponentVector::new(vec![1, 0])), rat(-1));
        assert_eq!(p.coefficient(&ExponentVector::new(vec![0, 1])), rat(-1));
    }

    #[test]
    fn zero_literal_is_empty_map() {
        let p = parse_polynomial("0", &ctx_xy()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn rational_literals() {
        let p = parse_polynomial("1/2*x + 3/4", &ctx_xy()).unwrap();
        assert_eq!(
            p.coefficient(&ExponentVector::new(vec![1, 0])),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            p.coefficient(&ExponentVector::new(vec![0, 0])),
            Rational::new(3.into(), 4.into())
        );
    }

    #[test]
    fn unary_minus_at_head_and_after_paren() {
        let ctx = ctx_xy();
        let a = parse_polynomial("-x + 1", &ctx).unwrap();
        let b = parse_polynomial("(-x + 1)", &ctx).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("x*(-y + 1)", &ctx).unwrap();
        assert_eq!(c, parse_polynomial("x - x*y", &ctx).unwrap());
    }

    #[test]
    fn error_positions() {
        let ctx = ctx_xy();
        match parse_polynomial("x + $", &ctx) {
            Err(Error::Parse(e)) => {
                assert_eq!(e.position, 4);
                assert!(matches!(e.kind, ParseErrorKind::UnexpectedChar('$')));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial("x + z", &ctx) {
            Err(Error::Parse(e)) => {
                assert_eq!(e.position, 4);
                assert!(matches!(e.kind, ParseErrorKind::UnknownVariable(ref v) if v == "z"));
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(parse_polynomial("1/0", &ctx).is_err());
        assert!(parse_polynomial("x y", &ctx).is_err(), "implicit multiplication");
        assert!(parse_polynomial("x - -y", &ctx).is_err(), "minus only at head");
        assert!(parse_polynomial("", &ctx).is_err());
        assert!(parse_polynomial("(x", &ctx).is_err());
    }

    #[test]
    fn exponent_zero_and_big_literals() {
        let ctx = ctx_xy();
        assert_eq!(
            parse_polynomial("x^0", &ctx).unwrap(),
            Polynomial::one(2)
        );
        let p = parse_polynomial("123456789012345678901234567890", &ctx).unwrap();
        assert_eq!(
            p.coefficient(&ExponentVector::zeros(2)).to_string(),
            "123456789012345678901234567890"
        );
    }
}
