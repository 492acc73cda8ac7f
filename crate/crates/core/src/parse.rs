//! Recursive-descent parser for polynomial text.
//!
//! Accepts the canonical printed syntax plus parentheses, `^` on any
//! factor, and division by a nonzero constant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l,
                column: col,
            });
            continue;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
        i += 1;
        column += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Tok::Slash => {
                    let slash = self.bump();
                    let divisor = self.power()?;
                    match divisor.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::one() / c)),
                        Some(_) => return self.err(&slash, "division by zero"),
                        None => return self.err(&slash, "division by a non-constant"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Num(n) => match u32::try_from(n) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => self.err(&t, "exponent too large"),
            },
            _ => self.err(&caret, "expected a non-negative integer exponent after `^`"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => Ok(Polynomial::constant(self.ring, Rational::from_integer(n))),
            Tok::Ident(ref name) => match self.ring.index_of(name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => self.err(&t, format!("unknown variable `{name}`")),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.err(&close, "expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            _ => self.err(&t, "expected a number, variable or `(`"),
        }
    }
}

impl Polynomial {
    /// Parse polynomial text in `ring`. Error positions are 1-based.
    pub fn parse(ring: &Ring, text: &str) -> Result<Polynomial> {
        let toks = tokenize(text)?;
        let mut p = Parser { ring, toks, pos: 0 };
        let out = p.expr()?;
        let t = p.peek().clone();
        if t.tok != Tok::End {
            return p.err(&t, "unexpected trailing input");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ring() -> Ring {
        Ring::degrevlex(&["z0", "z1", "z2", "w1", "w2", "c32"])
    }

    #[test]
    fn canonical_example() {
        let r = ring();
        let f = r.parse("z0^2 - 2/3*c32*z0 + 1").unwrap();
        assert_eq!(f.len(), 3);
        let g = r.parse(&f.to_string()).unwrap();
        assert_eq!(f.terms(), g.terms());
    }

    #[test]
    fn halves_and_parentheses() {
        let r = ring();
        let f = r.parse("1/2*(z1*w2+z2*w1)").unwrap();
        let g = r.parse("1/2*z1*w2 + 1/2*z2*w1").unwrap();
        assert_eq!(f, g);
        assert_eq!(
            r.parse("(z1 - z2)^2").unwrap(),
            r.parse("z1^2 - 2*z1*z2 + z2^2").unwrap()
        );
        assert_eq!(r.parse("-3/6").unwrap().as_constant(), Some(rat(-1, 2)));
    }

    #[test]
    fn dangling_caret() {
        let r = ring();
        match r.parse("z1^") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_position() {
        let r = ring();
        match r.parse("z1 + q7") {
            Err(Error::Parse {
                column, message, ..
            }) => {
                assert_eq!(column, 6);
                assert!(message.contains("q7"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_junk() {
        let r = ring();
        assert!(r.parse("z1 +").is_err());
        assert!(r.parse("z1 z2").is_err());
        assert!(r.parse("z1/z2").is_err());
        assert!(r.parse("z1/0").is_err());
        assert!(r.parse("z1 # 2").is_err());
        assert!(r.parse("").is_err());
    }
}
