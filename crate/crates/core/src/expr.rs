//! Parser for polynomials in `x`, `y` with coefficients in `Q(phi)`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | power)*     juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := INT | 'phi' | 'phibar' | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Division is
//! only by nonzero constants, which lets every printed polynomial be read
//! back. Positions are byte offsets into the input.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::golden::GoldenRational;

/// Largest exponent literal accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

/// Largest total degree an intermediate result may reach.
pub const MAX_PARSE_DEGREE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Int,
    Phi,
    Phibar,
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = |kind| Some((kind, 1));
        let (kind, len) = match ch {
            b'+' => single(TokenKind::Plus),
            b'-' => single(TokenKind::Minus),
            b'*' => single(TokenKind::Star),
            b'/' => single(TokenKind::Slash),
            b'^' => single(TokenKind::Caret),
            b'(' => single(TokenKind::LParen),
            b')' => single(TokenKind::RParen),
            b'x' => single(TokenKind::X),
            b'y' => single(TokenKind::Y),
            b'0'..=b'9' => {
                let len = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                Some((TokenKind::Int, len))
            }
            _ if bytes[i..].starts_with(b"phibar") => Some((TokenKind::Phibar, 6)),
            _ if bytes[i..].starts_with(b"phi") => Some((TokenKind::Phi, 3)),
            _ => None,
        }
        .ok_or_else(|| {
            let shown = text[start..].chars().next().unwrap_or('?');
            syntax(start, format!("unexpected character {shown:?}"))
        })?;
        i += len;
        out.push(Token {
            kind,
            lexeme: text[start..i].to_string(),
            pos: start,
        });
    }
    Ok(out)
}

pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens: &tokens,
        at: 0,
        end: text.len(),
    };
    let poly = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(syntax(t.pos, format!("unexpected {:?}", t.lexeme)));
    }
    Ok(poly)
}

/// Parses a constant expression, e.g. `1/2 + 3/2*phi`.
pub fn parse_constant(text: &str) -> Result<GoldenRational> {
    parse_poly(text)?
        .as_constant()
        .ok_or_else(|| syntax(0, "expected a constant without x or y"))
}

impl FromStr for BiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl FromStr for GoldenRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_constant(s)
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.at);
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        while let Some(kind @ (TokenKind::Plus | TokenKind::Minus)) = self.peek_kind() {
            self.bump();
            let rhs = self.term()?;
            acc = if kind == TokenKind::Plus {
                acc + rhs
            } else {
                acc - rhs
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek_kind() {
                Some(TokenKind::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = checked_mul(&acc, &rhs, pos)?;
                }
                Some(TokenKind::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    let inv = rhs
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| syntax(pos, "division is only by a nonzero constant"))?
                        .inv()?;
                    acc = acc.scale(&inv);
                }
                Some(
                    TokenKind::Int
                    | TokenKind::Phi
                    | TokenKind::Phibar
                    | TokenKind::X
                    | TokenKind::Y
                    | TokenKind::LParen,
                ) => {
                    let rhs = self.power()?;
                    acc = checked_mul(&acc, &rhs, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.primary()?;
        if self.peek_kind() != Some(TokenKind::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let exp = match self.bump() {
            Some(t) if t.kind == TokenKind::Int => {
                t.lexeme.parse::<u32>().ok().filter(|&e| e <= MAX_EXPONENT)
            }
            _ => return Err(syntax(pos, "expected an integer exponent after '^'")),
        }
        .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        let degree = base.total_degree().unwrap_or(0) * exp as usize;
        if degree > MAX_PARSE_DEGREE {
            return Err(syntax(pos, format!("degree {degree} exceeds {MAX_PARSE_DEGREE}")));
        }
        Ok(base.pow(exp))
    }

    fn primary(&mut self) -> Result<BiPoly> {
        let pos = self.pos();
        let Some(tok) = self.bump() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        match tok.kind {
            TokenKind::Int => {
                let n: BigInt = tok.lexeme.parse().map_err(|_| syntax(pos, "bad integer"))?;
                Ok(BiPoly::constant(GoldenRational::from_int(n)))
            }
            TokenKind::Phi => Ok(BiPoly::constant(GoldenRational::phi())),
            TokenKind::Phibar => Ok(BiPoly::constant(GoldenRational::phibar())),
            TokenKind::X => Ok(BiPoly::x()),
            TokenKind::Y => Ok(BiPoly::y()),
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(t) if t.kind == TokenKind::RParen => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            _ => Err(syntax(pos, format!("unexpected {:?}", tok.lexeme))),
        }
    }
}

fn checked_mul(a: &BiPoly, b: &BiPoly, pos: usize) -> Result<BiPoly> {
    let degree = a.total_degree().unwrap_or(0) + b.total_degree().unwrap_or(0);
    if degree > MAX_PARSE_DEGREE {
        return Err(syntax(pos, format!("degree {degree} exceeds {MAX_PARSE_DEGREE}")));
    }
    Ok(a * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::pk;
    use crate::identities::{octic_h, quartic_f};

    #[test]
    fn documented_expressions() {
        assert_eq!(parse_poly("x^2-1").unwrap(), pk(2));
        assert_eq!(parse_poly("(x-y)^2*((x-y)^2-5)").unwrap(), quartic_f());
        assert_eq!(parse_poly("(x-y)^2((x-y)^2-5)").unwrap(), quartic_f());
        assert_eq!(parse_poly("(x*y+1)*x^2*(x^2-1)*(x^2-4)").unwrap(), octic_h());
        assert_eq!(parse_poly("phi*phibar").unwrap(), BiPoly::int(-1));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2").unwrap(), -BiPoly::x().pow(2));
        assert_eq!(parse_poly("(-x)^2").unwrap(), BiPoly::x().pow(2));
        assert_eq!(
            parse_poly("2x y").unwrap(),
            BiPoly::int(2) * BiPoly::x() * BiPoly::y()
        );
        assert_eq!(parse_poly("x - y").unwrap(), BiPoly::x() - BiPoly::y());
        assert_eq!(parse_poly("x*-y").unwrap(), -(BiPoly::x() * BiPoly::y()));
        assert_eq!(parse_poly("1 - 2 - 3").unwrap(), BiPoly::int(-4));
        assert_eq!(parse_poly("xy").unwrap(), BiPoly::x() * BiPoly::y());
        assert_eq!(
            parse_poly("-3/2*x").unwrap(),
            BiPoly::x().scale(&GoldenRational::from_parts(-3, 0, 2).unwrap())
        );
        assert_eq!(
            parse_poly("x/phi").unwrap(),
            BiPoly::x().scale(&GoldenRational::from_parts(-1, 1, 1).unwrap())
        );
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_poly(s) {
            Err(Error::Syntax { pos, .. }) => pos,
            other => panic!("{s:?} gave {other:?}"),
        };
        assert_eq!(pos("x^^2"), 2);
        assert_eq!(pos("x +"), 3);
        assert_eq!(pos("(x"), 2);
        assert_eq!(pos("x)"), 1);
        assert_eq!(pos("z"), 0);
        assert_eq!(pos("x^-1"), 2);
        assert_eq!(pos("x^65"), 2);
        assert_eq!(pos("x/y"), 1);
        assert_eq!(pos("x/0"), 1);
        assert_eq!(pos("((x+y)^64)^64"), 11);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("1 é"), 2);
    }

    #[test]
    fn tokens() {
        let t = tokenize("phibar*phi x").unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![TokenKind::Phibar, TokenKind::Star, TokenKind::Phi, TokenKind::X]
        );
        assert_eq!(t.iter().map(|t| t.pos).collect::<Vec<_>>(), vec![0, 6, 7, 11]);
    }

    #[test]
    fn constants() {
        assert_eq!(
            "1/2 + 3/2*phi".parse::<GoldenRational>().unwrap(),
            GoldenRational::from_parts(1, 3, 2).unwrap()
        );
        assert!("x + 1".parse::<GoldenRational>().is_err());
    }
}
