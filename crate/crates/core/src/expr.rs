//! A small expression language for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*        juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] int | '^' '(' ['-'] int ')')?
//! atom   := int | 'x' | 'χ' | 'f' | 'g' | 'f_k' '(' ['-'] int ')' | '(' expr ')'
//! ```
//!
//! `f` and `f_k(k)` are `(1 + x^k)/(1 - x^k)` computed in the chosen ring;
//! `g` exists in the truncated ring only. Error positions count characters
//! from 0.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclic_ring::{IdealKind, RingElement, RingModulus};
use crate::error::{Error, Result};
use crate::special::{elem_g, normalize_k};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    F,
    Fk,
    G,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            'x' | 'χ' => Tok::X,
            'g' => Tok::G,
            'f' => {
                if chars.get(i + 1) == Some(&'_') && chars.get(i + 2) == Some(&'k') {
                    i += 3;
                    out.push((start, Tok::Fk));
                    continue;
                }
                Tok::F
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' | '×' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character {other:?}") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    modulus: RingModulus,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    /// Wraps arithmetic errors with the position of the operator.
    fn at_pos<T>(&self, pos: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::NotInvertible { .. } => Error::Parse { pos, msg: format!("{e}") },
            other => other,
        })
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if op == Tok::Plus { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    let inv = self.at_pos(pos, rhs.inverse())?;
                    acc = &acc * &inv;
                }
                Some(Tok::Int(_) | Tok::X | Tok::F | Tok::Fk | Tok::G | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RingElement> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => {
                self.at -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn small(&self, v: BigInt, pos: usize) -> Result<i64> {
        i64::try_from(v).map_err(|_| Error::Parse { pos, msg: "integer out of range".into() })
    }

    fn power(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.at += 1;
        }
        let epos = self.pos();
        let e = self.signed_int()?;
        let e = self.small(e, epos)?;
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        self.at_pos(pos, base.pow(e))
    }

    fn f_k(&self, k: i64, pos: usize) -> Result<RingElement> {
        let n = self.modulus.n();
        let k = normalize_k(n, k).map_err(|e| Error::Parse { pos, msg: e.to_string() })? as i64;
        let one = RingElement::one(self.modulus);
        let xk = RingElement::chi_pow(self.modulus, k);
        let inv = self.at_pos(pos, (&one - &xk).inverse())?;
        Ok(&(&one + &xk) * &inv)
    }

    fn atom(&mut self) -> Result<RingElement> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(RingElement::constant(self.modulus, &BigRational::from_integer(v))),
            Some(Tok::X) => Ok(RingElement::chi_pow(self.modulus, 1)),
            Some(Tok::F) => self.f_k(1, pos),
            Some(Tok::Fk) => {
                self.expect(Tok::LParen, "`(` after f_k")?;
                let kpos = self.pos();
                let k = self.signed_int()?;
                let k = self.small(k, kpos)?;
                self.expect(Tok::RParen, "`)`")?;
                self.f_k(k, pos)
            }
            Some(Tok::G) => {
                if self.modulus.kind() != IdealKind::Truncated {
                    return Err(Error::Parse { pos, msg: "g is only defined in the truncated ring".into() });
                }
                elem_g(self.modulus.n()).map_err(|e| Error::Parse { pos, msg: e.to_string() })
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Some(_) => {
                self.at -= 1;
                self.err("expected a number, x, f, f_k(k), g or `(`")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and evaluates `src` in the ring `modulus`.
pub fn parse_element(src: &str, modulus: RingModulus) -> Result<RingElement> {
    let toks = lex(src)?;
    let end = src.chars().count();
    let mut p = Parser { toks, at: 0, end, modulus };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(n: usize) -> RingModulus {
        RingModulus::truncated(n).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn examples() {
        let f = parse_element("f", tr(4)).unwrap();
        assert_eq!(f.coeffs(), vec![q(1, 2), q(1, 1), q(1, 2)]);
        let inv = parse_element("(1-x)^-1", tr(4)).unwrap();
        assert_eq!(inv.coeffs(), vec![q(3, 4), q(1, 2), q(1, 4)]);
        assert!(parse_element("1+x+x^2+x^3", tr(4)).unwrap().is_zero());
        assert_eq!(parse_element("(1-χ)^(-1)", tr(4)).unwrap(), inv);
    }

    #[test]
    fn identities() {
        let m = tr(12);
        assert_eq!(parse_element("f_k(5)*(1-x^5)", m).unwrap(), parse_element("1+x^5", m).unwrap());
        assert!(parse_element("g*f*(x - x^11) - (x - x^11)", m).unwrap().is_zero());
        assert_eq!(parse_element("2x(x+1)", m).unwrap(), parse_element("2*x^2 + 2*x", m).unwrap());
        assert_eq!(parse_element("-x^-1", m).unwrap(), parse_element("-(x^11)", m).unwrap());
        assert_eq!(parse_element("3/4", m).unwrap().coeff(0), q(3, 4));
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str, m| match parse_element(s, m) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("1 + $", tr(4)), 4);
        assert_eq!(pos("(1+x", tr(4)), 4);
        assert_eq!(pos("1 +", tr(4)), 3);
        assert_eq!(pos("1/(1-x)", RingModulus::group_ring(4).unwrap()), 1);
        assert_eq!(pos("x^", tr(4)), 2);
        assert_eq!(pos("f_k(2)", tr(4)), 0);
        assert_eq!(pos("g", RingModulus::group_ring(4).unwrap()), 0);
        assert_eq!(pos("1 2 )", tr(4)), 4);
        assert_eq!(pos("", tr(4)), 0);
    }
}
