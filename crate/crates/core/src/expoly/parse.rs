//! Text grammar for exponential polynomials.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/" | <juxtaposition>) unary } ;
//! unary    = ("+" | "-") unary | power ;
//! power    = atom [ "^" uint ] ;
//! atom     = uint | "t" | "(" expr ")" | exp ;
//! exp      = ("E" | "e") "^" ( "(" expr ")" | uint | "t" ) | "exp" "(" expr ")" ;
//! uint     = digit { digit } ;
//! ```
//!
//! Division is only allowed by a nonzero rational constant, so `23/180` and
//! `t/2` are fine. The argument of an exponential must reduce to `k*t` with
//! `k` a nonnegative integer. Juxtaposition binds like `*`, so `4t`, `2(t+1)`
//! and `t E^(t)` are products. Whitespace is ignored and `−` is read as `-`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::exppoly::ExpPoly;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    Exp,
    ExpCall,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Int(digits.parse().expect("digits")), pos));
                continue;
            }
            't' => out.push((Tok::T, pos)),
            'E' => out.push((Tok::Exp, pos)),
            'e' => {
                let rest: String = chars[i..].iter().take(3).map(|&(_, c)| c).collect();
                if rest == "exp" {
                    out.push((Tok::ExpCall, pos));
                    i += 3;
                    continue;
                }
                out.push((Tok::Exp, pos));
            }
            '+' => out.push((Tok::Plus, pos)),
            '-' | '−' => out.push((Tok::Minus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '/' => out.push((Tok::Slash, pos)),
            '^' => out.push((Tok::Caret, pos)),
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            _ => return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") }),
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<ExpPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
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

    fn term(&mut self) -> Result<ExpPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / c)),
                        Some(_) => return Err(Error::Syntax { pos, msg: "division by zero".into() }),
                        None => {
                            return Err(Error::Syntax { pos, msg: "divisor must be a rational constant".into() })
                        }
                    }
                }
                Tok::Int(_) | Tok::T | Tok::Exp | Tok::ExpCall | Tok::LParen => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ExpPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExpPoly> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let n = self.small_uint()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn small_uint(&mut self) -> Result<u32> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let n = match self.bump() {
            Tok::Int(n) => match u32::try_from(n) {
                Ok(v) if v <= 4096 => v,
                _ => {
                    self.at -= 1;
                    return self.err("exponent too large");
                }
            },
            _ => {
                self.at -= 1;
                return self.err("expected a nonnegative integer exponent");
            }
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<ExpPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(ExpPoly::constant(Rational::from_integer(n))),
            Tok::T => Ok(ExpPoly::t()),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Exp => {
                self.expect(Tok::Caret, "`^` after E")?;
                let arg_pos = self.pos();
                let arg = match self.peek() {
                    Tok::LParen => {
                        self.bump();
                        let e = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        e
                    }
                    Tok::Int(_) | Tok::T => self.atom()?,
                    _ => return self.err("expected exponent of E"),
                };
                exp_of(&arg, arg_pos)
            }
            Tok::ExpCall => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let arg_pos = self.pos();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                exp_of(&e, arg_pos)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

/// `e^{arg}` for `arg = k t`, `k` a nonnegative integer.
fn exp_of(arg: &ExpPoly, pos: usize) -> Result<ExpPoly> {
    let bad = |msg: &str| Err(Error::Syntax { pos, msg: msg.into() });
    if arg.is_zero() {
        return Ok(ExpPoly::one());
    }
    if arg.terms().len() != 1 || arg.terms().get(&0).is_none() {
        return bad("exponential argument must be linear in t");
    }
    let p = arg.poly(0);
    if p.degree() != Some(1) || !p.coeff(0).is_zero() {
        return bad("exponential argument must be k*t");
    }
    let k = p.coeff(1);
    if !k.is_integer() || k.is_negative() {
        return bad("exponential degree must be a nonnegative integer");
    }
    match u32::try_from(k.to_integer()) {
        Ok(k) => Ok(ExpPoly::exp(k)),
        Err(_) => bad("exponential degree too large"),
    }
}

/// Parses the grammar documented at module level into an exact [`ExpPoly`].
pub fn parse_expoly(text: &str) -> Result<ExpPoly> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expoly::poly::Poly;

    #[test]
    fn f1_terms() {
        let f = parse_expoly(
            "(t+2)*E^(4t) - 2*t*(2*t+1)*E^(3t) - 2*(t+2)*E^(2t) + 2*t*E^(t) + t + 2",
        )
        .unwrap();
        assert_eq!(f.poly(4), Poly::from_ints(&[2, 1]));
        assert_eq!(f.poly(3), Poly::from_ints(&[0, -2, -4]));
        assert_eq!(f.poly(2), Poly::from_ints(&[-4, -2]));
        assert_eq!(f.poly(1), Poly::from_ints(&[0, 2]));
        assert_eq!(f.poly(0), Poly::from_ints(&[2, 1]));
    }

    #[test]
    fn trivial_forms() {
        assert!(parse_expoly("0").unwrap().is_zero());
        assert_eq!(parse_expoly("E^(t)*E^(t)").unwrap(), ExpPoly::exp(2));
        assert_eq!(parse_expoly("exp(3*t)").unwrap(), ExpPoly::exp(3));
        assert_eq!(parse_expoly("e^t").unwrap(), ExpPoly::exp(1));
        assert_eq!(parse_expoly("23/180").unwrap().as_constant().unwrap(), Rational::new(23.into(), 180.into()));
        assert_eq!(parse_expoly("4t").unwrap(), parse_expoly("4*t").unwrap());
        assert_eq!(parse_expoly("(t+1)^2").unwrap(), parse_expoly("t^2+2t+1").unwrap());
    }

    #[test]
    fn rejects_bad_exponentials() {
        for bad in ["E^(-t)", "E^(t/2)", "E^(t^2)", "E^(t+1)", "exp(t*E^(t))"] {
            assert!(matches!(parse_expoly(bad), Err(Error::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_expoly("t + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expoly("(t+1").is_err());
        assert!(parse_expoly("t/t").is_err());
        assert!(parse_expoly("").is_err());
        assert!(parse_expoly("x").is_err());
    }
}
