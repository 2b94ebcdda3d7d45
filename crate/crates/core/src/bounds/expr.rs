//! Bound-side expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" unary ] ;
//! atom    = number | name | name "(" expr { "," expr } ")" | "(" expr ")" ;
//! ```
//!
//! Names are `x`, `pi`, `e`, or a parameter. Functions: `exp ln sqrt abs
//! lgamma digamma trigamma theta b max min`; `lgamma(z)` is `ln Γ(z)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gamma_ref::{b, digamma, log_gamma, theta, trigamma, EvalPrecision};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

const FUNCS: [(&str, usize); 11] = [
    ("exp", 1),
    ("ln", 1),
    ("sqrt", 1),
    ("abs", 1),
    ("lgamma", 1),
    ("digamma", 1),
    ("trigamma", 1),
    ("theta", 1),
    ("b", 1),
    ("max", 2),
    ("min", 2),
];

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op as char, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op as char, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                if self.pos < self.s.len() && matches!(self.s[self.pos], b'e' | b'E') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.pos < self.s.len() && matches!(self.s[self.pos], b'+' | b'-') {
                        self.pos += 1;
                    }
                    if self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                    } else {
                        self.pos = save;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                text.parse().map(Expr::Num).map_err(|_| Error::Syntax { pos: start, msg: format!("bad number `{text}`") })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").to_string();
                if self.eat(b'(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(b',') {
                        args.push(self.expr()?);
                    }
                    if !self.eat(b')') {
                        return Err(self.err("expected `)` after arguments"));
                    }
                    match FUNCS.iter().find(|f| f.0 == name) {
                        Some(&(_, n)) if n == args.len() => Ok(Expr::Call(name, args)),
                        Some(&(_, n)) => Err(Error::Syntax { pos: start, msg: format!("{name} takes {n} argument(s)") }),
                        None => Err(Error::Syntax { pos: start, msg: format!("unknown function `{name}`") }),
                    }
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Names other than `x`, `pi`, `e` that must be supplied as parameters.
    pub fn parameters(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) if !matches!(v.as_str(), "x" | "pi" | "e") => out.push(v.clone()),
            Expr::Neg(a) => a.collect(out),
            Expr::Bin(_, a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect(out)),
            _ => {}
        }
    }

    pub fn eval<T: Real>(&self, x: T, params: &BTreeMap<String, f64>, p: &EvalPrecision) -> Result<T> {
        Ok(match self {
            Expr::Num(v) => T::of(*v),
            Expr::Var(v) => match v.as_str() {
                "x" => x,
                "pi" => T::pi(),
                "e" => T::one().exp(),
                name => T::of(*params.get(name).ok_or_else(|| Error::Parameter(format!("missing parameter `{name}`")))?),
            },
            Expr::Neg(a) => -a.eval(x, params, p)?,
            Expr::Bin(op, a, c) => {
                let (u, v) = (a.eval(x, params, p)?, c.eval(x, params, p)?);
                match op {
                    '+' => u + v,
                    '-' => u - v,
                    '*' => u * v,
                    '/' => u / v,
                    _ => {
                        let vf = v.as_f64();
                        if vf == vf.round() && vf.abs() <= 64.0 && T::of(vf) == v {
                            u.powi(vf as i32)
                        } else if u > T::zero() {
                            (v * u.ln()).exp()
                        } else {
                            return Err(crate::error::domain("non-integer power of a nonpositive base", u.as_f64()));
                        }
                    }
                }
            }
            Expr::Call(name, args) => {
                let a = args[0].eval(x, params, p)?;
                match name.as_str() {
                    "exp" => a.exp(),
                    "ln" if a > T::zero() => a.ln(),
                    "ln" => return Err(crate::error::domain("ln", a.as_f64())),
                    "sqrt" if a >= T::zero() => a.sqrt(),
                    "sqrt" => return Err(crate::error::domain("sqrt", a.as_f64())),
                    "abs" => a.abs(),
                    "lgamma" => log_gamma(a, p)?,
                    "digamma" => digamma(a, p)?,
                    "trigamma" => trigamma(a, p)?,
                    "theta" => theta(a, p)?,
                    "b" => b(a, p)?,
                    "max" => a.max(args[1].eval(x, params, p)?),
                    "min" => a.min(args[1].eval(x, params, p)?),
                    _ => unreachable!("checked at parse time"),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, x: f64) -> f64 {
        let mut params = BTreeMap::new();
        params.insert("k".to_string(), 2.0);
        Expr::parse(s).unwrap().eval(x, &params, &EvalPrecision::default()).unwrap()
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(ev("1 + 2*3^2", 0.0), 19.0);
        assert_eq!(ev("-x^2", 3.0), -9.0);
        assert_eq!(ev("2^-1", 0.0), 0.5);
        assert!((ev("(1 + 1/x)^x", 1e6) - std::f64::consts::E).abs() < 1e-5);
        assert_eq!(ev("k/(24*x)", 1.0), 2.0 / 24.0);
        assert_eq!(ev("max(1, x)", 3.0), 3.0);
        assert_eq!(ev("1e-3 * 2", 0.0), 0.002);
    }

    #[test]
    fn special_functions() {
        assert!((ev("exp(trigamma(1)/12)", 0.0) - (std::f64::consts::PI.powi(2) / 72.0).exp()).abs() < 1e-14);
        assert!(ev("lgamma(1)", 0.0).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(Expr::parse("1 +"), Err(Error::Syntax { .. })));
        assert!(Expr::parse("foo(1)").is_err());
        assert!(Expr::parse("max(1)").is_err());
        assert!(Expr::parse("(1").is_err());
        let e = Expr::parse("q*x").unwrap();
        assert_eq!(e.parameters(), vec!["q".to_string()]);
        assert!(e.eval(1.0f64, &BTreeMap::new(), &EvalPrecision::default()).is_err());
    }
}
