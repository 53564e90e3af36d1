//! Tiny recursive-descent parser for polynomial and rational expressions:
//! integers, variables, `+ - * / ^` and parentheses. An optional single
//! `lhs = rhs` is read as `lhs - rhs`.

use num_bigint::BigInt;

use super::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()=".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // implicit multiplication: 3x, 2(x+1)
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(&n)
                        .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => {
                    return Err(Error::Parse(
                        "exponent must be a nonnegative integer".into(),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
    };
    let lhs = p.sum()?;
    let e = if p.eat('=') {
        Expr::Sub(Box::new(lhs), Box::new(p.sum()?))
    } else {
        lhs
    };
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in `R`. `var` resolves identifiers, `div` performs division
    /// (return `None` when the quotient does not exist in `R`).
    pub fn eval<R: Ring>(
        &self,
        var: &dyn Fn(&str) -> Option<R>,
        div: &dyn Fn(&R, &R) -> Option<R>,
    ) -> Result<R> {
        Ok(match self {
            Expr::Int(n) => R::from_int(n),
            Expr::Var(v) => {
                var(v).ok_or_else(|| Error::Parse(format!("unknown variable {v:?}")))?
            }
            Expr::Neg(a) => -a.eval(var, div)?,
            Expr::Add(a, b) => a.eval(var, div)? + b.eval(var, div)?,
            Expr::Sub(a, b) => a.eval(var, div)? - b.eval(var, div)?,
            Expr::Mul(a, b) => a.eval(var, div)? * b.eval(var, div)?,
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(var, div)?, b.eval(var, div)?);
                div(&a, &b).ok_or_else(|| Error::Parse("division not exact in this ring".into()))?
            }
            Expr::Pow(a, e) => a.eval(var, div)?.pow(*e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::MPoly;

    fn xyz(name: &str) -> Option<MPoly> {
        match name {
            "x" => Some(MPoly::var(0)),
            "y" => Some(MPoly::var(1)),
            "z" => Some(MPoly::var(2)),
            _ => None,
        }
    }

    fn no_div(_: &MPoly, _: &MPoly) -> Option<MPoly> {
        None
    }

    #[test]
    fn parses_constraints() {
        let e = parse_expr("x = -3").unwrap();
        assert_eq!(e.eval(&xyz, &no_div).unwrap().to_string(), "x + 3");
        let e = parse_expr("x^2 + 2x*y - (z - 1)^2").unwrap();
        assert_eq!(
            e.eval(&xyz, &no_div).unwrap().to_string(),
            "x^2 + 2*x*y - z^2 + 2*z - 1"
        );
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("x $ y").is_err());
        assert!(parse_expr("w").unwrap().eval(&xyz, &no_div).is_err());
        assert!(parse_expr("x/2").unwrap().eval(&xyz, &no_div).is_err());
    }
}
