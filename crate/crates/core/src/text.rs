//! Tokenizer and parsers for the plain-text data formats.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{k_vars, Poly, RatFunc, Rational, VarSet};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

pub fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()[],=".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

/// Arithmetic expression over rationals and named indeterminates.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn one() -> Expr {
        Expr::Num(Rational::one())
    }

    /// Polynomial value; division is allowed only by nonzero constants.
    pub fn to_poly(&self, vars: &VarSet) -> Result<Poly> {
        Ok(match self {
            Expr::Num(q) => Poly::constant(vars, q.clone()),
            Expr::Var(v) => Poly::var(vars, v)?,
            Expr::Add(a, b) => a.to_poly(vars)?.try_add(&b.to_poly(vars)?)?,
            Expr::Sub(a, b) => a.to_poly(vars)?.try_sub(&b.to_poly(vars)?)?,
            Expr::Mul(a, b) => a.to_poly(vars)?.try_mul(&b.to_poly(vars)?)?,
            Expr::Div(a, b) => {
                let d = b.to_poly(vars)?.as_constant().ok_or_else(|| {
                    Error::Parse("division by a non-constant in a polynomial".into())
                })?;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                a.to_poly(vars)?.scale(&(Rational::one() / d))
            }
            Expr::Neg(a) => -a.to_poly(vars)?,
            Expr::Pow(a, n) => a.to_poly(vars)?.pow(*n),
        })
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        let kv = k_vars();
        Ok(match self {
            Expr::Num(q) => RatFunc::constant(q.clone()),
            Expr::Var(_) => RatFunc::from_poly(self.to_poly(&kv)?)?,
            Expr::Add(a, b) => a.to_ratfunc()?.add(&b.to_ratfunc()?),
            Expr::Sub(a, b) => a.to_ratfunc()?.sub(&b.to_ratfunc()?),
            Expr::Mul(a, b) => a.to_ratfunc()?.mul(&b.to_ratfunc()?),
            Expr::Div(a, b) => a.to_ratfunc()?.div(&b.to_ratfunc()?)?,
            Expr::Neg(a) => a.to_ratfunc()?.neg(),
            Expr::Pow(a, n) => {
                let base = a.to_ratfunc()?;
                let mut acc = RatFunc::constant(Rational::one());
                for _ in 0..*n {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

const GENERATOR_NAMES: [&str; 5] = ["e", "f", "h", "x", "d"];

/// One generator occurrence such as `e[1,3](-1)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub idx: Vec<u32>,
    pub mode: Option<i64>,
    pub pow: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TermSpec {
    pub coef: Expr,
    pub atoms: Vec<Atom>,
    pub top: Option<String>,
}

pub struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Tok]) -> Self {
        Parser { toks, pos: 0 }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.toks.get(self.pos + off)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` at token {}, found {:?}", self.pos, self.peek())))
        }
    }

    fn generator_at(&self, off: usize) -> bool {
        matches!(
            (self.peek_at(off), self.peek_at(off + 1)),
            (Some(Tok::Ident(n)), Some(Tok::Op('['))) if GENERATOR_NAMES.contains(&n.as_str())
        )
    }

    pub fn expr(&mut self) -> Result<Expr> {
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
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let n = self.uint()?;
            Ok(Expr::Pow(Box::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn uint(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Num(n)) => u32::try_from(n.clone())
                .map_err(|_| Error::Parse(format!("exponent {n} too large"))),
            t => Err(Error::Parse(format!("expected an integer, found {t:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let v = i64::from(self.uint()?);
        Ok(if neg { -v } else { v })
    }

    fn primary(&mut self) -> Result<Expr> {
        if self.generator_at(0) {
            return Err(Error::Parse("generator inside a scalar expression".into()));
        }
        match self.bump().cloned() {
            Some(Tok::Num(n)) => Ok(Expr::Num(Rational::from_integer(n))),
            Some(Tok::Ident(v)) => Ok(Expr::Var(v)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    /// Product of scalar factors that ends where a generator starts.
    fn coeff_prefix(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) if self.generator_at(1) => {
                    self.pos += 1;
                    return Ok(lhs);
                }
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    if self.top_marker_at(0) && self.sign_or_end(1) {
                        return Ok(lhs);
                    }
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn sign_or_end(&self, off: usize) -> bool {
        matches!(self.peek_at(off), None | Some(Tok::Op('+')) | Some(Tok::Op('-')))
    }

    fn top_marker_at(&self, off: usize) -> bool {
        match self.peek_at(off) {
            Some(Tok::Ident(v)) => v == "v",
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n.clone(),
            t => return Err(Error::Parse(format!("expected a generator, found {t:?}"))),
        };
        self.expect('[')?;
        let mut idx = vec![self.uint()?];
        while self.eat(',') {
            idx.push(self.uint()?);
        }
        self.expect(']')?;
        let mut mode = None;
        if self.peek() == Some(&Tok::Op('(')) {
            self.pos += 1;
            mode = Some(self.int()?);
            self.expect(')')?;
        }
        let pow = if self.eat('^') { self.uint()? } else { 1 };
        Ok(Atom { name, idx, mode, pow })
    }

    /// A signed sum of terms `coef * word top`.
    pub fn term_sum(&mut self) -> Result<Vec<TermSpec>> {
        let mut out = Vec::new();
        let mut first = true;
        while !self.at_end() {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                return Err(Error::Parse(format!("expected `+` or `-`, found {:?}", self.peek())));
            };
            first = false;
            let mut coef = if self.generator_at(0) || self.top_marker_at(0) {
                Expr::one()
            } else {
                self.coeff_prefix()?
            };
            if neg {
                coef = Expr::Neg(Box::new(coef));
            }
            let mut atoms = Vec::new();
            while self.generator_at(0) {
                atoms.push(self.atom()?);
            }
            let mut top = None;
            match self.peek().cloned() {
                Some(Tok::Ident(v)) if v == "v" => {
                    self.pos += 1;
                    top = Some(v);
                }
                Some(Tok::Num(n)) if n.is_one() && !atoms.is_empty() => {
                    self.pos += 1;
                    top = Some("1".into());
                }
                _ => {}
            }
            out.push(TermSpec { coef, atoms, top });
        }
        Ok(out)
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser::new(&toks);
    let e = p.expr()?;
    if !p.at_end() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

pub fn parse_poly(s: &str, vars: &VarSet) -> Result<Poly> {
    parse_expr(s)?.to_poly(vars)
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    parse_expr(s)?.to_ratfunc()
}

pub fn parse_terms(s: &str) -> Result<Vec<TermSpec>> {
    let toks = tokenize(s)?;
    Parser::new(&toks).term_sum()
}

/// Non-empty lines with `#` comments removed.
pub fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        };
        let l = l.trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}
