//! Text syntax for polynomials, matrices and endomorphisms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | name | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Multiplication is always written with `*`; `[f,g]` is `f*g - g*f`.
//! In nonassociative mode a product of more than two non-scalar factors
//! must be parenthesized.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alphabet::Ctx;
use crate::cring::{CMatrix, CPoly};
use crate::error::{Error, Result};
use crate::field::Q;
use crate::natree::NaPoly;
use crate::ncpoly::NcPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Associative,
    Commutative,
    Nonassociative,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[st..i].iter().collect();
            out.push((Tok::Int(text.parse().unwrap()), st));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[st..i].iter().collect()), st));
        } else if "+-*^/()[],".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Q),
    Var(String, usize),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32, usize),
    Comm(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = vec![(true, self.term()?)];
        loop {
            if self.eat('+') {
                parts.push((true, self.term()?));
            } else if self.eat('-') {
                parts.push((false, self.term()?));
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 && parts[0].0 { parts.pop().unwrap().1 } else { Expr::Sum(parts) })
    }

    fn term(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut factors = vec![self.unary()?];
        while self.eat('*') {
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors, pos) })
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
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let k: u32 = n.try_into().map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
                    Ok(Expr::Pow(Box::new(base), k, pos))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.at += 1;
                            Ok(Expr::Num(Q::new(n, d)))
                        }
                        _ => self.err("expected a nonzero integer denominator"),
                    }
                } else {
                    Ok(Expr::Num(Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Var(name, pos))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Comm(Box::new(a), Box::new(b)))
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

trait Algebra {
    type P: Clone;
    fn num(&self, c: Q) -> Self::P;
    fn var(&self, name: &str, pos: usize) -> Result<Self::P>;
    fn add(&self, a: &Self::P, b: &Self::P) -> Self::P;
    fn neg(&self, a: &Self::P) -> Self::P;
    fn mul(&self, a: &Self::P, b: &Self::P) -> Self::P;
    fn is_scalar(&self, a: &Self::P) -> bool;
    fn associative(&self) -> bool;

    fn product(&self, factors: Vec<Self::P>, pos: usize) -> Result<Self::P> {
        if !self.associative() && factors.iter().filter(|f| !self.is_scalar(f)).count() > 2 {
            return Err(Error::Parse { pos, msg: "ambiguous nonassociative product; add parentheses".into() });
        }
        let mut acc = self.num(Q::one());
        for f in &factors {
            acc = self.mul(&acc, f);
        }
        Ok(acc)
    }

    fn eval(&self, e: &Expr) -> Result<Self::P> {
        Ok(match e {
            Expr::Num(c) => self.num(c.clone()),
            Expr::Var(n, pos) => self.var(n, *pos)?,
            Expr::Sum(parts) => {
                let mut acc = self.num(Q::zero());
                for (plus, t) in parts {
                    let v = self.eval(t)?;
                    acc = if *plus { self.add(&acc, &v) } else { self.add(&acc, &self.neg(&v)) };
                }
                acc
            }
            Expr::Product(fs, pos) => {
                let vals = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>>>()?;
                self.product(vals, *pos)?
            }
            Expr::Neg(a) => self.neg(&self.eval(a)?),
            Expr::Pow(a, k, pos) => {
                let b = self.eval(a)?;
                if !self.associative() && *k > 2 && !self.is_scalar(&b) {
                    return Err(Error::Parse { pos: *pos, msg: "powers above 2 are ambiguous without associativity".into() });
                }
                let mut acc = self.num(Q::one());
                for _ in 0..*k {
                    acc = self.mul(&acc, &b);
                }
                acc
            }
            Expr::Comm(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(&self.mul(&a, &b), &self.neg(&self.mul(&b, &a)))
            }
        })
    }
}

macro_rules! lincomb_algebra {
    ($name:ident, $poly:ty, $assoc:expr) => {
        struct $name<'a>(&'a Ctx);
        impl Algebra for $name<'_> {
            type P = $poly;
            fn num(&self, c: Q) -> $poly {
                <$poly>::constant(self.0, c)
            }
            fn var(&self, name: &str, pos: usize) -> Result<$poly> {
                match self.0.var(name) {
                    Some(_) => <$poly>::var_named(self.0, name),
                    None => Err(Error::Parse { pos, msg: format!("unknown variable `{name}`") }),
                }
            }
            fn add(&self, a: &$poly, b: &$poly) -> $poly {
                a + b
            }
            fn neg(&self, a: &$poly) -> $poly {
                -a
            }
            fn mul(&self, a: &$poly, b: &$poly) -> $poly {
                a * b
            }
            fn is_scalar(&self, a: &$poly) -> bool {
                a.is_constant()
            }
            fn associative(&self) -> bool {
                $assoc
            }
        }
    };
}

lincomb_algebra!(NcAlg, NcPoly, true);
lincomb_algebra!(CAlg, CPoly, true);
lincomb_algebra!(NaAlg, NaPoly, false);

pub fn parse_nc(text: &str, ctx: &Ctx) -> Result<NcPoly> {
    NcAlg(ctx).eval(&parse_expr(text)?)
}

pub fn parse_cpoly(text: &str, ctx: &Ctx) -> Result<CPoly> {
    CAlg(ctx).eval(&parse_expr(text)?)
}

pub fn parse_na(text: &str, ctx: &Ctx) -> Result<NaPoly> {
    NaAlg(ctx).eval(&parse_expr(text)?)
}

/// Splits `s` at top-level occurrences of `sep` (outside brackets and parentheses).
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_brackets(s: &str) -> Result<&str> {
    let t = s.trim();
    if t.starts_with('[') && t.ends_with(']') && t.len() >= 2 {
        Ok(&t[1..t.len() - 1])
    } else {
        Err(Error::Parse { pos: 0, msg: format!("expected a bracketed list, got `{t}`") })
    }
}

/// Parses `[[p, p], [p, p]]`.
pub fn parse_cmatrix(text: &str, ctx: &Ctx) -> Result<CMatrix> {
    let inner = strip_brackets(text)?;
    let mut rows = Vec::new();
    for row in split_top(inner, ',') {
        let cells = strip_brackets(row)?;
        rows.push(split_top(cells, ',').into_iter().map(|c| parse_cpoly(c, ctx)).collect::<Result<Vec<_>>>()?);
    }
    CMatrix::new(ctx, rows)
}

/// Splits an endomorphism literal `f ; g ; h` into its coordinate texts.
pub fn split_endo(text: &str) -> Vec<&str> {
    text.split(';').map(str::trim).collect()
}

pub fn parse_mode(text: &str, ctx: &Ctx, mode: Mode) -> Result<String> {
    Ok(match mode {
        Mode::Associative => parse_nc(text, ctx)?.to_string(),
        Mode::Commutative => parse_cpoly(text, ctx)?.to_string(),
        Mode::Nonassociative => parse_na(text, ctx)?.to_string(),
    })
}
