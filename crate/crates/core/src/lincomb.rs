//! Finite linear combinations of monomials with rational coefficients.
//!
//! [`Poly`] is shared by the associative, commutative, nonassociative and
//! tensor polynomial types; the monomial type decides how products and
//! printing work.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::alphabet::{same_ctx, Alphabet, Ctx};
use crate::error::{Error, Result};
use crate::field::{fmt_q, is_negative, is_one, Q};

pub trait Monomial: Clone + Ord + std::fmt::Debug {
    fn one() -> Self;
    fn degree(&self) -> usize;
    fn is_one(&self) -> bool {
        self.degree() == 0
    }
    /// Writes the monomial; never called on the identity monomial.
    fn write(&self, ctx: &Alphabet, out: &mut String);
}

pub trait MulMonomial: Monomial {
    fn mul(&self, other: &Self) -> Self;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    ctx: Ctx,
    terms: BTreeMap<M, Q>,
}

impl<M: Monomial> Poly<M> {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Ctx, c: Q) -> Self {
        Self::monomial(ctx, M::one(), c)
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Q::one())
    }

    pub fn monomial(ctx: &Ctx, m: M, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ctx: ctx.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Q)>>(ctx: &Ctx, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (M, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &M) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&M::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn add_term(&mut self, m: M, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn filter<F: Fn(&M) -> bool>(&self, keep: F) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: usize) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Homogeneous component of maximal total degree.
    pub fn leading_form(&self) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroInput)?;
        Ok(self.component(d))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn map_monomials<N: Monomial, F: Fn(&M) -> N>(&self, ctx: &Ctx, f: F) -> Poly<N> {
        Poly::from_terms(ctx, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Same terms, reinterpreted over a compatible alphabet handle.
    pub fn with_ctx(mut self, ctx: &Ctx) -> Result<Self> {
        if !same_ctx(&self.ctx, ctx) {
            return Err(Error::ContextMismatch);
        }
        self.ctx = ctx.clone();
        Ok(self)
    }
}

impl<M: MulMonomial> Poly<M> {
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `fg - gf`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        self.checked_add(rhs).expect("adding polynomials over different alphabets")
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        self.checked_sub(rhs).expect("subtracting polynomials over different alphabets")
    }
}

impl<M: MulMonomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        self.checked_mul(rhs).expect("multiplying polynomials over different alphabets")
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        &self + &rhs
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        &self - &rhs
    }
}

impl<M: MulMonomial> Mul for Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        &self * &rhs
    }
}

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -&self
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&fmt_q(&abs));
            } else {
                if !is_one(&abs) {
                    out.push_str(&fmt_q(&abs));
                    out.push('*');
                }
                m.write(&self.ctx, &mut out);
            }
        }
        f.write_str(&out)
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ctx, self)
    }
}
