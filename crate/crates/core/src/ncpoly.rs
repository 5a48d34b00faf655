//! The free associative algebra over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::alphabet::{Alphabet, Ctx, Var};
use crate::cring::{CPoly, Exps};
use crate::error::{Error, Result};
use crate::lincomb::{Monomial, MulMonomial, Poly};
use crate::field::Q;

/// A word in the letters of an alphabet; the empty word is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Var>);

impl Word {
    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, vars: &[Var]) -> usize {
        self.0.iter().filter(|v| vars.contains(v)).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

// Degree first, then lexicographic in the alphabet order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for Word {
    fn one() -> Self {
        Word(Vec::new())
    }

    fn degree(&self) -> usize {
        self.0.len()
    }

    fn write(&self, ctx: &Alphabet, out: &mut String) {
        write_word(&self.0, ctx, out);
    }
}

impl MulMonomial for Word {
    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
}

/// Writes `x*z^2*y`; the empty word prints as `1`.
pub(crate) fn write_word(letters: &[Var], ctx: &Alphabet, out: &mut String) {
    if letters.is_empty() {
        out.push('1');
        return;
    }
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(ctx.name(letters[i]));
        if j - i > 1 {
            out.push('^');
            out.push_str(&(j - i).to_string());
        }
        i = j;
    }
}

pub type NcPoly = Poly<Word>;

impl NcPoly {
    pub fn var(ctx: &Ctx, v: Var) -> NcPoly {
        NcPoly::monomial(ctx, Word(vec![v]), Q::from_integer(1.into()))
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<NcPoly> {
        Ok(NcPoly::var(ctx, ctx.var_or_err(name)?))
    }

    pub fn word(ctx: &Ctx, letters: &[Var]) -> NcPoly {
        NcPoly::monomial(ctx, Word(letters.to_vec()), Q::from_integer(1.into()))
    }

    /// Letters that occur in some term.
    pub fn support_vars(&self) -> Vec<Var> {
        let mut seen: Vec<Var> = self.terms().flat_map(|(w, _)| w.0.iter().copied()).collect();
        seen.sort();
        seen.dedup();
        seen
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms().any(|(w, _)| w.0.contains(&v))
    }

    /// Applies the algebra endomorphism sending letter `i` to `images[i]`.
    pub fn eval(&self, target: &Ctx, images: &[NcPoly]) -> NcPoly {
        assert_eq!(images.len(), self.ctx().len(), "one image per letter");
        let mut out = NcPoly::zero(target);
        for (w, c) in self.terms() {
            let mut prod = NcPoly::one(target);
            for v in &w.0 {
                prod = &prod * &images[v.index()];
            }
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Like [`NcPoly::eval`], with images looked up in a map; a letter of
    /// `self` without an image is an error.
    pub fn substitute(&self, target: &Ctx, images: &HashMap<Var, NcPoly>) -> Result<NcPoly> {
        let mut full = Vec::with_capacity(self.ctx().len());
        let used = self.support_vars();
        for v in self.ctx().vars() {
            match images.get(&v) {
                Some(p) => full.push(p.clone().with_ctx(target)?),
                None if used.contains(&v) => return Err(Error::MissingImage(self.ctx().name(v).to_string())),
                None => full.push(NcPoly::zero(target)),
            }
        }
        Ok(self.eval(target, &full))
    }

    /// Sum of the terms whose degree counted only in `vars` is `d`.
    pub fn homogeneous_component(&self, d: usize, vars: &[Var]) -> NcPoly {
        self.filter(|w| w.degree_in(vars) == d)
    }

    /// Highest degree in the letters `vars`, or `None` for zero.
    pub fn degree_in(&self, vars: &[Var]) -> Option<usize> {
        self.terms().map(|(w, _)| w.degree_in(vars)).max()
    }

    /// Image in the commutative polynomial ring on the same letters.
    pub fn abelianize(&self) -> CPoly {
        let n = self.ctx().len();
        CPoly::from_terms(
            self.ctx(),
            self.terms().map(|(w, c)| {
                let mut e = vec![0u32; n];
                for v in &w.0 {
                    e[v.index()] += 1;
                }
                (Exps::new(e), c.clone())
            }),
        )
    }

    /// Value at the origin.
    pub fn at_zero(&self) -> Q {
        self.constant_term()
    }

    /// Splits an xy-linear polynomial into its coefficient polynomials; see
    /// [`XYLinearForm`].
    pub fn xy_linear_decompose(&self) -> Result<XYLinearForm> {
        let ctx = self.ctx();
        let x = ctx.var("x");
        let y = ctx.var("y");
        let z = ctx.var("z");
        let zp = crate::alphabet::z_pair();
        let mut a = CPoly::zero(&zp);
        let mut b = CPoly::zero(&zp);
        let mut tail = NcPoly::zero(ctx);
        for (w, c) in self.terms() {
            let mut pos = None;
            for (i, &letter) in w.0.iter().enumerate() {
                let v = Some(letter);
                if v == x || v == y {
                    if pos.is_some() {
                        return Err(Error::NotXYLinear(format!("term of degree >= 2 in x, y: {}", NcPoly::monomial(ctx, w.clone(), c.clone()))));
                    }
                    pos = Some(i);
                } else if v != z {
                    return Err(Error::NotXYLinear(format!("letter `{}` outside x, y, z", ctx.name(letter))));
                }
            }
            match pos {
                None => tail.add_term(w.clone(), c.clone()),
                Some(i) => {
                    let e = Exps::new(vec![i as u32, (w.len() - i - 1) as u32]);
                    if Some(w.0[i]) == x {
                        a.add_term(e, c.clone());
                    } else {
                        b.add_term(e, c.clone());
                    }
                }
            }
        }
        Ok(XYLinearForm { a, b, tail })
    }
}

/// `f = Σ a_pq z^p x z^q + Σ b_pq z^p y z^q + tail(z)`, with `a` and `b`
/// recorded as commutative polynomials `Σ a_pq z1^p z2^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XYLinearForm {
    pub a: CPoly,
    pub b: CPoly,
    pub tail: NcPoly,
}

impl XYLinearForm {
    /// Rebuilds the associative polynomial.
    pub fn reconstitute(&self) -> Result<NcPoly> {
        let ctx = self.tail.ctx();
        let x = ctx.var_or_err("x")?;
        let y = ctx.var_or_err("y")?;
        let mut out = self.tail.clone();
        out = &out + &sandwich(&self.a, ctx, x)?;
        out = &out + &sandwich(&self.b, ctx, y)?;
        Ok(out)
    }
}

/// `q(L, R)·w`: the polynomial `Σ q_pq z^p w z^q` for a letter `w`.
pub fn sandwich(q: &CPoly, ctx: &Ctx, w: Var) -> Result<NcPoly> {
    let z = ctx.var_or_err("z")?;
    if q.ctx().len() > 2 {
        return Err(Error::Invalid("sandwich coefficient must be in two commuting variables".into()));
    }
    let mut out = NcPoly::zero(ctx);
    for (e, c) in q.terms() {
        let mut letters = vec![z; e.get(0) as usize];
        letters.push(w);
        letters.extend(std::iter::repeat_n(z, e.get(1) as usize));
        out.add_term(Word(letters), c.clone());
    }
    Ok(out)
}
