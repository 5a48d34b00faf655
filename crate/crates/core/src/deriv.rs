//! Derivatives on the free associative algebra: tensor-valued derivatives,
//! their commutative images in `K[U, V]`, and left/right Fox derivatives.

use std::fmt;

use crate::alphabet::{Alphabet, Ctx, Var};
use crate::autom::NcEndo;
use crate::cring::{CPoly, Exps};
use crate::error::{Error, Result};
use crate::lincomb::{Monomial, Poly};
use crate::ncpoly::{write_word, NcPoly, Word};

/// A pure tensor `u ⊗ v` of words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor {
    pub left: Word,
    pub right: Word,
}

impl Monomial for Tensor {
    fn one() -> Self {
        Tensor { left: Word::one(), right: Word::one() }
    }

    fn degree(&self) -> usize {
        self.left.len() + self.right.len()
    }

    // Printed even when both sides are empty, so constants read `1⊗1`.
    fn is_one(&self) -> bool {
        false
    }

    fn write(&self, ctx: &Alphabet, out: &mut String) {
        write_word(&self.left.0, ctx, out);
        out.push('⊗');
        write_word(&self.right.0, ctx, out);
    }
}

/// An element of `K⟨X⟩ ⊗ K⟨X⟩ᵒᵖ`.
pub type TensorPoly = Poly<Tensor>;

impl TensorPoly {
    pub fn pure(ctx: &Ctx, left: Word, right: Word) -> TensorPoly {
        TensorPoly::monomial(ctx, Tensor { left, right }, crate::field::q(1))
    }

    /// `(f ⊗ 1) · t`: multiplies every left factor by `f` on the left.
    pub fn left_mul(&self, f: &NcPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(self.ctx());
        for (t, c) in self.terms() {
            for (w, d) in f.terms() {
                out.add_term(Tensor { left: w.concat(&t.left), right: t.right.clone() }, c * d);
            }
        }
        out
    }

    /// `t · (1 ⊗ g)`: appends `g` to every right factor.
    pub fn right_mul(&self, g: &NcPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(self.ctx());
        for (t, c) in self.terms() {
            for (w, d) in g.terms() {
                out.add_term(Tensor { left: t.left.clone(), right: t.right.concat(w) }, c * d);
            }
        }
        out
    }
}

/// `∂w/∂x_i = Σ (x_{i_1}⋯x_{i_{k-1}}) ⊗ (x_{i_{k+1}}⋯x_{i_m})` over the
/// positions `k` holding `x_i`, extended linearly.
pub fn dicks_lewin(f: &NcPoly, xi: Var) -> TensorPoly {
    let mut out = TensorPoly::zero(f.ctx());
    for (w, c) in f.terms() {
        for (k, &v) in w.0.iter().enumerate() {
            if v == xi {
                out.add_term(Tensor { left: Word(w.0[..k].to_vec()), right: Word(w.0[k + 1..].to_vec()) }, c.clone());
            }
        }
    }
    out
}

/// Entry `(i, j)` is `∂φ(x_j)/∂x_i`.
pub fn jacobian_dl(phi: &NcEndo) -> Vec<Vec<TensorPoly>> {
    let ctx = phi.ctx();
    ctx.vars().map(|xi| phi.images().iter().map(|f| dicks_lewin(f, xi)).collect()).collect()
}

/// The commuting doubles of an alphabet: `x -> x1` on the left and
/// `x -> x2` on the right.
#[derive(Debug, Clone)]
pub struct UVContext {
    source: Ctx,
    uv: Ctx,
}

impl UVContext {
    pub fn new(source: &Ctx) -> Result<UVContext> {
        let names: Vec<String> = ["1", "2"]
            .iter()
            .flat_map(|suffix| source.names().iter().map(move |n| format!("{n}{suffix}")))
            .collect();
        Ok(UVContext { source: source.clone(), uv: Alphabet::new(&names)? })
    }

    pub fn source(&self) -> &Ctx {
        &self.source
    }

    pub fn ctx(&self) -> &Ctx {
        &self.uv
    }

    pub fn u(&self, v: Var) -> usize {
        v.index()
    }

    pub fn v(&self, v: Var) -> usize {
        self.source.len() + v.index()
    }

    fn exps(&self, left: &[Var], right: &[Var]) -> Exps {
        let mut e = vec![0u32; self.uv.len()];
        for &a in left {
            e[self.u(a)] += 1;
        }
        for &b in right {
            e[self.v(b)] += 1;
        }
        Exps::new(e)
    }
}

/// The commutative specialization `x_i ⊗ 1 -> u_i`, `1 ⊗ x_j -> v_j`.
pub fn tensor_to_uv(t: &TensorPoly, uv: &UVContext) -> CPoly {
    CPoly::from_terms(uv.ctx(), t.terms().map(|(m, c)| (uv.exps(&m.left.0, &m.right.0), c.clone())))
}

/// The derivative into `K[U, V]` from the word formula
/// `u_{i_1}⋯u_{i_{k-1}} v_{i_{k+1}}⋯v_{i_m}`.
pub fn metab_derivative(f: &NcPoly, xi: Var, uv: &UVContext) -> CPoly {
    let mut out = CPoly::zero(uv.ctx());
    for (w, c) in f.terms() {
        for (k, &v) in w.0.iter().enumerate() {
            if v == xi {
                out.add_term(uv.exps(&w.0[..k], &w.0[k + 1..]), c.clone());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "l" | "left" => Ok(Side::Left),
            "r" | "right" => Ok(Side::Right),
            _ => Err(Error::Invalid(format!("unknown side `{s}`"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// `f_i` in `f = Σ x_i f_i + α`.
pub fn fox_right(f: &NcPoly, xi: Var) -> NcPoly {
    NcPoly::from_terms(
        f.ctx(),
        f.terms().filter(|(w, _)| w.0.first() == Some(&xi)).map(|(w, c)| (Word(w.0[1..].to_vec()), c.clone())),
    )
}

/// `f_i` in `f = Σ f_i x_i + α`.
pub fn fox_left(f: &NcPoly, xi: Var) -> NcPoly {
    NcPoly::from_terms(
        f.ctx(),
        f.terms()
            .filter(|(w, _)| w.0.last() == Some(&xi))
            .map(|(w, c)| (Word(w.0[..w.len() - 1].to_vec()), c.clone())),
    )
}

pub fn fox(f: &NcPoly, xi: Var, side: Side) -> NcPoly {
    match side {
        Side::Left => fox_left(f, xi),
        Side::Right => fox_right(f, xi),
    }
}

/// Entry `(i, j)` is the Fox derivative of `φ(x_j)` by `x_i`.
pub fn jacobian_fox(phi: &NcEndo, side: Side) -> Vec<Vec<NcPoly>> {
    phi.ctx().vars().map(|xi| phi.images().iter().map(|f| fox(f, xi, side)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::xyz;
    use crate::parse::{parse_cpoly, parse_nc};

    fn nc(s: &str) -> NcPoly {
        parse_nc(s, &xyz()).unwrap()
    }

    fn w(s: &str) -> Word {
        nc(s).into_terms().next().unwrap().0
    }

    const X: Var = Var(0);
    const Y: Var = Var(1);
    const Z: Var = Var(2);

    #[test]
    fn tensor_derivatives() {
        let ctx = xyz();
        let d = dicks_lewin(&nc("x*y*x"), X);
        assert_eq!(d, &TensorPoly::pure(&ctx, Word(vec![]), w("y*x")) + &TensorPoly::pure(&ctx, w("x*y"), Word(vec![])));
        assert_eq!(d.to_string(), "1⊗y*x + x*y⊗1");
        assert!(dicks_lewin(&nc("y"), X).is_zero());
        let d = dicks_lewin(&nc("x + z*(x*z - z*y)"), X);
        assert_eq!(d.to_string(), "1⊗1 + z⊗z");
        let uv = UVContext::new(&ctx).unwrap();
        assert_eq!(tensor_to_uv(&d, &uv), parse_cpoly("1 + z1*z2", uv.ctx()).unwrap());
    }

    #[test]
    fn uv_images() {
        let ctx = xyz();
        let uv = UVContext::new(&ctx).unwrap();
        assert_eq!(uv.ctx().names(), ["x1", "y1", "z1", "x2", "y2", "z2"]);
        let cp = |s: &str| parse_cpoly(s, uv.ctx()).unwrap();
        assert_eq!(tensor_to_uv(&TensorPoly::pure(&ctx, Word(vec![]), Word(vec![])), &uv), cp("1"));
        assert_eq!(tensor_to_uv(&TensorPoly::pure(&ctx, w("x*y"), w("z")), &uv), cp("x1*y1*z2"));
        assert_eq!(metab_derivative(&nc("x*y"), X, &uv), cp("y2"));
        assert_eq!(metab_derivative(&nc("[x,y]"), X, &uv), cp("y2 - y1"));
        assert_eq!(metab_derivative(&nc("x + x^2*[y,z]"), Y, &uv), cp("x1^2*z2 - x1^2*z1"));
    }

    #[test]
    fn fox_examples() {
        let f = nc("x^2*[y,z]");
        assert_eq!(fox_right(&f, X), nc("x*[y,z]"));
        assert!(fox_left(&f, X).is_zero());
        assert!(fox_right(&nc("y"), X).is_zero());
        assert_eq!(fox_left(&f, Z), nc("x^2*y"));
    }

    #[test]
    fn jacobians() {
        let ctx = xyz();
        let id = NcEndo::identity(&ctx);
        let j = jacobian_dl(&id);
        for (i, row) in j.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                assert_eq!(e.is_zero(), i != k);
            }
        }
        let sigma = NcEndo::parse("x + x^2*[y,z] ; y ; z", &ctx).unwrap();
        let jr = jacobian_fox(&sigma, Side::Right);
        assert_eq!(jr[0][0], nc("1 + x*[y,z]"));
        let e = NcEndo::parse("x + y*z*y + z^3 ; y ; z", &ctx).unwrap();
        assert_eq!(jacobian_fox(&e, Side::Right)[0][0], nc("1"));
        let lemma = NcEndo::parse("3*x + y*z - z^2 ; y ; z", &ctx).unwrap();
        let jl = jacobian_dl(&lemma);
        assert_eq!(jl[0][0].to_string(), "3*1⊗1");
        assert_eq!(jl[1][0].to_string(), "1⊗z");
        assert!(jl[0][1].is_zero() && jl[0][2].is_zero());
    }

    #[test]
    fn leibniz_rule() {
        let (f, g) = (nc("x*y + 2*z*x"), nc("x*x - y*z*x"));
        let lhs = dicks_lewin(&(&f * &g), X);
        let rhs = &dicks_lewin(&f, X).right_mul(&g) + &dicks_lewin(&g, X).left_mul(&f);
        assert_eq!(lhs, rhs);
        assert_eq!(Side::parse("l"), Ok(Side::Left));
        assert!(Side::parse("up").is_err());
    }
}
