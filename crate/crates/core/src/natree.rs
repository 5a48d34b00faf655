//! The absolutely free (nonassociative) algebra: arithmetic, subalgebra
//! membership of homogeneous elements, and the leading-form degree
//! reduction that decomposes automorphisms fixing a set of variables into
//! elementary ones.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Ctx, Var};
use crate::autom::NcEndo;
use crate::cring::CPoly;
use crate::error::{Error, Result};
use crate::field::Q;
use crate::lincomb::{Monomial, MulMonomial, Poly};
use crate::ncpoly::{NcPoly, Word};

/// Default bound on the degree of elements tested for subalgebra membership.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// A bracketed monomial: a full binary tree with letters at the leaves, or
/// the empty monomial `1`. Stored as the preorder shape (`true` for an
/// inner node) and the left-to-right leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NaWord {
    shape: Vec<bool>,
    leaves: Vec<Var>,
}

impl NaWord {
    pub fn leaf(v: Var) -> NaWord {
        NaWord { shape: vec![false], leaves: vec![v] }
    }

    pub fn leaves(&self) -> &[Var] {
        &self.leaves
    }

    pub fn is_leaf(&self) -> bool {
        self.shape.len() == 1
    }

    /// The two factors of a monomial of degree at least 2.
    pub fn split(&self) -> Option<(NaWord, NaWord)> {
        if self.shape.len() < 3 {
            return None;
        }
        // the left subtree ends once its leaves outnumber its inner nodes
        let mut balance = 0i32;
        let mut end = 1;
        let mut nleaves = 0;
        for (i, &node) in self.shape.iter().enumerate().skip(1) {
            if node {
                balance += 1;
            } else {
                balance -= 1;
                nleaves += 1;
            }
            if balance < 0 {
                end = i + 1;
                break;
            }
        }
        Some((
            NaWord { shape: self.shape[1..end].to_vec(), leaves: self.leaves[..nleaves].to_vec() },
            NaWord { shape: self.shape[end..].to_vec(), leaves: self.leaves[nleaves..].to_vec() },
        ))
    }

    pub fn flatten(&self) -> Word {
        Word(self.leaves.clone())
    }

    fn write_factor(&self, ctx: &Alphabet, out: &mut String) {
        if self.shape.len() > 1 {
            out.push('(');
            self.write(ctx, out);
            out.push(')');
        } else {
            self.write(ctx, out);
        }
    }
}

impl Ord for NaWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaves
            .len()
            .cmp(&other.leaves.len())
            .then_with(|| self.shape.cmp(&other.shape))
            .then_with(|| self.leaves.cmp(&other.leaves))
    }
}

impl PartialOrd for NaWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for NaWord {
    fn one() -> Self {
        NaWord::default()
    }

    fn degree(&self) -> usize {
        self.leaves.len()
    }

    fn write(&self, ctx: &Alphabet, out: &mut String) {
        match self.split() {
            None if self.leaves.is_empty() => out.push('1'),
            None => out.push_str(ctx.name(self.leaves[0])),
            Some((l, r)) => {
                l.write_factor(ctx, out);
                out.push('*');
                r.write_factor(ctx, out);
            }
        }
    }
}

impl MulMonomial for NaWord {
    fn mul(&self, other: &Self) -> Self {
        if self.leaves.is_empty() {
            return other.clone();
        }
        if other.leaves.is_empty() {
            return self.clone();
        }
        let mut shape = Vec::with_capacity(1 + self.shape.len() + other.shape.len());
        shape.push(true);
        shape.extend_from_slice(&self.shape);
        shape.extend_from_slice(&other.shape);
        let mut leaves = self.leaves.clone();
        leaves.extend_from_slice(&other.leaves);
        NaWord { shape, leaves }
    }
}

pub type NaPoly = Poly<NaWord>;

/// A formal polynomial in generator slots; evaluating it at generator
/// values gives an element of the subalgebra they generate.
pub type NaExpression = NaPoly;

impl NaPoly {
    pub fn var(ctx: &Ctx, v: Var) -> NaPoly {
        NaPoly::monomial(ctx, NaWord::leaf(v), Q::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<NaPoly> {
        Ok(NaPoly::var(ctx, ctx.var_or_err(name)?))
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms().any(|(w, _)| w.leaves.contains(&v))
    }

    /// Applies the homomorphism sending letter `i` to `images[i]`.
    pub fn eval(&self, target: &Ctx, images: &[NaPoly]) -> NaPoly {
        assert_eq!(images.len(), self.ctx().len(), "one image per letter");
        let mut memo: HashMap<NaWord, NaPoly> = HashMap::new();
        let mut out = NaPoly::zero(target);
        for (w, c) in self.terms() {
            let v = eval_word(w, target, images, &mut memo);
            out = &out + &v.scale(c);
        }
        out
    }

    /// Image under the natural map to the free associative algebra.
    pub fn flatten(&self) -> NcPoly {
        NcPoly::from_terms(self.ctx(), self.terms().map(|(w, c)| (w.flatten(), c.clone())))
    }
}

fn eval_word(w: &NaWord, target: &Ctx, images: &[NaPoly], memo: &mut HashMap<NaWord, NaPoly>) -> NaPoly {
    if w.leaves.is_empty() {
        return NaPoly::one(target);
    }
    if w.is_leaf() {
        return images[w.leaves[0].index()].clone();
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let (l, r) = w.split().unwrap();
    let v = &eval_word(&l, target, images, memo) * &eval_word(&r, target, images, memo);
    memo.insert(w.clone(), v.clone());
    v
}

/// An endomorphism of the absolutely free algebra, given by the images of
/// the letters.
#[derive(Clone, PartialEq, Eq)]
pub struct NaEndo {
    ctx: Ctx,
    images: Vec<NaPoly>,
}

impl NaEndo {
    pub fn new(ctx: &Ctx, images: Vec<NaPoly>) -> Result<NaEndo> {
        if images.len() != ctx.len() {
            return Err(Error::Invalid(format!("expected {} images, got {}", ctx.len(), images.len())));
        }
        let images = images.into_iter().map(|p| p.with_ctx(ctx)).collect::<Result<Vec<_>>>()?;
        Ok(NaEndo { ctx: ctx.clone(), images })
    }

    /// Parses `f ; g ; h`, one image per letter in alphabet order.
    pub fn parse(text: &str, ctx: &Ctx) -> Result<NaEndo> {
        let images = crate::parse::split_endo(text).into_iter().map(|s| crate::parse::parse_na(s, ctx)).collect::<Result<Vec<_>>>()?;
        NaEndo::new(ctx, images)
    }

    pub fn identity(ctx: &Ctx) -> NaEndo {
        NaEndo { ctx: ctx.clone(), images: ctx.vars().map(|v| NaPoly::var(ctx, v)).collect() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn images(&self) -> &[NaPoly] {
        &self.images
    }

    pub fn image(&self, v: Var) -> &NaPoly {
        &self.images[v.index()]
    }

    pub fn apply(&self, p: &NaPoly) -> NaPoly {
        p.eval(&self.ctx, &self.images)
    }

    /// `(self ∘ other)(u) = self(other(u))`.
    pub fn compose(&self, other: &NaEndo) -> Result<NaEndo> {
        if !crate::alphabet::same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(NaEndo { ctx: self.ctx.clone(), images: other.images.iter().map(|p| self.apply(p)).collect() })
    }

    /// Sum of the degrees of the images.
    pub fn degree(&self) -> usize {
        self.images.iter().map(|p| p.degree().unwrap_or(0)).sum()
    }

    pub fn flatten(&self) -> NcEndo {
        NcEndo::new(&self.ctx, self.images.iter().map(NaPoly::flatten).collect()).expect("same alphabet")
    }

    /// Images in the commutative polynomial ring.
    pub fn abelianize(&self) -> Vec<CPoly> {
        self.images.iter().map(|p| p.flatten().abelianize()).collect()
    }

    fn with_slot(&self, i: usize, p: NaPoly) -> NaEndo {
        let mut e = NaEndo::identity(&self.ctx);
        e.images[i] = p;
        e
    }
}

impl fmt::Display for NaEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ; "))
    }
}

impl fmt::Debug for NaEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NaEndo({self})")
    }
}

/// The homogeneous component of maximal degree.
pub fn leading_form(f: &NaPoly) -> Result<NaPoly> {
    f.leading_form()
}

/// Incremental membership oracle for the subalgebra generated by
/// homogeneous elements.
///
/// Every monomial of degree at least 2 factors uniquely as `u1 * u2`, so the
/// degree-`e` part of the subalgebra is `span(generators of degree e) +
/// Σ S_i * S_j` and `S_i * S_j` sits inside `K_i ⊗ K_j` as a tensor product.
/// For each degree we keep a projection `nf` with kernel `S_e`: on a
/// product `u1 * u2` the part `q(u1) * q(u2)` (with `q = id - nf`) is
/// removed, then the remainder is reduced against the projected generators
/// of that degree. Each reduction records the subalgebra expression it
/// subtracted, which is the membership witness.
pub struct Membership {
    gens: Vec<NaPoly>,
    gen_ctx: Ctx,
    ctx: Ctx,
    max_degree: usize,
    built: usize,
    // per degree: reduced echelon rows (pivot, row, expression with value = row)
    echelon: HashMap<usize, Vec<(NaWord, NaPoly, NaExpression)>>,
    memo: HashMap<NaWord, (NaPoly, NaExpression)>,
}

impl Membership {
    pub fn new(ctx: &Ctx, gens: &[NaPoly], max_degree: usize) -> Result<Membership> {
        let names: Vec<String> = (0..gens.len()).map(|i| format!("g{i}")).collect();
        let gen_ctx = Alphabet::new(&names)?;
        let mut checked = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.clone().with_ctx(ctx)?;
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if g.degree().is_some_and(|d| d == 0) {
                return Err(Error::Invalid("generators must have degree at least 1".into()));
            }
            checked.push(g);
        }
        Ok(Membership {
            gens: checked,
            gen_ctx,
            ctx: ctx.clone(),
            max_degree,
            built: 0,
            echelon: HashMap::new(),
            memo: HashMap::new(),
        })
    }

    pub fn generator_ctx(&self) -> &Ctx {
        &self.gen_ctx
    }

    fn ensure(&mut self, d: usize) {
        while self.built < d {
            let e = self.built + 1;
            let mut rows: Vec<(NaWord, NaPoly, NaExpression)> = Vec::new();
            for (k, g) in self.gens.clone().iter().enumerate() {
                if g.degree() != Some(e) {
                    continue;
                }
                let (mut r, expr_b) = self.project(g);
                let mut x = &NaPoly::var(&self.gen_ctx, Var(k as u32)) - &expr_b;
                for (p, row, rx) in &rows {
                    let c = r.coeff(p);
                    if !c.is_zero() {
                        r = &r - &row.scale(&c);
                        x = &x - &rx.scale(&c);
                    }
                }
                let Some((p, lead)) = r.terms().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
                    continue;
                };
                let inv = Q::one() / lead;
                let (r, x) = (r.scale(&inv), x.scale(&inv));
                for (_, row, rx) in rows.iter_mut() {
                    let c = row.coeff(&p);
                    if !c.is_zero() {
                        *row = &*row - &r.scale(&c);
                        *rx = &*rx - &x.scale(&c);
                    }
                }
                rows.push((p, r, x));
            }
            self.echelon.insert(e, rows);
            self.built = e;
        }
    }

    /// Removes the product part `Σ S_i * S_j` from a homogeneous vector.
    fn project(&mut self, v: &NaPoly) -> (NaPoly, NaExpression) {
        let mut out = NaPoly::zero(&self.ctx);
        let mut expr = NaPoly::zero(&self.gen_ctx);
        for (w, c) in v.terms() {
            match w.split() {
                None => out.add_term(w.clone(), c.clone()),
                Some((l, r)) => {
                    let (ql, el) = self.q_of(&l);
                    let (qr, er) = self.q_of(&r);
                    out.add_term(w.clone(), c.clone());
                    out = &out - &(&ql * &qr).scale(c);
                    expr = &expr + &(&el * &er).scale(c);
                }
            }
        }
        (out, expr)
    }

    /// `(u - nf(u), expression)` for a monomial.
    fn q_of(&mut self, u: &NaWord) -> (NaPoly, NaExpression) {
        let (nf, e) = self.nf_monomial(u);
        (&NaPoly::monomial(&self.ctx, u.clone(), Q::one()) - &nf, e)
    }

    fn nf_monomial(&mut self, u: &NaWord) -> (NaPoly, NaExpression) {
        if let Some(hit) = self.memo.get(u) {
            return hit.clone();
        }
        self.ensure(u.degree());
        let single = NaPoly::monomial(&self.ctx, u.clone(), Q::one());
        let (mut w, mut expr) = self.project(&single);
        if let Some(rows) = self.echelon.get(&u.degree()) {
            for (p, row, rx) in rows {
                let c = w.coeff(p);
                if !c.is_zero() {
                    w = &w - &row.scale(&c);
                    expr = &expr + &rx.scale(&c);
                }
            }
        }
        self.memo.insert(u.clone(), (w.clone(), expr.clone()));
        (w, expr)
    }

    /// Normal form modulo the subalgebra together with the subtracted
    /// expression: `g = nf + value(expression)`.
    pub fn normal_form(&mut self, g: &NaPoly) -> Result<(NaPoly, NaExpression)> {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let g = g.clone().with_ctx(&self.ctx)?;
        let d = g.degree().unwrap_or(0);
        if d > self.max_degree {
            return Err(Error::ResourceLimit(format!("degree {d} exceeds the membership limit {}", self.max_degree)));
        }
        if d == 0 {
            return Ok((g, NaPoly::zero(&self.gen_ctx)));
        }
        let mut nf = NaPoly::zero(&self.ctx);
        let mut expr = NaPoly::zero(&self.gen_ctx);
        for (w, c) in g.terms() {
            let (n, e) = self.nf_monomial(w);
            nf = &nf + &n.scale(c);
            expr = &expr + &e.scale(c);
        }
        Ok((nf, expr))
    }

    /// An expression in the generators evaluating to `g`, if `g` lies in
    /// the generated subalgebra.
    pub fn express(&mut self, g: &NaPoly) -> Result<Option<NaExpression>> {
        let (nf, expr) = self.normal_form(g)?;
        Ok(nf.is_zero().then_some(expr))
    }

    /// Evaluates an expression at the generators.
    pub fn evaluate(&self, expr: &NaExpression) -> NaPoly {
        expr.eval(&self.ctx, &self.gens)
    }
}

/// Expresses homogeneous `g` through homogeneous generators of degree at
/// least one. `Ok(None)` means `g` is not in the generated subalgebra.
pub fn subalgebra_express_homogeneous(g: &NaPoly, gens: &[NaPoly], max_degree: usize) -> Result<Option<NaExpression>> {
    let mut m = Membership::new(g.ctx(), gens, max_degree)?;
    m.express(g)
}

/// One degree-lowering step: coordinate `slot` has a leading form that is a
/// polynomial in the other leading forms, and composing with `tau`
/// removes it.
#[derive(Debug, Clone)]
pub struct ReduceStep {
    pub slot: Var,
    /// Expression over the other slots, in the generator alphabet of the
    /// membership test (generator `k` is `others[k]`).
    pub expression: NaExpression,
    pub others: Vec<Var>,
    pub tau: NaEndo,
}

/// Looks for a slot among `slots` whose leading form lies in the subalgebra
/// generated by the leading forms of all other coordinates.
pub fn kurosh_reduce_step(phi: &NaEndo, slots: &[Var], max_degree: usize) -> Result<Option<ReduceStep>> {
    let ctx = phi.ctx();
    let leads: Vec<Option<NaPoly>> = phi.images().iter().map(|p| p.leading_form().ok()).collect();
    for &i in slots {
        let Some(target) = &leads[i.index()] else { continue };
        if target.degree() == Some(0) {
            continue;
        }
        let others: Vec<Var> = ctx
            .vars()
            .filter(|&v| v != i && leads[v.index()].as_ref().is_some_and(|l| l.degree().unwrap_or(0) >= 1))
            .collect();
        let gens: Vec<NaPoly> = others.iter().map(|v| leads[v.index()].clone().unwrap()).collect();
        let mut m = Membership::new(ctx, &gens, max_degree)?;
        if let Some(expr) = m.express(target)? {
            let images: Vec<NaPoly> = others.iter().map(|&v| NaPoly::var(ctx, v)).collect();
            let g = expr.eval(ctx, &images);
            let tau = phi.with_slot(i.index(), &NaPoly::var(ctx, i) - &g);
            return Ok(Some(ReduceStep { slot: i, expression: expr, others, tau }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    /// No coordinate's leading form is generated by the others.
    NoReduction { degree: usize },
    /// The affine part has a singular matrix on the free variables.
    SingularLinearPart,
    /// A coordinate became independent of the free variables.
    CoordinateFreeOfX { slot: String },
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::NoReduction { degree } => write!(f, "no leading form is generated by the others (degree {degree})"),
            FailReason::SingularLinearPart => f.write_str("the linear part is singular"),
            FailReason::CoordinateFreeOfX { slot } => write!(f, "coordinate {slot} does not depend on the free variables"),
        }
    }
}

/// Why an endomorphism fixing `Z` is not an automorphism: the endomorphism
/// reached by the reduction and the obstruction found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAutomorphism {
    pub reached: NaEndo,
    pub reason: FailReason,
}

#[derive(Debug, Clone)]
pub enum Decomposition {
    /// Elementary automorphisms fixing `Z` whose composite (left to right)
    /// is the input.
    Decomposed { steps: Vec<NaEndo> },
    NotAutomorphism(NonAutomorphism),
}

/// Decomposes an endomorphism fixing the letters `fixed` into elementary
/// automorphisms fixing them, or certifies that it is not an automorphism.
pub fn z_tame_decompose(phi: &NaEndo, fixed: &[Var], max_degree: usize) -> Result<Decomposition> {
    let ctx = phi.ctx().clone();
    for &z in fixed {
        if *phi.image(z) != NaPoly::var(&ctx, z) {
            return Err(Error::NotFixed(ctx.name(z).to_string()));
        }
    }
    let free: Vec<Var> = ctx.vars().filter(|v| !fixed.contains(v)).collect();
    let fail = |reached: &NaEndo, reason| Ok(Decomposition::NotAutomorphism(NonAutomorphism { reached: reached.clone(), reason }));

    let mut cur = phi.clone();
    let mut reductions: Vec<NaEndo> = Vec::new();
    loop {
        for &x in &free {
            if !free.iter().any(|&v| cur.image(x).involves(v)) {
                return fail(&cur, FailReason::CoordinateFreeOfX { slot: ctx.name(x).to_string() });
            }
        }
        if free.iter().all(|&x| cur.image(x).degree() == Some(1)) {
            break;
        }
        match kurosh_reduce_step(&cur, &free, max_degree)? {
            Some(step) => {
                let next = cur.compose(&step.tau)?;
                debug_assert!(next.degree() < cur.degree());
                cur = next;
                reductions.push(step.tau);
            }
            None => return fail(&cur, FailReason::NoReduction { degree: cur.degree() }),
        }
    }

    // affine case: strip constants, then column-reduce the free block
    let mut translate_back = Vec::new();
    let mut tau0 = NaEndo::identity(&ctx);
    for &x in &free {
        let c = cur.image(x).constant_term();
        if !c.is_zero() {
            tau0.images[x.index()] = &NaPoly::var(&ctx, x) - &NaPoly::constant(&ctx, c.clone());
            translate_back.push(NaEndo::identity(&ctx).with_slot(x.index(), &NaPoly::var(&ctx, x) + &NaPoly::constant(&ctx, c)));
        }
    }
    let mut psi = cur.compose(&tau0)?;
    let n = free.len();
    let coeff = |psi: &NaEndo, r: usize, k: usize| psi.image(free[k]).coeff(&NaWord::leaf(free[r]));
    let mut column_ops: Vec<(NaEndo, NaEndo)> = Vec::new();
    let mut apply = |psi: &mut NaEndo, op: NaEndo, inv: NaEndo| -> Result<()> {
        *psi = psi.compose(&op)?;
        column_ops.push((op, inv));
        Ok(())
    };
    for r in 0..n {
        if coeff(&psi, r, r).is_zero() {
            let Some(k) = (r + 1..n).find(|&k| !coeff(&psi, r, k).is_zero()) else {
                return fail(&psi, FailReason::SingularLinearPart);
            };
            let (xr, xk) = (NaPoly::var(&ctx, free[r]), NaPoly::var(&ctx, free[k]));
            let op = NaEndo::identity(&ctx).with_slot(free[r].index(), &xr + &xk);
            let inv = NaEndo::identity(&ctx).with_slot(free[r].index(), &xr - &xk);
            apply(&mut psi, op, inv)?;
        }
        let a = coeff(&psi, r, r);
        if !a.is_one() {
            let xr = NaPoly::var(&ctx, free[r]);
            let op = NaEndo::identity(&ctx).with_slot(free[r].index(), xr.scale(&(Q::one() / &a)));
            let inv = NaEndo::identity(&ctx).with_slot(free[r].index(), xr.scale(&a));
            apply(&mut psi, op, inv)?;
        }
        for k in 0..n {
            let c = coeff(&psi, r, k);
            if k == r || c.is_zero() {
                continue;
            }
            let (xk, xr) = (NaPoly::var(&ctx, free[k]), NaPoly::var(&ctx, free[r]));
            let op = NaEndo::identity(&ctx).with_slot(free[k].index(), &xk - &xr.scale(&c));
            let inv = NaEndo::identity(&ctx).with_slot(free[k].index(), &xk + &xr.scale(&c));
            apply(&mut psi, op, inv)?;
        }
    }

    // psi is now (x_i + g_i(Z)); phi = psi · ops⁻¹ (reversed) · tau0⁻¹ · reductions⁻¹ (reversed)
    let mut steps = Vec::new();
    for &x in &free {
        if *psi.image(x) != NaPoly::var(&ctx, x) {
            steps.push(NaEndo::identity(&ctx).with_slot(x.index(), psi.image(x).clone()));
        }
    }
    steps.extend(column_ops.into_iter().rev().map(|(_, inv)| inv));
    steps.extend(translate_back);
    for tau in reductions.iter().rev() {
        let slot = free.iter().find(|&&x| *tau.image(x) != NaPoly::var(&ctx, x)).copied();
        if let Some(x) = slot {
            let g = &NaPoly::var(&ctx, x) - tau.image(x);
            steps.push(NaEndo::identity(&ctx).with_slot(x.index(), &NaPoly::var(&ctx, x) + &g));
        }
    }
    Ok(Decomposition::Decomposed { steps })
}

/// Composes endomorphisms left to right.
pub fn compose_all(ctx: &Ctx, steps: &[NaEndo]) -> Result<NaEndo> {
    steps.iter().try_fold(NaEndo::identity(ctx), |acc, s| acc.compose(s))
}

/// Whether a step changes exactly one free coordinate to `α x_i + g`, with
/// `g` free of `x_i`, and fixes everything else.
pub fn is_elementary(step: &NaEndo, fixed: &[Var]) -> bool {
    let ctx = step.ctx();
    let moved: Vec<Var> = ctx.vars().filter(|&v| *step.image(v) != NaPoly::var(ctx, v)).collect();
    match moved.as_slice() {
        [] => true,
        [x] if !fixed.contains(x) => {
            let img = step.image(*x);
            let lin = img.coeff(&NaWord::leaf(*x));
            let rest = img - &NaPoly::monomial(ctx, NaWord::leaf(*x), lin.clone());
            !lin.is_zero() && !rest.involves(*x)
        }
        _ => false,
    }
}

#[derive(Debug, Clone)]
pub enum LiftCheck {
    /// The candidate is an automorphism fixing `Z`; the decomposition and
    /// its images in the associative and commutative algebras are
    /// elementary certificates of tameness in the class fixing `Z`.
    IsZAutomorphism { steps: Vec<NaEndo>, associative: Vec<NcEndo>, commutative: Vec<Vec<CPoly>> },
    No(NonAutomorphism),
}

/// Checks one candidate lifting: it either decomposes (and so do its
/// associative and commutative images) or is not an automorphism.
pub fn lift_candidate_check(psi: &NaEndo, fixed: &[Var], max_degree: usize) -> Result<LiftCheck> {
    Ok(match z_tame_decompose(psi, fixed, max_degree)? {
        Decomposition::Decomposed { steps } => {
            let associative = steps.iter().map(NaEndo::flatten).collect();
            let commutative = steps.iter().map(NaEndo::abelianize).collect();
            LiftCheck::IsZAutomorphism { steps, associative, commutative }
        }
        Decomposition::NotAutomorphism(c) => LiftCheck::No(c),
    })
}
