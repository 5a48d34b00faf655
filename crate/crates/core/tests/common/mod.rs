#![allow(dead_code)]

use std::collections::BTreeMap;

use nctame::alphabet::{xyz, z_pair, Ctx, Var};
use nctame::autom::{elementary, NcEndo};
use nctame::cring::{CPoly, Exps};
use nctame::field::{q_frac, Q};
use nctame::ge2::ElemStep;
use nctame::linalg::rank;
use nctame::natree::{NaEndo, NaPoly, NaWord};
use nctame::ncpoly::{sandwich, NcPoly, Word};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const X: Var = Var(0);
pub const Y: Var = Var(1);
pub const Z: Var = Var(2);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_q(r: &mut impl Rng) -> Q {
    loop {
        let n: i64 = r.gen_range(-3..=3);
        if n != 0 {
            return q_frac(n, r.gen_range(1..=2));
        }
    }
}

pub fn rand_cpoly(r: &mut impl Rng, ctx: &Ctx, max_deg: u32, max_terms: usize) -> CPoly {
    let n = r.gen_range(0..=max_terms);
    CPoly::from_terms(
        ctx,
        (0..n).map(|_| {
            let d = r.gen_range(0..=max_deg);
            let mut e = vec![0u32; ctx.len()];
            for _ in 0..d {
                e[r.gen_range(0..ctx.len())] += 1;
            }
            (Exps::new(e), small_q(r))
        }),
    )
}

pub fn rand_word(r: &mut impl Rng, letters: &[Var], len: usize) -> Word {
    Word((0..len).map(|_| letters[r.gen_range(0..letters.len())]).collect())
}

pub fn rand_nc_in(r: &mut impl Rng, ctx: &Ctx, letters: &[Var], max_deg: usize, max_terms: usize) -> NcPoly {
    let n = r.gen_range(0..=max_terms);
    NcPoly::from_terms(
        ctx,
        (0..n).map(|_| {
            let len = r.gen_range(0..=max_deg);
            (rand_word(r, letters, len), small_q(r))
        }),
    )
}

pub fn rand_nc(r: &mut impl Rng, max_deg: usize, max_terms: usize) -> NcPoly {
    rand_nc_in(r, &xyz(), &[X, Y, Z], max_deg, max_terms)
}

/// `x -> αx + q(L, R)y + p(z)` or the same with `x` and `y` swapped.
pub fn rand_z_elementary(r: &mut impl Rng, max_deg: u32) -> NcEndo {
    let ctx = xyz();
    let (j, other) = if r.gen_bool(0.5) { (X, Y) } else { (Y, X) };
    let q = rand_cpoly(r, &z_pair(), max_deg, 3);
    let tail = rand_nc_in(r, &ctx, &[Z], max_deg as usize, 2);
    let f = &sandwich(&q, &ctx, other).unwrap() + &tail;
    elementary(&ctx, j, small_q(r), &f).unwrap()
}

/// A product of at most `max_steps` random `z`-elementary maps, with the
/// factors.
pub fn rand_tame_linear(r: &mut impl Rng, max_steps: usize, max_deg: u32) -> (NcEndo, Vec<NcEndo>) {
    let n = r.gen_range(1..=max_steps);
    let steps: Vec<NcEndo> = (0..n).map(|_| rand_z_elementary(r, max_deg)).collect();
    let prod = steps.iter().skip(1).fold(steps[0].clone(), |acc, s| acc.compose(s).unwrap());
    (prod, steps)
}

pub fn rand_elem_step(r: &mut impl Rng, ctx: &Ctx, max_deg: u32) -> ElemStep {
    match r.gen_range(0..5) {
        0 => ElemStep::Diag(small_q(r), small_q(r)),
        1 | 2 => ElemStep::E12(rand_cpoly(r, ctx, max_deg, 3)),
        _ => ElemStep::E21(rand_cpoly(r, ctx, max_deg, 3)),
    }
}

/// A random bracketing of `deg` random letters.
pub fn rand_tree(r: &mut impl Rng, ctx: &Ctx, letters: &[Var], deg: usize) -> NaPoly {
    if deg == 1 {
        return NaPoly::var(ctx, letters[r.gen_range(0..letters.len())]);
    }
    let k = r.gen_range(1..deg);
    &rand_tree(r, ctx, letters, k) * &rand_tree(r, ctx, letters, deg - k)
}

pub fn rand_na(r: &mut impl Rng, ctx: &Ctx, letters: &[Var], max_deg: usize, max_terms: usize) -> NaPoly {
    let mut out = NaPoly::zero(ctx);
    for _ in 0..r.gen_range(1..=max_terms) {
        let d = r.gen_range(1..=max_deg);
        out = &out + &rand_tree(r, ctx, letters, d).scale(&small_q(r));
    }
    out
}

/// `x_j -> α x_j + f` with `f` free of `x_j`, other letters fixed.
pub fn rand_na_elementary(r: &mut impl Rng, ctx: &Ctx, j: Var, max_deg: usize) -> NaEndo {
    let letters: Vec<Var> = ctx.vars().filter(|&v| v != j).collect();
    let f = rand_na(r, ctx, &letters, max_deg, 2);
    let mut images: Vec<NaPoly> = ctx.vars().map(|v| NaPoly::var(ctx, v)).collect();
    images[j.index()] = &NaPoly::var(ctx, j).scale(&small_q(r)) + &f;
    NaEndo::new(ctx, images).unwrap()
}

fn na_degree(p: &NaPoly) -> usize {
    p.terms().map(|(w, _)| w.leaves().len()).max().unwrap_or(0)
}

pub fn max_image_degree(phi: &NaEndo) -> usize {
    phi.images().iter().map(na_degree).max().unwrap_or(0)
}

/// Every bracketed product of the homogeneous `gens` of total degree `d`.
pub fn bracket_products(gens: &[NaPoly], d: usize) -> Vec<NaPoly> {
    let mut table: Vec<Vec<NaPoly>> = vec![Vec::new(); d + 1];
    for e in 1..=d {
        let mut here: Vec<NaPoly> = gens.iter().filter(|g| na_degree(g) == e).cloned().collect();
        for i in 1..e {
            for a in &table[i] {
                for b in &table[e - i] {
                    here.push(a * b);
                }
            }
        }
        table[e] = here;
    }
    std::mem::take(&mut table[d])
}

/// Brute-force test of whether homogeneous `g` is a linear combination of
/// bracketed products of the homogeneous `gens`.
pub fn in_span_bruteforce(g: &NaPoly, gens: &[NaPoly]) -> bool {
    let d = na_degree(g);
    let prods = bracket_products(gens, d);
    let mut index: BTreeMap<NaWord, usize> = BTreeMap::new();
    for p in prods.iter().chain(std::iter::once(g)) {
        for (w, _) in p.terms() {
            let n = index.len();
            index.entry(w.clone()).or_insert(n);
        }
    }
    let row = |p: &NaPoly| {
        let mut v = vec![Q::zero(); index.len()];
        for (w, c) in p.terms() {
            v[index[w]] = c.clone();
        }
        v
    };
    let mut m: Vec<Vec<Q>> = prods.iter().map(row).collect();
    let before = rank(&m);
    m.push(row(g));
    rank(&m) == before
}
