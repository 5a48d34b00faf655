//! Commutative polynomials over the rationals and small matrices over them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::alphabet::{same_ctx, Alphabet, Ctx};
use crate::error::{Error, Result};
use crate::field::Q;
use crate::linalg;
use crate::lincomb::{Monomial, MulMonomial, Poly};

/// Exponent vector with trailing zeros trimmed, so the identity is `[]`
/// regardless of the number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Exps(Vec<u32>);

impl Exps {
    pub fn new(mut e: Vec<u32>) -> Exps {
        while e.last() == Some(&0) {
            e.pop();
        }
        Exps(e)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `Some(self / other)` when `other` divides `self`.
    pub fn checked_div(&self, other: &Exps) -> Option<Exps> {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.get(i), other.get(i));
            if b > a {
                return None;
            }
            out.push(a - b);
        }
        Some(Exps::new(out))
    }

    /// All exponent vectors of total degree `d` in `n` variables.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Exps> {
        fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Exps>) {
            if cur.len() + 1 == n {
                cur.push(d);
                out.push(Exps::new(cur.clone()));
                cur.pop();
                return;
            }
            for k in (0..=d).rev() {
                cur.push(k);
                rec(n, d - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Exps::default());
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }
}

// Total degree first; within a degree, a larger exponent of an earlier
// variable comes first (so z1^2 < z1*z2 < z2^2).
impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        da.cmp(&db).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.get(i).cmp(&other.get(i)) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for Exps {
    fn one() -> Self {
        Exps(Vec::new())
    }

    fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn write(&self, ctx: &Alphabet, out: &mut String) {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&ctx.names()[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

impl MulMonomial for Exps {
    fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Exps::new((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }
}

pub type CPoly = Poly<Exps>;

impl CPoly {
    pub fn var(ctx: &Ctx, i: usize) -> CPoly {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        CPoly::monomial(ctx, Exps::new(e), Q::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<CPoly> {
        Ok(CPoly::var(ctx, ctx.var_or_err(name)?.index()))
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn eval(&self, target: &Ctx, images: &[CPoly]) -> CPoly {
        assert_eq!(images.len(), self.ctx().len(), "one image per variable");
        let mut out = CPoly::zero(target);
        for (e, c) in self.terms() {
            let mut prod = CPoly::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    prod = &prod * &images[i].pow(k);
                }
            }
            out = &out + &prod;
        }
        out
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn rename_into(&self, target: &Ctx) -> Result<CPoly> {
        let images = self
            .ctx()
            .names()
            .iter()
            .map(|n| match target.var(n) {
                Some(v) => Ok(CPoly::var(target, v.index())),
                None if self.terms().any(|(e, _)| e.get(self.ctx().var(n).unwrap().index()) > 0) => {
                    Err(Error::UnknownVariable(n.clone()))
                }
                None => Ok(CPoly::zero(target)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(target, &images))
    }
}

/// The homogeneous component of maximal total degree.
pub fn leading_form(p: &CPoly) -> Result<CPoly> {
    p.leading_form()
}

/// Solves `n = d * q` for homogeneous `n`, `d`. The quotient, when it exists,
/// is found by solving the linear system on the monomial basis of degree
/// `deg n - deg d`.
pub fn exact_divide_homogeneous(n: &CPoly, d: &CPoly) -> Result<Option<CPoly>> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !n.is_homogeneous() || !d.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !same_ctx(n.ctx(), d.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let ctx = n.ctx();
    if n.is_zero() {
        return Ok(Some(CPoly::zero(ctx)));
    }
    let dn = n.degree().unwrap();
    let dd = d.degree().unwrap();
    if dd > dn {
        return Ok(None);
    }
    let basis = Exps::all_of_degree(ctx.len(), (dn - dd) as u32);
    let rows_idx = Exps::all_of_degree(ctx.len(), dn as u32);
    let mut a = vec![vec![Q::zero(); basis.len()]; rows_idx.len()];
    for (j, m) in basis.iter().enumerate() {
        for (e, c) in d.terms() {
            let prod = e.mul(m);
            let i = rows_idx.iter().position(|r| *r == prod).expect("degree-graded basis");
            a[i][j] += c;
        }
    }
    let rhs: Vec<Q> = rows_idx.iter().map(|r| n.coeff(r)).collect();
    Ok(linalg::solve(&a, &rhs).map(|sol| CPoly::from_terms(ctx, basis.into_iter().zip(sol))))
}

/// A small dense matrix of commutative polynomials over one alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<CPoly>,
}

impl CMatrix {
    pub fn new(ctx: &Ctx, rows: Vec<Vec<CPoly>>) -> Result<CMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Invalid("ragged matrix".into()));
            }
            for e in row {
                entries.push(e.with_ctx(ctx)?);
            }
        }
        Ok(CMatrix { ctx: ctx.clone(), rows: r, cols: c, entries })
    }

    pub fn identity(ctx: &Ctx, n: usize) -> CMatrix {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { CPoly::one(ctx) } else { CPoly::zero(ctx) })
            .collect();
        CMatrix { ctx: ctx.clone(), rows: n, cols: n, entries }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> CPoly>(ctx: &Ctx, rows: usize, cols: usize, mut f: F) -> CMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMatrix { ctx: ctx.clone(), rows, cols, entries }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: CPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row_vecs(&self) -> Vec<Vec<CPoly>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn map<F: Fn(&CPoly) -> CPoly>(&self, target: &Ctx, f: F) -> CMatrix {
        CMatrix::from_fn(target, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> CMatrix {
        let (r0, c0) = (rows.start, cols.start);
        CMatrix::from_fn(&self.ctx, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn checked_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid("matrix dimensions do not match".into()));
        }
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(CMatrix::from_fn(&self.ctx, self.rows, other.cols, |i, j| {
            let mut acc = CPoly::zero(&self.ctx);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn det(&self) -> Result<CPoly> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        Ok(det_rec(&self.ctx, &(0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect::<Vec<Vec<_>>>()))
    }

    /// Inverse of a 2x2 matrix whose determinant is a nonzero constant.
    pub fn inverse_2x2(&self) -> Result<CMatrix> {
        if self.rows != 2 || self.cols != 2 {
            return Err(Error::Invalid("expected a 2x2 matrix".into()));
        }
        let det = self.det()?;
        if !is_unit(&det) {
            return Err(Error::NotInvertible);
        }
        let inv = Q::one() / det.constant_term();
        let (a, b, c, d) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
        CMatrix::new(
            &self.ctx,
            vec![vec![d.scale(&inv), (-b).scale(&inv)], vec![(-c).scale(&inv), a.scale(&inv)]],
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == CMatrix::identity(&self.ctx, self.rows)
    }
}

fn det_rec(ctx: &Ctx, m: &[Vec<CPoly>]) -> CPoly {
    match m.len() {
        0 => CPoly::one(ctx),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = CPoly::zero(ctx);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<CPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
                let term = &m[0][j] * &det_rec(ctx, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// True iff `p` is a nonzero constant.
pub fn is_unit(p: &CPoly) -> bool {
    p.is_unit()
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix[{}]{}", self.ctx, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::z_pair;
    use crate::parse::{parse_cmatrix, parse_cpoly};

    fn c(s: &str) -> CPoly {
        parse_cpoly(s, &z_pair()).unwrap()
    }

    #[test]
    fn leading_forms() {
        assert_eq!(leading_form(&c("1 + z1*z2")).unwrap(), c("z1*z2"));
        assert_eq!(leading_form(&c("5")).unwrap(), c("5"));
        assert_eq!(leading_form(&c("z1^2 + z1 + 1")).unwrap(), c("z1^2"));
        assert_eq!(leading_form(&c("0")), Err(Error::ZeroInput));
    }

    #[test]
    fn homogeneous_division() {
        assert_eq!(exact_divide_homogeneous(&c("z1^2"), &c("z1")).unwrap(), Some(c("z1")));
        assert_eq!(exact_divide_homogeneous(&c("z1*z2"), &c("z1^2")).unwrap(), None);
        assert_eq!(exact_divide_homogeneous(&c("z1^2 + z1*z2"), &c("z1")).unwrap(), Some(c("z1 + z2")));
        assert_eq!(exact_divide_homogeneous(&c("z1^2 - z2^2"), &c("z1 + z2")).unwrap(), Some(c("z1 - z2")));
        assert_eq!(exact_divide_homogeneous(&c("z1^2 + z2^2"), &c("z1 + z2")).unwrap(), None);
        assert_eq!(exact_divide_homogeneous(&c("z1 + 1"), &c("z1")), Err(Error::NotHomogeneous));
        assert_eq!(exact_divide_homogeneous(&c("z1"), &c("0")), Err(Error::ZeroInput));
    }

    #[test]
    fn anick_determinant_and_units() {
        let zp = z_pair();
        let m = parse_cmatrix("[[1 + z1*z2, z2^2], [-z1^2, 1 - z1*z2]]", &zp).unwrap();
        assert_eq!(m.det().unwrap(), c("1"));
        assert_eq!(CMatrix::identity(&zp, 2).det().unwrap(), c("1"));
        assert!(!is_unit(&c("z1")));
        assert!(!is_unit(&c("0")));
        assert!(is_unit(&c("-3/4")));
        let inv = m.inverse_2x2().unwrap();
        assert_eq!(inv, parse_cmatrix("[[1 - z1*z2, -z2^2], [z1^2, 1 + z1*z2]]", &zp).unwrap());
        assert!(m.checked_mul(&inv).unwrap().is_identity());
        let singular = parse_cmatrix("[[1, 1], [0, 0]]", &zp).unwrap();
        assert_eq!(singular.inverse_2x2(), Err(Error::NotInvertible));
        let nonunit = parse_cmatrix("[[z1, 0], [0, 1]]", &zp).unwrap();
        assert_eq!(nonunit.inverse_2x2(), Err(Error::NotInvertible));
    }

    #[test]
    fn three_by_three_det() {
        let zp = z_pair();
        let m = parse_cmatrix("[[1, 0, 0], [z1, 1, 0], [z2^2, 0, 1]]", &zp).unwrap();
        assert_eq!(m.det().unwrap(), c("1"));
        let m = parse_cmatrix("[[z1, 1, 0], [0, z2, 1], [1, 0, 1]]", &zp).unwrap();
        // z1*(z2*1 - 1*0) - 1*(0*1 - 1*1) + 0
        assert_eq!(m.det().unwrap(), c("z1*z2 + 1"));
    }

    #[test]
    fn exps_enumeration() {
        assert_eq!(Exps::all_of_degree(2, 3).len(), 4);
        assert_eq!(Exps::all_of_degree(3, 2).len(), 6);
        assert_eq!(Exps::all_of_degree(0, 0).len(), 1);
    }
}
