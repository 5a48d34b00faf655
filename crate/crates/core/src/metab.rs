//! Computations in the free metabelian algebra through associative
//! representatives: the Jacobian over `K[U, V]`, commutator-ideal
//! membership, the reduced 2x2 Jacobian of maps inducing the identity on
//! the polynomial algebra, cyclic equivalence, and the Fox trace test.

use std::fmt;

use num_traits::{One, Zero};

use crate::alphabet::{xyz, z_pair, Ctx, Var};
use crate::autom::{Criterion, NcEndo, Verdict};
use crate::cring::{is_unit, CMatrix, CPoly};
use crate::deriv::{fox, metab_derivative, Side, UVContext};
use crate::error::{Error, Result};
use crate::field::Q;
use crate::ge2::{ge2_membership, Membership};
use crate::linalg;
use crate::ncpoly::{NcPoly, Word};
use crate::parse::parse_nc;

/// Entry `(i, j)` is the metabelian derivative of `φ(x_j)` by `x_i`.
pub fn jm(phi: &NcEndo) -> Result<CMatrix> {
    let uv = UVContext::new(phi.ctx())?;
    let ctx = phi.ctx();
    let rows = ctx.vars().map(|xi| phi.images().iter().map(|f| metab_derivative(f, xi, &uv)).collect()).collect();
    CMatrix::new(uv.ctx(), rows)
}

pub fn is_metab_automorphism(phi: &NcEndo) -> Result<bool> {
    Ok(is_unit(&jm(phi)?.det()?))
}

/// `Σ (u_i - v_i) ∂f/∂x_i`.
pub fn ideal_test_sum(f: &NcPoly) -> Result<CPoly> {
    let uv = UVContext::new(f.ctx())?;
    let mut sum = CPoly::zero(uv.ctx());
    for xi in f.ctx().vars() {
        let d = &CPoly::var(uv.ctx(), uv.u(xi)) - &CPoly::var(uv.ctx(), uv.v(xi));
        sum = &sum + &(&d * &metab_derivative(f, xi, &uv));
    }
    Ok(sum)
}

/// Membership in the commutator ideal. The derivative sum vanishes on
/// constants too, so the constant term is checked separately.
pub fn commutator_ideal_member(f: &NcPoly) -> Result<bool> {
    Ok(f.constant_term().is_zero() && ideal_test_sum(f)?.is_zero())
}

/// True when `φ(x_i) - x_i` lies in the commutator ideal for every `i`.
pub fn induces_identity(phi: &NcEndo) -> Result<bool> {
    for v in phi.ctx().vars() {
        if !commutator_ideal_member(&(phi.image(v) - &NcPoly::var(phi.ctx(), v)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The upper-left block of the metabelian Jacobian at `x, y -> 0`, for a
/// map of `K⟨x, y, z⟩` inducing the identity on `K[x, y, z]`, over `z1, z2`.
pub fn j2_bar(phi: &NcEndo) -> Result<CMatrix> {
    if phi.ctx().names() != xyz().names() {
        return Err(Error::Invalid("expected the alphabet x, y, z".into()));
    }
    if !induces_identity(phi)? {
        return Err(Error::IdentityInductionFailed);
    }
    let m = jm(phi)?;
    let zp = z_pair();
    let images: Vec<CPoly> = m
        .ctx()
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "z1" => CPoly::var(&zp, 0),
            "z2" => CPoly::var(&zp, 1),
            _ => CPoly::zero(&zp),
        })
        .collect();
    let s = m.map(&zp, |p| p.eval(&zp, &images));
    for j in 0..3 {
        let expected = if j == 2 { CPoly::one(&zp) } else { CPoly::zero(&zp) };
        if *s.get(2, j) != expected {
            return Err(Error::ShapeViolation(format!("third row entry {j} is {}", s.get(2, j))));
        }
    }
    for i in 0..2 {
        for j in 0..3 {
            let want = if i == j { Q::one() } else { Q::zero() };
            if s.get(i, j).constant_term() != want {
                return Err(Error::ShapeViolation(format!("entry ({i}, {j}) has constant term {}", s.get(i, j).constant_term())));
            }
        }
    }
    Ok(s.submatrix(0..2, 0..2))
}

/// Wildness of both nontrivial coordinates when the reduced Jacobian is not
/// elementary; inconclusive otherwise.
pub fn umirbaev_wildness_evidence(phi: &NcEndo) -> Result<Verdict> {
    let j2 = j2_bar(phi)?;
    Ok(match ge2_membership(&j2)? {
        Membership::NotMember(witness) => {
            Verdict::Wild { witness, criterion: Criterion::MetabelianJ2, matrix: Some(j2) }
        }
        Membership::Member(_) => Verdict::Inconclusive {
            reason: "reduced metabelian Jacobian is elementary, which is necessary but not sufficient for tameness".into(),
        },
    })
}

/// Words replaced by their least rotation, coefficients merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicClass {
    pub representative: NcPoly,
}

impl CyclicClass {
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

pub fn min_rotation(w: &Word) -> Word {
    let n = w.len();
    (0..n.max(1))
        .map(|k| Word(w.0[k.min(n)..].iter().chain(&w.0[..k.min(n)]).copied().collect()))
        .min()
        .unwrap_or_else(|| w.clone())
}

pub fn cyclic_class(f: &NcPoly) -> CyclicClass {
    CyclicClass { representative: NcPoly::from_terms(f.ctx(), f.terms().map(|(w, c)| (min_rotation(w), c.clone()))) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome {
    Pass { k: usize },
    /// The nonzero class rules out invertibility.
    Fail { k: usize, residual: CyclicClass },
    NotApplicable { reason: String },
}

/// The Fox trace test for a map congruent to the identity modulo the
/// `k`-th power of the augmentation ideal, `k` the least degree of
/// `σ(x_i) - x_i`.
pub fn trace_test(sigma: &NcEndo, side: Side) -> Result<TraceOutcome> {
    let ctx = sigma.ctx();
    let diffs: Vec<NcPoly> = ctx.vars().map(|v| sigma.image(v) - &NcPoly::var(ctx, v)).collect();
    let min_deg = diffs.iter().flat_map(|d| d.terms().map(|(w, _)| w.len())).min();
    let Some(k) = min_deg else {
        return Ok(TraceOutcome::NotApplicable { reason: "the map is the identity".into() });
    };
    if k < 2 {
        return Ok(TraceOutcome::NotApplicable { reason: format!("σ - id has a component of degree {k}") });
    }
    let mut trace = NcPoly::zero(ctx);
    for (v, d) in ctx.vars().zip(&diffs) {
        trace = &trace + &fox(&d.component(k), v, side);
    }
    let residual = cyclic_class(&trace.component(k - 1));
    Ok(if residual.is_zero() { TraceOutcome::Pass { k } } else { TraceOutcome::Fail { k, residual } })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

/// The two linear constraints on the coefficients of the six degree-4
/// commutator products in a lifting of `(x + x²[y, z], y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub products: Vec<String>,
    pub right: Vec<Q>,
    pub right_offset: Q,
    pub left: Vec<Q>,
    pub left_offset: Q,
    pub verdict: Consistency,
}

/// Coefficient of the class of `xyz - xzy` in the class of the multilinear
/// part of the Fox derivative.
pub fn xyz_class_coefficient(f: &NcPoly, v: Var, side: Side) -> Q {
    let d = fox(f, v, side);
    let multilinear = d.filter(|w| {
        let mut l = w.0.clone();
        l.sort();
        l == [Var(0), Var(1), Var(2)]
    });
    cyclic_class(&multilinear).representative.coeff(&Word(vec![Var(0), Var(1), Var(2)]))
}

pub fn tau_lift_obstruction() -> ObstructionReport {
    let ctx = xyz();
    let p = |s: &str| parse_nc(s, &ctx).expect("fixed literal");
    let products = [
        ("[x,y]*[x,z]", 0),
        ("[x,z]*[x,y]", 0),
        ("[x,y]*[y,z]", 1),
        ("[y,z]*[x,y]", 1),
        ("[x,z]*[y,z]", 2),
        ("[y,z]*[x,z]", 2),
    ];
    let coeffs = |side| products.iter().map(|(s, v)| xyz_class_coefficient(&p(s), Var(*v), side)).collect::<Vec<_>>();
    let (right, left) = (coeffs(Side::Right), coeffs(Side::Left));
    let tail = p("x^2*[y,z]");
    let right_offset = xyz_class_coefficient(&tail, Var(0), Side::Right);
    let left_offset = xyz_class_coefficient(&tail, Var(0), Side::Left);
    let system = vec![right.clone(), left.clone()];
    let rhs = vec![-right_offset.clone(), -left_offset.clone()];
    let verdict = match linalg::solve(&system, &rhs) {
        Some(_) => Consistency::Consistent,
        None => Consistency::Inconsistent,
    };
    ObstructionReport {
        products: products.iter().map(|(s, _)| s.to_string()).collect(),
        right,
        right_offset,
        left,
        left_offset,
        verdict,
    }
}

/// Context helper for callers naming the doubles of `x, y, z`.
pub fn uv_xyz() -> Ctx {
    UVContext::new(&xyz()).expect("valid names").ctx().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::{anick, invert_z_linear, ZLinearAuto};
    use crate::field::q;
    use crate::parse::{parse_cmatrix, parse_cpoly};

    fn nc(s: &str) -> NcPoly {
        parse_nc(s, &xyz()).unwrap()
    }

    fn endo(s: &str) -> NcEndo {
        NcEndo::parse(s, &xyz()).unwrap()
    }

    #[test]
    fn tau_jacobian() {
        let m = jm(&endo("x + x^2*[y,z] ; y ; z")).unwrap();
        let expected = parse_cmatrix("[[1, 0, 0], [x1^2*(z2 - z1), 1, 0], [x1^2*(y1 - y2), 0, 1]]", &uv_xyz()).unwrap();
        assert_eq!(m, expected);
        assert_eq!(m.det().unwrap(), CPoly::one(m.ctx()));
        assert!(jm(&NcEndo::identity(&xyz())).unwrap().is_identity());
    }

    #[test]
    fn metab_automorphisms() {
        assert!(is_metab_automorphism(&endo("x + x^2*[y,z] ; y ; z")).unwrap());
        assert!(!is_metab_automorphism(&endo("x^2 ; y ; z")).unwrap());
        assert!(is_metab_automorphism(&NcEndo::identity(&xyz())).unwrap());
    }

    #[test]
    fn ideal_membership() {
        assert!(commutator_ideal_member(&nc("[x,y]")).unwrap());
        assert!(!commutator_ideal_member(&nc("x*y")).unwrap());
        assert!(commutator_ideal_member(&nc("0")).unwrap());
        assert!(!commutator_ideal_member(&nc("5")).unwrap());
        assert!(commutator_ideal_member(&nc("z*[x,y]*x + [y,z]^2")).unwrap());
    }

    #[test]
    fn anick_jacobian_specializes_to_its_z_matrix() {
        let m = jm(&anick()).unwrap();
        let zp = z_pair();
        let images: Vec<CPoly> = ["0", "0", "z1", "0", "0", "z2"].iter().map(|s| parse_cpoly(s, &zp).unwrap()).collect();
        let s = m.map(&zp, |p| p.eval(&zp, &images)).submatrix(0..2, 0..2);
        assert_eq!(s, crate::autom::jz(&anick()).unwrap());
        assert_eq!(j2_bar(&anick()), Err(Error::IdentityInductionFailed));
    }

    #[test]
    fn kernel_generator_is_inconclusive() {
        let psi = endo("x + [y,z] ; y ; z");
        let j2 = j2_bar(&psi).unwrap();
        assert_eq!(j2, parse_cmatrix("[[1, 0], [z2 - z1, 1]]", &z_pair()).unwrap());
        assert!(matches!(umirbaev_wildness_evidence(&psi).unwrap(), Verdict::Inconclusive { .. }));
        assert!(j2_bar(&NcEndo::identity(&xyz())).unwrap().is_identity());
    }

    #[test]
    fn anick_times_inverse_of_its_shadow_is_wild() {
        // The z-linear map with the same image in K[x, y, z] as the Anick
        // automorphism, whose matrix lies over K[z1] and so is elementary.
        let shadow = endo("x + z^2*x - z^2*y ; y + z^2*x - z^2*y ; z");
        let inv = invert_z_linear(&ZLinearAuto::from_endo(&shadow).unwrap()).unwrap().to_endo().unwrap();
        let theta = inv.compose(&anick()).unwrap();
        assert!(induces_identity(&theta).unwrap());
        let v = umirbaev_wildness_evidence(&theta).unwrap();
        assert!(matches!(v, Verdict::Wild { criterion: Criterion::MetabelianJ2, .. }));
    }

    #[test]
    fn cyclic_classes() {
        assert!(cyclic_class(&nc("x*y*z - y*z*x")).is_zero());
        assert_eq!(cyclic_class(&nc("x*[y,z]")).representative, nc("x*y*z - x*z*y"));
        assert!(!cyclic_class(&nc("x*y*z - x*z*y")).is_zero());
        assert_eq!(min_rotation(&Word(vec![])), Word(vec![]));
    }

    #[test]
    fn trace_tests() {
        assert_eq!(trace_test(&endo("x + [y,z]^2 ; y ; z"), Side::Right).unwrap(), TraceOutcome::Pass { k: 4 });
        let TraceOutcome::Fail { k, residual } = trace_test(&endo("x + x^2*[y,z] ; y ; z"), Side::Right).unwrap() else {
            panic!()
        };
        assert_eq!(k, 4);
        assert_eq!(residual, cyclic_class(&nc("x*y*z - x*z*y")));
        assert!(matches!(trace_test(&NcEndo::identity(&xyz()), Side::Right).unwrap(), TraceOutcome::NotApplicable { .. }));
        assert!(matches!(trace_test(&endo("x + y ; y ; z"), Side::Left).unwrap(), TraceOutcome::NotApplicable { .. }));
    }

    #[test]
    fn tau_obstruction() {
        let r = tau_lift_obstruction();
        let expected: Vec<Q> = [-1, 1, -1, 1, -1, 1].into_iter().map(q).collect();
        assert_eq!(r.right, expected);
        assert_eq!(r.left, expected);
        assert_eq!((r.right_offset.clone(), r.left_offset.clone()), (q(1), q(0)));
        assert_eq!(r.verdict, Consistency::Inconsistent);
    }
}
