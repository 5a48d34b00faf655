//! Membership in the group generated by diagonal and elementary 2x2
//! matrices over a polynomial ring, decided by the degree-based Euclidean
//! reduction on leading forms.
//!
//! A pair `(a, b)` is reduced by `a <- a - b*q` when the leading form of
//! `b` divides that of `a` (quotient `q`), otherwise by `b <- b - a*q` when
//! the reverse division holds. The pair can be brought to `(α, 0)` with
//! `α` a nonzero constant exactly when it is the first column of a matrix in
//! the group; every reduction step is recorded as the row operation that
//! performs it.

use std::fmt;

use num_traits::One;

use crate::alphabet::Ctx;
use crate::cring::{exact_divide_homogeneous, is_unit, CMatrix, CPoly};
use crate::error::{Error, Result};
use crate::field::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemStep {
    /// `[[1, q], [0, 1]]`
    E12(CPoly),
    /// `[[1, 0], [q, 1]]`
    E21(CPoly),
    /// `[[α, 0], [0, β]]`
    Diag(Q, Q),
}

impl ElemStep {
    pub fn matrix(&self, ctx: &Ctx) -> CMatrix {
        let one = CPoly::one(ctx);
        let zero = CPoly::zero(ctx);
        let rows = match self {
            ElemStep::E12(q) => vec![vec![one.clone(), q.clone()], vec![zero, one]],
            ElemStep::E21(q) => vec![vec![one.clone(), zero], vec![q.clone(), one]],
            ElemStep::Diag(a, b) => vec![
                vec![CPoly::constant(ctx, a.clone()), zero.clone()],
                vec![zero, CPoly::constant(ctx, b.clone())],
            ],
        };
        CMatrix::new(ctx, rows).expect("step entries share the matrix alphabet")
    }

    pub fn inverse(&self) -> ElemStep {
        match self {
            ElemStep::E12(q) => ElemStep::E12(-q),
            ElemStep::E21(q) => ElemStep::E21(-q),
            ElemStep::Diag(a, b) => ElemStep::Diag(Q::one() / a, Q::one() / b),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            ElemStep::E12(q) | ElemStep::E21(q) => q.is_zero(),
            ElemStep::Diag(a, b) => a.is_one() && b.is_one(),
        }
    }

    /// Applies the step as a row operation to a column `(a, b)`.
    pub fn apply_column(&self, a: &CPoly, b: &CPoly) -> (CPoly, CPoly) {
        match self {
            ElemStep::E12(q) => (a + &(q * b), b.clone()),
            ElemStep::E21(q) => (a.clone(), b + &(q * a)),
            ElemStep::Diag(x, y) => (a.scale(x), b.scale(y)),
        }
    }
}

impl fmt::Display for ElemStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemStep::E12(q) => write!(f, "E12({q})"),
            ElemStep::E21(q) => write!(f, "E21({q})"),
            ElemStep::Diag(a, b) => write!(f, "Diag({a}, {b})"),
        }
    }
}

/// Product of step matrices, left to right; the identity for no steps.
pub fn recompose(ctx: &Ctx, steps: &[ElemStep]) -> CMatrix {
    steps.iter().fold(CMatrix::identity(ctx, 2), |acc, s| acc.checked_mul(&s.matrix(ctx)).expect("2x2 over one alphabet"))
}

/// Steps whose product is `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<ElemStep>,
    pub target: CMatrix,
}

impl Certificate {
    pub fn recompose(&self) -> CMatrix {
        recompose(self.target.ctx(), &self.steps)
    }

    pub fn verify(&self) -> bool {
        self.recompose() == self.target
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StuckReason {
    /// Both entries nonzero and neither leading form divides the other.
    NeitherLeadingFormDivides,
    /// One entry is zero and the other is not a constant.
    NonconstantWithZeroPartner,
}

impl StuckReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StuckReason::NeitherLeadingFormDivides => "neither-leading-form-divides",
            StuckReason::NonconstantWithZeroPartner => "nonconstant-with-zero-partner",
        }
    }
}

/// The pair at which the reduction stopped, with the row operations that
/// lead to it from the input column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuckWitness {
    pub a: CPoly,
    pub b: CPoly,
    pub reason: StuckReason,
    pub steps: Vec<ElemStep>,
}

impl StuckWitness {
    /// Applies the recorded steps to `(a, b)` and compares with the pair.
    pub fn reached_from(&self, a: &CPoly, b: &CPoly) -> bool {
        let (mut a, mut b) = (a.clone(), b.clone());
        for s in &self.steps {
            let (na, nb) = s.apply_column(&a, &b);
            a = na;
            b = nb;
        }
        a == self.a && b == self.b
    }

    /// Rechecks that no reduction step applies to the pair.
    pub fn recheck(&self) -> Result<bool> {
        Ok(match self.reason {
            StuckReason::NeitherLeadingFormDivides => {
                if self.a.is_zero() || self.b.is_zero() {
                    return Ok(false);
                }
                let (la, lb) = (self.a.leading_form()?, self.b.leading_form()?);
                exact_divide_homogeneous(&la, &lb)?.is_none() && exact_divide_homogeneous(&lb, &la)?.is_none()
            }
            StuckReason::NonconstantWithZeroPartner => {
                (self.b.is_zero() && !self.a.is_constant()) || (self.a.is_zero() && !self.b.is_constant())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairReduction {
    /// `S_k ⋯ S_1 (a, b)ᵀ = (unit, 0)ᵀ` for the recorded row operations.
    Reduced { unit: Q, steps: Vec<ElemStep> },
    Stuck(StuckWitness),
}

/// Runs the Euclidean reduction on a column.
pub fn euclid_reduce_pair(a: &CPoly, b: &CPoly) -> Result<PairReduction> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPair);
    }
    let b = b.clone().with_ctx(a.ctx())?;
    let (mut a, mut b) = (a.clone(), b);
    let mut steps = Vec::new();
    let push = |s: ElemStep, a: &mut CPoly, b: &mut CPoly, steps: &mut Vec<ElemStep>| {
        let (na, nb) = s.apply_column(a, b);
        *a = na;
        *b = nb;
        steps.push(s);
    };
    loop {
        if b.is_zero() {
            if is_unit(&a) {
                return Ok(PairReduction::Reduced { unit: a.constant_term(), steps });
            }
            return Ok(PairReduction::Stuck(StuckWitness { a, b, reason: StuckReason::NonconstantWithZeroPartner, steps }));
        }
        if a.is_zero() {
            if is_unit(&b) {
                // (0, β) -> (β, β) -> (β, 0)
                push(ElemStep::E12(CPoly::one(a.ctx())), &mut a, &mut b, &mut steps);
                push(ElemStep::E21(-&CPoly::one(a.ctx())), &mut a, &mut b, &mut steps);
                continue;
            }
            return Ok(PairReduction::Stuck(StuckWitness { a, b, reason: StuckReason::NonconstantWithZeroPartner, steps }));
        }
        let (la, lb) = (a.leading_form()?, b.leading_form()?);
        if let Some(q) = exact_divide_homogeneous(&la, &lb)? {
            push(ElemStep::E12(-&q), &mut a, &mut b, &mut steps);
        } else if let Some(q) = exact_divide_homogeneous(&lb, &la)? {
            push(ElemStep::E21(-&q), &mut a, &mut b, &mut steps);
        } else {
            return Ok(PairReduction::Stuck(StuckWitness { a, b, reason: StuckReason::NeitherLeadingFormDivides, steps }));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(Certificate),
    NotMember(StuckWitness),
}

/// Decides whether an invertible 2x2 matrix is a product of diagonal and
/// elementary matrices.
pub fn ge2_membership(m: &CMatrix) -> Result<Membership> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Invalid("expected a 2x2 matrix".into()));
    }
    let det = m.det()?;
    if !is_unit(&det) {
        return Err(Error::NotInvertible);
    }
    let ctx = m.ctx();
    match euclid_reduce_pair(m.get(0, 0), m.get(1, 0))? {
        PairReduction::Stuck(witness) => Ok(Membership::NotMember(witness)),
        PairReduction::Reduced { unit, steps } => {
            let mut reduced = m.clone();
            for s in &steps {
                reduced = s.matrix(ctx).checked_mul(&reduced)?;
            }
            // reduced = [[α, c], [0, δ]] with αδ = det
            let delta = reduced.get(1, 1).constant_term();
            let c = reduced.get(0, 1).clone();
            debug_assert!(reduced.get(1, 0).is_zero() && reduced.get(1, 1).is_constant());
            let mut cert: Vec<ElemStep> = steps.iter().map(ElemStep::inverse).collect();
            cert.push(ElemStep::E12(c.scale(&(Q::one() / &delta))));
            cert.push(ElemStep::Diag(unit, delta));
            cert.retain(|s| !s.is_trivial());
            Ok(Membership::Member(Certificate { steps: cert, target: m.clone() }))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Completed { c: CPoly, d: CPoly, certificate: Certificate },
    NotCompletable(StuckWitness),
}

/// Finds a second column `(c, d)` making `[[a, c], [b, d]]` a member, when
/// the reduction of `(a, b)` succeeds.
pub fn complete_to_ge2(a: &CPoly, b: &CPoly) -> Result<Completion> {
    match euclid_reduce_pair(a, b)? {
        PairReduction::Stuck(witness) => Ok(Completion::NotCompletable(witness)),
        PairReduction::Reduced { unit, steps } => {
            let ctx = a.ctx();
            let inverses: Vec<ElemStep> = steps.iter().map(ElemStep::inverse).collect();
            // (c, d)ᵀ = S_1⁻¹ ⋯ S_k⁻¹ (0, 1)ᵀ
            let (mut c, mut d) = (CPoly::zero(ctx), CPoly::one(ctx));
            for s in inverses.iter().rev() {
                let (nc, nd) = s.apply_column(&c, &d);
                c = nc;
                d = nd;
            }
            let target = CMatrix::new(ctx, vec![vec![a.clone(), c.clone()], vec![b.clone(), d.clone()]])?;
            let mut cert = inverses;
            cert.push(ElemStep::Diag(unit, Q::one()));
            cert.retain(|s| !s.is_trivial());
            Ok(Completion::Completed { c, d, certificate: Certificate { steps: cert, target } })
        }
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
    fn anick_column_is_stuck() {
        let PairReduction::Stuck(witness) = euclid_reduce_pair(&c("1 + z1*z2"), &c("-z1^2")).unwrap() else { panic!() };
        assert!(witness.steps.is_empty());
        assert_eq!((witness.a.clone(), witness.b.clone()), (c("1 + z1*z2"), c("-z1^2")));
        assert_eq!(witness.reason, StuckReason::NeitherLeadingFormDivides);
        assert!(witness.recheck().unwrap());
    }

    #[test]
    fn trivial_and_two_step_reductions() {
        assert_eq!(euclid_reduce_pair(&c("1"), &c("0")).unwrap(), PairReduction::Reduced { unit: Q::one(), steps: vec![] });
        let PairReduction::Reduced { unit, steps } = euclid_reduce_pair(&c("z1^2 + 1"), &c("z1")).unwrap() else { panic!() };
        assert_eq!(unit, Q::one());
        assert_eq!(steps, vec![ElemStep::E12(c("-z1")), ElemStep::E21(c("-z1"))]);
        let col = CMatrix::new(&z_pair(), vec![vec![c("z1^2 + 1")], vec![c("z1")]]).unwrap();
        let mut prod = CMatrix::identity(&z_pair(), 2);
        for s in &steps {
            prod = s.matrix(&z_pair()).checked_mul(&prod).unwrap();
        }
        let out = prod.checked_mul(&col).unwrap();
        assert_eq!((out.get(0, 0).clone(), out.get(1, 0).clone()), (c("1"), c("0")));
    }

    #[test]
    fn zero_first_entry_uses_two_transvections() {
        let PairReduction::Reduced { unit, steps } = euclid_reduce_pair(&c("0"), &c("3")).unwrap() else { panic!() };
        assert_eq!(unit, crate::field::q(3));
        assert_eq!(steps.len(), 2);
        assert!(matches!(euclid_reduce_pair(&c("0"), &c("z1")).unwrap(), PairReduction::Stuck(_)));
        assert_eq!(euclid_reduce_pair(&c("0"), &c("0")), Err(Error::ZeroPair));
    }

    #[test]
    fn membership_examples() {
        let zp = z_pair();
        let Membership::Member(cert) = ge2_membership(&CMatrix::identity(&zp, 2)).unwrap() else { panic!() };
        assert!(cert.steps.is_empty());

        let anick = parse_cmatrix("[[1 + z1*z2, z2^2], [-z1^2, 1 - z1*z2]]", &zp).unwrap();
        assert!(matches!(ge2_membership(&anick).unwrap(), Membership::NotMember(_)));

        let e = parse_cmatrix("[[1, z1^3], [0, 1]]", &zp).unwrap();
        let Membership::Member(cert) = ge2_membership(&e).unwrap() else { panic!() };
        assert_eq!(cert.steps, vec![ElemStep::E12(c("z1^3"))]);
        assert!(cert.verify());

        let m = parse_cmatrix("[[z1^2 + 1, z1], [z1, 1]]", &zp).unwrap();
        let Membership::Member(cert) = ge2_membership(&m).unwrap() else { panic!() };
        assert!(cert.verify());

        let singular = parse_cmatrix("[[z1, 0], [0, 1]]", &zp).unwrap();
        assert_eq!(ge2_membership(&singular), Err(Error::NotInvertible));
    }

    #[test]
    fn completion_examples() {
        let Completion::Completed { c: cc, d, .. } = complete_to_ge2(&c("1"), &c("0")).unwrap() else { panic!() };
        assert_eq!((cc, d), (c("0"), c("1")));
        assert!(matches!(complete_to_ge2(&c("1 + z1*z2"), &c("-z1^2")).unwrap(), Completion::NotCompletable(_)));
        let Completion::Completed { c: cc, d, certificate } = complete_to_ge2(&c("z1^2 + 1"), &c("z1")).unwrap() else { panic!() };
        assert!(certificate.verify());
        let det = &(&c("z1^2 + 1") * &d) - &(&c("z1") * &cc);
        assert!(det.is_unit());
        assert!(matches!(ge2_membership(&certificate.target).unwrap(), Membership::Member(_)));
    }

    #[test]
    fn recompose_basics() {
        let zp = z_pair();
        assert!(recompose(&zp, &[]).is_identity());
        assert_eq!(recompose(&zp, &[ElemStep::E12(c("z2"))]), parse_cmatrix("[[1, z2], [0, 1]]", &zp).unwrap());
    }
}
