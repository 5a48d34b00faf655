//! Endomorphisms of the free associative algebra, automorphisms fixing `z`
//! that are linear in `x` and `y`, and the tame/wild decision procedures
//! built on the 2x2 Euclidean reduction.
//!
//! Composition follows `(φψ)(u) = φ(ψ(u))`.

use std::fmt;

use num_traits::Zero;

use crate::alphabet::{same_ctx, xyz, z_pair, Alphabet, Ctx, Var};
use crate::cring::{is_unit, CMatrix, CPoly};
use crate::error::{Error, Result};
use crate::field::Q;
use crate::ge2::{
    complete_to_ge2, euclid_reduce_pair, ge2_membership, Certificate, Completion, ElemStep, Membership, PairReduction,
    StuckReason, StuckWitness,
};
use crate::ncpoly::{sandwich, NcPoly};
use crate::parse::{parse_nc, split_endo};

/// An algebra endomorphism given by the images of the generators.
#[derive(Clone, PartialEq, Eq)]
pub struct NcEndo {
    ctx: Ctx,
    images: Vec<NcPoly>,
}

impl NcEndo {
    pub fn new(ctx: &Ctx, images: Vec<NcPoly>) -> Result<NcEndo> {
        if images.len() != ctx.len() {
            return Err(Error::Invalid(format!("expected {} images, got {}", ctx.len(), images.len())));
        }
        let images = images.into_iter().map(|p| p.with_ctx(ctx)).collect::<Result<Vec<_>>>()?;
        Ok(NcEndo { ctx: ctx.clone(), images })
    }

    /// Parses `f ; g ; h`, one image per generator in alphabet order.
    pub fn parse(text: &str, ctx: &Ctx) -> Result<NcEndo> {
        let images = split_endo(text).into_iter().map(|s| parse_nc(s, ctx)).collect::<Result<Vec<_>>>()?;
        NcEndo::new(ctx, images)
    }

    pub fn identity(ctx: &Ctx) -> NcEndo {
        NcEndo { ctx: ctx.clone(), images: ctx.vars().map(|v| NcPoly::var(ctx, v)).collect() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn images(&self) -> &[NcPoly] {
        &self.images
    }

    pub fn image(&self, v: Var) -> &NcPoly {
        &self.images[v.index()]
    }

    pub fn image_named(&self, name: &str) -> Result<&NcPoly> {
        Ok(self.image(self.ctx.var_or_err(name)?))
    }

    pub fn apply(&self, f: &NcPoly) -> Result<NcPoly> {
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(f.eval(&self.ctx, &self.images))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NcEndo) -> Result<NcEndo> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(NcEndo { ctx: self.ctx.clone(), images: other.images.iter().map(|g| g.eval(&self.ctx, &self.images)).collect() })
    }

    pub fn is_identity(&self) -> bool {
        *self == NcEndo::identity(&self.ctx)
    }

    pub fn fixes(&self, v: Var) -> bool {
        *self.image(v) == NcPoly::var(&self.ctx, v)
    }

    /// Sum of the degrees of the images.
    pub fn degree(&self) -> usize {
        self.images.iter().map(|p| p.degree().unwrap_or(0)).sum()
    }

    /// Replaces one image.
    pub fn with_image(&self, v: Var, p: NcPoly) -> Result<NcEndo> {
        let mut images = self.images.clone();
        images[v.index()] = p.with_ctx(&self.ctx)?;
        Ok(NcEndo { ctx: self.ctx.clone(), images })
    }
}

/// Left-to-right composite `s_1 ∘ s_2 ∘ ⋯`; the identity for no steps.
pub fn compose_all(ctx: &Ctx, steps: &[NcEndo]) -> Result<NcEndo> {
    steps.iter().try_fold(NcEndo::identity(ctx), |acc, s| acc.compose(s))
}

impl fmt::Display for NcEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ; "))
    }
}

impl fmt::Debug for NcEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

struct Xyz {
    x: Var,
    y: Var,
    z: Var,
}

fn xyz_vars(ctx: &Ctx) -> Result<Xyz> {
    Ok(Xyz { x: ctx.var_or_err("x")?, y: ctx.var_or_err("y")?, z: ctx.var_or_err("z")? })
}

fn require_z_fixed(rho: &NcEndo) -> Result<Xyz> {
    let v = xyz_vars(rho.ctx())?;
    if rho.ctx().len() != 3 {
        return Err(Error::Invalid("expected the alphabet x, y, z".into()));
    }
    if !rho.fixes(v.z) {
        return Err(Error::NotFixed("z".into()));
    }
    Ok(v)
}

/// A `z`-fixing endomorphism `x -> a_f x + b_f y + f0(z)`,
/// `y -> a_g x + b_g y + g0(z)`, the coefficients acting by two-sided
/// multiplication by powers of `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZLinearAuto {
    /// `[[a_f, a_g], [b_f, b_g]]` over `z1, z2`: columns are the images of
    /// `x` and `y`.
    pub matrix: CMatrix,
    pub f0: NcPoly,
    pub g0: NcPoly,
}

impl ZLinearAuto {
    pub fn from_endo(rho: &NcEndo) -> Result<ZLinearAuto> {
        let v = require_z_fixed(rho)?;
        let f = rho.image(v.x).xy_linear_decompose()?;
        let g = rho.image(v.y).xy_linear_decompose()?;
        let matrix = CMatrix::new(&z_pair(), vec![vec![f.a, g.a], vec![f.b, g.b]])?;
        Ok(ZLinearAuto { matrix, f0: f.tail, g0: g.tail })
    }

    pub fn to_endo(&self) -> Result<NcEndo> {
        let ctx = self.f0.ctx().clone();
        let v = xyz_vars(&ctx)?;
        let m = &self.matrix;
        let f = &(&sandwich(m.get(0, 0), &ctx, v.x)? + &sandwich(m.get(1, 0), &ctx, v.y)?) + &self.f0;
        let g = &(&sandwich(m.get(0, 1), &ctx, v.x)? + &sandwich(m.get(1, 1), &ctx, v.y)?) + &self.g0;
        NcEndo::new(&ctx, vec![f, g, NcPoly::var(&ctx, v.z)])
    }

    pub fn is_automorphism(&self) -> Result<bool> {
        Ok(is_unit(&self.matrix.det()?))
    }
}

/// The 2x2 matrix of a `z`-fixing endomorphism linear in `x`, `y`.
pub fn jz(rho: &NcEndo) -> Result<CMatrix> {
    Ok(ZLinearAuto::from_endo(rho)?.matrix)
}

pub fn is_z_linear_automorphism(rho: &NcEndo) -> Result<bool> {
    ZLinearAuto::from_endo(rho)?.is_automorphism()
}

/// Inverse of an invertible `z`-linear map, via `ρ = λ ∘ τ` with `λ` the
/// homogeneous part and `τ` the translation, so `ρ⁻¹ = τ⁻¹ ∘ λ⁻¹`.
pub fn invert_z_linear(rho: &ZLinearAuto) -> Result<ZLinearAuto> {
    let ctx = rho.f0.ctx().clone();
    let v = xyz_vars(&ctx)?;
    let lambda_inv = ZLinearAuto {
        matrix: rho.matrix.inverse_2x2()?,
        f0: NcPoly::zero(&ctx),
        g0: NcPoly::zero(&ctx),
    }
    .to_endo()?;
    let tau_inv = NcEndo::new(
        &ctx,
        vec![&NcPoly::var(&ctx, v.x) - &rho.f0, &NcPoly::var(&ctx, v.y) - &rho.g0, NcPoly::var(&ctx, v.z)],
    )?;
    ZLinearAuto::from_endo(&tau_inv.compose(&lambda_inv)?)
}

/// The elementary `z`-linear automorphism whose matrix is that of the step.
pub fn elementary_from_step(step: &ElemStep, ctx: &Ctx) -> Result<NcEndo> {
    let v = xyz_vars(ctx)?;
    let (x, y) = (NcPoly::var(ctx, v.x), NcPoly::var(ctx, v.y));
    let (f, g) = match step {
        ElemStep::E21(q) => (&x + &sandwich(q, ctx, v.y)?, y),
        ElemStep::E12(q) => (x.clone(), &y + &sandwich(q, ctx, v.x)?),
        ElemStep::Diag(a, b) => (x.scale(a), y.scale(b)),
    };
    NcEndo::new(ctx, vec![f, g, NcPoly::var(ctx, v.z)])
}

/// Which sufficient condition a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// A `z`-fixing automorphism linear in `x`, `y` is tame in that class
    /// iff its matrix lies in the elementary group.
    ZLinearGe2,
    /// A coordinate linear in `x`, `y` whose coefficient column cannot be
    /// reduced is wild.
    LinearCoordinate,
    /// A `z`-coordinate whose linear part in `x`, `y` is a wild
    /// `z`-coordinate is wild.
    LinearPartCoordinate,
    /// A `z`-fixing automorphism whose linear part is `z`-wild is wild.
    LinearPartAutomorphism,
    /// An automorphism inducing the identity on the polynomial algebra
    /// whose reduced metabelian Jacobian is not elementary has wild
    /// coordinates.
    MetabelianJ2,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Criterion::ZLinearGe2 => "z-linear-ge2",
            Criterion::LinearCoordinate => "linear-coordinate",
            Criterion::LinearPartCoordinate => "linear-part-coordinate",
            Criterion::LinearPartAutomorphism => "linear-part-automorphism",
            Criterion::MetabelianJ2 => "metabelian-j2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Criterion> {
        [
            Criterion::ZLinearGe2,
            Criterion::LinearCoordinate,
            Criterion::LinearPartCoordinate,
            Criterion::LinearPartAutomorphism,
            Criterion::MetabelianJ2,
        ]
        .into_iter()
        .find(|c| c.tag() == tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `steps` compose left to right to the automorphism realizing the
    /// claim; `certificate` factors its matrix.
    Tame { steps: Vec<NcEndo>, certificate: Certificate },
    /// `matrix` is the non-elementary matrix whose reduction got stuck at
    /// `witness`.
    Wild { witness: StuckWitness, criterion: Criterion, matrix: Option<CMatrix> },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Tame { .. } => "tame",
            Verdict::Wild { .. } => "wild",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_tame(&self) -> bool {
        matches!(self, Verdict::Tame { .. })
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, Verdict::Wild { .. })
    }

    pub fn witness_pair(&self) -> Option<(&CPoly, &CPoly)> {
        match self {
            Verdict::Wild { witness, .. } => Some((&witness.a, &witness.b)),
            _ => None,
        }
    }

    fn inconclusive(reason: impl Into<String>) -> Verdict {
        Verdict::Inconclusive { reason: reason.into() }
    }
}

fn translation_steps(ctx: &Ctx, f0: &NcPoly, g0: &NcPoly) -> Result<Vec<NcEndo>> {
    let v = xyz_vars(ctx)?;
    let id = NcEndo::identity(ctx);
    let mut out = Vec::new();
    if !f0.is_zero() {
        out.push(id.with_image(v.x, &NcPoly::var(ctx, v.x) + f0)?);
    }
    if !g0.is_zero() {
        out.push(id.with_image(v.y, &NcPoly::var(ctx, v.y) + g0)?);
    }
    Ok(out)
}

fn certificate_steps(cert: &Certificate, ctx: &Ctx) -> Result<Vec<NcEndo>> {
    cert.steps.iter().map(|s| elementary_from_step(s, ctx)).collect()
}

/// Decides `z`-tameness of an invertible `z`-fixing map linear in `x`, `y`.
pub fn decide_z_tame_linear(rho: &NcEndo) -> Result<Verdict> {
    let lin = ZLinearAuto::from_endo(rho)?;
    if !lin.is_automorphism()? {
        return Err(Error::NotInvertible);
    }
    Ok(match ge2_membership(&lin.matrix)? {
        Membership::Member(certificate) => {
            let mut steps = certificate_steps(&certificate, rho.ctx())?;
            steps.extend(translation_steps(rho.ctx(), &lin.f0, &lin.g0)?);
            Verdict::Tame { steps, certificate }
        }
        Membership::NotMember(witness) => {
            Verdict::Wild { witness, criterion: Criterion::ZLinearGe2, matrix: Some(lin.matrix) }
        }
    })
}

/// A coefficient column of a coordinate generates the unit ideal, so it
/// cannot vanish at the origin.
fn vanishes_at_origin(a: &CPoly, b: &CPoly) -> bool {
    a.constant_term().is_zero() && b.constant_term().is_zero()
}

/// Decides whether a `z`-coordinate linear in `x`, `y` is tame. Coordinacy
/// itself is the caller's obligation; a column that vanishes at the origin
/// or reduces to a nonconstant gcd shows the polynomial is no coordinate at
/// all and gives an inconclusive verdict.
pub fn decide_tame_coordinate_linear(f: &NcPoly) -> Result<Verdict> {
    let form = f.xy_linear_decompose()?;
    if vanishes_at_origin(&form.a, &form.b) {
        return Ok(Verdict::inconclusive("coefficient column vanishes at the origin, so the polynomial is not a coordinate"));
    }
    Ok(match complete_to_ge2(&form.a, &form.b)? {
        Completion::Completed { certificate, .. } => {
            let zero = NcPoly::zero(f.ctx());
            let mut steps = certificate_steps(&certificate, f.ctx())?;
            steps.extend(translation_steps(f.ctx(), &form.tail, &zero)?);
            Verdict::Tame { steps, certificate }
        }
        Completion::NotCompletable(witness) => match witness.reason {
            StuckReason::NeitherLeadingFormDivides => {
                Verdict::Wild { witness, criterion: Criterion::LinearCoordinate, matrix: None }
            }
            StuckReason::NonconstantWithZeroPartner => {
                Verdict::inconclusive("coefficient column generates a proper ideal, so the polynomial is not a coordinate")
            }
        },
    })
}

fn xy(ctx: &Ctx) -> Result<[Var; 2]> {
    let v = xyz_vars(ctx)?;
    Ok([v.x, v.y])
}

fn is_xy_linear(f: &NcPoly) -> Result<bool> {
    Ok(f.degree_in(&xy(f.ctx())?).unwrap_or(0) <= 1)
}

/// Wildness of a `z`-coordinate through its linear part in `x`, `y`.
pub fn decide_wild_coordinate(f: &NcPoly) -> Result<Verdict> {
    let vars = xy(f.ctx())?;
    if !f.homogeneous_component(0, &vars).is_zero() {
        return Err(Error::HypothesisViolated("the coordinate has terms depending only on z".into()));
    }
    let linear = f.homogeneous_component(1, &vars);
    if linear.is_zero() {
        return Ok(Verdict::inconclusive("linear part in x, y is zero"));
    }
    let form = linear.xy_linear_decompose()?;
    if vanishes_at_origin(&form.a, &form.b) {
        return Ok(Verdict::inconclusive("linear part is not a z-coordinate"));
    }
    match euclid_reduce_pair(&form.a, &form.b)? {
        PairReduction::Stuck(witness) if witness.reason == StuckReason::NeitherLeadingFormDivides => {
            Ok(Verdict::Wild { witness, criterion: Criterion::LinearPartCoordinate, matrix: None })
        }
        PairReduction::Stuck(_) => Ok(Verdict::inconclusive("linear part is not a z-coordinate")),
        PairReduction::Reduced { .. } if is_xy_linear(f)? => decide_tame_coordinate_linear(f),
        PairReduction::Reduced { .. } => Ok(Verdict::inconclusive(
            "linear part is a tame z-coordinate; this only decides wildness for nonlinear coordinates",
        )),
    }
}

/// Translations `(x + α, y + β, z)` tried before taking linear parts.
pub const TRANSLATION_CANDIDATES: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// The linear part in `x`, `y` of `τ ∘ ρ`, `τ = (x + α, y + β, z)`, that is
/// of the images with `x`, `y` shifted by `α`, `β`. Composing with a
/// translation does not change tameness.
pub fn shifted_linear_part(rho: &NcEndo, shift: (&Q, &Q)) -> Result<NcEndo> {
    let v = require_z_fixed(rho)?;
    let ctx = rho.ctx();
    let tau = NcEndo::new(
        ctx,
        vec![
            &NcPoly::var(ctx, v.x) + &NcPoly::constant(ctx, shift.0.clone()),
            &NcPoly::var(ctx, v.y) + &NcPoly::constant(ctx, shift.1.clone()),
            NcPoly::var(ctx, v.z),
        ],
    )?;
    let shifted = tau.compose(rho)?;
    let vars = [v.x, v.y];
    NcEndo::new(
        ctx,
        vec![
            shifted.image(v.x).homogeneous_component(1, &vars),
            shifted.image(v.y).homogeneous_component(1, &vars),
            NcPoly::var(ctx, v.z),
        ],
    )
}

/// Wildness of a `z`-fixing automorphism through linear parts. The linear
/// part is taken after each translation in [`TRANSLATION_CANDIDATES`]; a
/// `z`-wild linear part of any of them proves wildness.
pub fn decide_wild_automorphism_zfixing(rho: &NcEndo) -> Result<Verdict> {
    let v = require_z_fixed(rho)?;
    if is_xy_linear(rho.image(v.x))? && is_xy_linear(rho.image(v.y))? {
        if !is_z_linear_automorphism(rho)? {
            return Ok(Verdict::inconclusive("linear map with non-invertible matrix is not an automorphism"));
        }
        return decide_z_tame_linear(rho);
    }
    let mut any_automorphic = false;
    for (a, b) in TRANSLATION_CANDIDATES {
        let lin = shifted_linear_part(rho, (&Q::from_integer(a.into()), &Q::from_integer(b.into())))?;
        if !is_z_linear_automorphism(&lin)? {
            continue;
        }
        any_automorphic = true;
        if let Verdict::Wild { witness, matrix, .. } = decide_z_tame_linear(&lin)? {
            return Ok(Verdict::Wild { witness, criterion: Criterion::LinearPartAutomorphism, matrix });
        }
    }
    Ok(Verdict::inconclusive(if any_automorphic {
        "every tried linear part is z-tame; this only decides wildness"
    } else {
        "no tried linear part is an automorphism"
    }))
}

/// `(x + z(xz - zy)^m, y + (xz - zy)^m z, z)`.
pub fn anick_m(m: u32) -> Result<NcEndo> {
    if m == 0 {
        return Err(Error::Invalid("the exponent must be positive".into()));
    }
    let ctx = xyz();
    let [x, y, z] = [0u32, 1, 2].map(|i| NcPoly::var(&ctx, Var(i)));
    let c = (&(&x * &z) - &(&z * &y)).pow(m);
    NcEndo::new(&ctx, vec![&x + &(&z * &c), &y + &(&c * &z), z])
}

pub fn anick() -> NcEndo {
    anick_m(1).expect("positive exponent")
}

/// The alphabet `t, z` for the polynomials fed to [`sigma_h`].
pub fn tz() -> Ctx {
    Alphabet::new(&["t", "z"]).expect("valid names")
}

/// `(x + z h(xz - zy, z), y + h(xz - zy, z) z, z)` for `h(t, z)` without
/// constant term.
pub fn sigma_h(h: &NcPoly) -> Result<NcEndo> {
    if !h.constant_term().is_zero() {
        return Err(Error::HypothesisViolated("h(0, 0) must be zero".into()));
    }
    let ctx = xyz();
    let [x, y, z] = [0u32, 1, 2].map(|i| NcPoly::var(&ctx, Var(i)));
    let c = &(&x * &z) - &(&z * &y);
    let images = h
        .ctx()
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "t" => Ok(c.clone()),
            "z" => Ok(z.clone()),
            _ if h.involves(h.ctx().var(n).unwrap()) => Err(Error::UnknownVariable(n.clone())),
            _ => Ok(NcPoly::zero(&ctx)),
        })
        .collect::<Result<Vec<_>>>()?;
    let hh = h.eval(&ctx, &images);
    NcEndo::new(&ctx, vec![&x + &(&z * &hh), &y + &(&hh * &z), z])
}

/// The elementary automorphism replacing generator `j` by `α x_j + f`.
pub fn elementary(ctx: &Ctx, j: Var, alpha: Q, f: &NcPoly) -> Result<NcEndo> {
    if alpha.is_zero() {
        return Err(Error::HypothesisViolated("the scalar must be nonzero".into()));
    }
    if f.involves(j) {
        return Err(Error::HypothesisViolated(format!("f must not involve `{}`", ctx.name(j))));
    }
    NcEndo::identity(ctx).with_image(j, &NcPoly::var(ctx, j).scale(&alpha) + f)
}

/// `true` when every image differs from its generator only by a scalar on
/// the generator plus terms free of it, for generators other than `j`
/// fixed.
pub fn has_elementary_shape(rho: &NcEndo, j: Var) -> bool {
    let ctx = rho.ctx();
    if ctx.vars().any(|v| v != j && !rho.fixes(v)) {
        return false;
    }
    let img = rho.image(j);
    let xj = crate::ncpoly::Word(vec![j]);
    let alpha = img.coeff(&xj);
    let rest = img.filter(|w| *w != xj);
    !alpha.is_zero() && !rest.involves(j)
}
