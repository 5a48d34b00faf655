//! Commands, machine-readable reports and the report verifier.
//!
//! A [`Report`] records the command it answers, so [`verify`] can recheck a
//! certificate against the original input: tame steps are recomposed,
//! matrix factorizations multiplied out, and stuck pairs replayed from the
//! input column and checked for irreducibility. Reports without a
//! certificate are checked by running the command again.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::alphabet::{xyz, z_pair, Alphabet, Ctx, Var};
use crate::autom::{
    anick, anick_m, compose_all, decide_tame_coordinate_linear, decide_wild_automorphism_zfixing, decide_wild_coordinate,
    has_elementary_shape, invert_z_linear, jz, shifted_linear_part, sigma_h, tz, Criterion, NcEndo, Verdict, ZLinearAuto,
    TRANSLATION_CANDIDATES,
};
use crate::cring::{is_unit, CMatrix, CPoly};
use crate::deriv::{dicks_lewin, fox_left, fox_right, metab_derivative, Side, UVContext};
use crate::error::{Error, Result};
use crate::field::{fmt_q, parse_q, Q};
use crate::ge2::{complete_to_ge2, ge2_membership, Certificate, Completion, ElemStep, Membership, StuckReason, StuckWitness};
use crate::metab::{ideal_test_sum, commutator_ideal_member, is_metab_automorphism, j2_bar, jm, tau_lift_obstruction, trace_test, umirbaev_wildness_evidence, Consistency, TraceOutcome};
use crate::natree::{compose_all as na_compose_all, is_elementary, z_tame_decompose, Decomposition, Membership as NaMembership, NaEndo};
use crate::ncpoly::NcPoly;
use crate::parse::{parse_cmatrix, parse_cpoly, parse_na, parse_nc};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivKind {
    Dl,
    Metab,
    FoxL,
    FoxR,
}

fn default_xyz() -> Vec<String> {
    ["x", "y", "z"].map(String::from).to_vec()
}

/// One request; every variant maps to one library operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Command {
    Deriv { kind: DerivKind, poly: String, var: String, vars: Vec<String> },
    Ge2Check { matrix: String, vars: Vec<String> },
    Ge2Complete { a: String, b: String, vars: Vec<String> },
    AutoCompose { phi: String, psi: String, vars: Vec<String> },
    AutoInvert { endo: String },
    AutoApply { endo: String, poly: String, vars: Vec<String> },
    AutoDecideZfix { f: String, g: String },
    CoordDecide { poly: String },
    ExamplesAnick,
    ExamplesAnickM { m: u32 },
    ExamplesSigmaH { h: String },
    MetabJm { endo: String, vars: Vec<String> },
    MetabDet { endo: String, vars: Vec<String> },
    MetabIdealTest { poly: String, vars: Vec<String> },
    MetabJ2 { endo: String },
    MetabEvidence { endo: String },
    TraceTest { endo: String, side: Side, vars: Vec<String> },
    ObstructionTau,
    NatreeDecompose { endo: String, vars: Vec<String>, fixed: Vec<String>, max_degree: usize },
    NatreeMember { g: String, gens: Vec<String>, vars: Vec<String>, max_degree: usize },
}

impl Command {
    pub fn coord_decide(poly: &str) -> Command {
        Command::CoordDecide { poly: poly.into() }
    }

    pub fn ge2_check(matrix: &str) -> Command {
        Command::Ge2Check { matrix: matrix.into(), vars: vec!["z1".into(), "z2".into()] }
    }

    pub fn xyz_vars() -> Vec<String> {
        default_xyz()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StepJson {
    E12 { q: String },
    E21 { q: String },
    Diag { alpha: String, beta: String },
}

impl StepJson {
    pub fn from_step(s: &ElemStep) -> StepJson {
        match s {
            ElemStep::E12(q) => StepJson::E12 { q: q.to_string() },
            ElemStep::E21(q) => StepJson::E21 { q: q.to_string() },
            ElemStep::Diag(a, b) => StepJson::Diag { alpha: fmt_q(a), beta: fmt_q(b) },
        }
    }

    pub fn to_step(&self, ctx: &Ctx) -> Result<ElemStep> {
        let scalar = |s: &str| match parse_q(s) {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::Invalid(format!("bad diagonal entry `{s}`"))),
        };
        Ok(match self {
            StepJson::E12 { q } => ElemStep::E12(parse_cpoly(q, ctx)?),
            StepJson::E21 { q } => ElemStep::E21(parse_cpoly(q, ctx)?),
            StepJson::Diag { alpha, beta } => ElemStep::Diag(scalar(alpha)?, scalar(beta)?),
        })
    }
}

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub a: String,
    pub b: String,
    pub reason: String,
    /// Row operations leading from the input column to `(a, b)`.
    pub steps: Vec<StepJson>,
}

impl WitnessJson {
    fn from_witness(w: &StuckWitness) -> WitnessJson {
        WitnessJson {
            a: w.a.to_string(),
            b: w.b.to_string(),
            reason: w.reason.as_str().into(),
            steps: w.steps.iter().map(StepJson::from_step).collect(),
        }
    }

    fn to_witness(&self, ctx: &Ctx) -> Result<StuckWitness> {
        let reason = match self.reason.as_str() {
            "neither-leading-form-divides" => StuckReason::NeitherLeadingFormDivides,
            "nonconstant-with-zero-partner" => StuckReason::NonconstantWithZeroPartner,
            r => return Err(Error::Invalid(format!("unknown stuck reason `{r}`"))),
        };
        Ok(StuckWitness {
            a: parse_cpoly(&self.a, ctx)?,
            b: parse_cpoly(&self.b, ctx)?,
            reason,
            steps: self.steps.iter().map(|s| s.to_step(ctx)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub steps: Vec<StepJson>,
    pub target: String,
}

impl CertificateJson {
    fn from_certificate(c: &Certificate) -> CertificateJson {
        CertificateJson { steps: c.steps.iter().map(StepJson::from_step).collect(), target: c.target.to_string() }
    }

    fn to_certificate(&self, ctx: &Ctx) -> Result<Certificate> {
        Ok(Certificate {
            steps: self.steps.iter().map(|s| s.to_step(ctx)).collect::<Result<_>>()?,
            target: parse_cmatrix(&self.target, ctx)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Command,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    /// Endomorphisms composing, left to right, to the claimed map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub timing_ms: f64,
}

impl Report {
    fn new(command: &Command, verdict: &str) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.clone(),
            verdict: verdict.into(),
            criterion: None,
            witness: None,
            steps: None,
            certificate: None,
            matrix: None,
            reason: None,
            result: None,
            timing_ms: 0.0,
        }
    }

    fn value(command: &Command, v: Value) -> Report {
        Report { result: Some(v), ..Report::new(command, "value") }
    }

    fn from_verdict(command: &Command, v: &Verdict) -> Report {
        let mut r = Report::new(command, v.name());
        match v {
            Verdict::Tame { steps, certificate } => {
                r.steps = Some(steps.iter().map(ToString::to_string).collect());
                r.certificate = Some(CertificateJson::from_certificate(certificate));
            }
            Verdict::Wild { witness, criterion, matrix } => {
                r.criterion = Some(criterion.tag().into());
                r.witness = Some(WitnessJson::from_witness(witness));
                r.matrix = matrix.as_ref().map(ToString::to_string);
            }
            Verdict::Inconclusive { reason } => r.reason = Some(reason.clone()),
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed report: {e}")))
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = vec![format!("verdict: {}", self.verdict)];
        if let Some(c) = &self.criterion {
            out.push(format!("criterion: {c}"));
        }
        if let Some(w) = &self.witness {
            out.push(format!("witness: ({}, {}) [{}]", w.a, w.b, w.reason));
        }
        if let Some(m) = &self.matrix {
            out.push(format!("matrix: {m}"));
        }
        if let Some(steps) = &self.steps {
            out.push("steps:".into());
            out.extend(steps.iter().map(|s| format!("  ({s})")));
        }
        if let Some(c) = &self.certificate {
            let parts: Vec<String> = c.steps.iter().map(step_text).collect();
            out.push(format!("certificate: [{}]", parts.join(", ")));
        }
        if let Some(r) = &self.reason {
            out.push(format!("reason: {r}"));
        }
        if let Some(v) = &self.result {
            match v {
                Value::Object(map) => {
                    for (k, v) in map {
                        out.push(format!("{k}: {}", v.as_str().map_or_else(|| v.to_string(), str::to_string)));
                    }
                }
                v => out.push(format!("result: {v}")),
            }
        }
        out.join("\n")
    }
}

fn step_text(s: &StepJson) -> String {
    match s {
        StepJson::E12 { q } => format!("E12({q})"),
        StepJson::E21 { q } => format!("E21({q})"),
        StepJson::Diag { alpha, beta } => format!("Diag({alpha}, {beta})"),
    }
}

fn alphabet(vars: &[String]) -> Result<Ctx> {
    Alphabet::new(vars)
}

fn vars_of(ctx: &Ctx, names: &[String]) -> Result<Vec<Var>> {
    names.iter().map(|n| ctx.var_or_err(n)).collect()
}

fn endo_xyz(text: &str) -> Result<NcEndo> {
    NcEndo::parse(text, &xyz())
}

fn zfix(f: &str, g: &str) -> Result<NcEndo> {
    let ctx = xyz();
    NcEndo::new(&ctx, vec![parse_nc(f, &ctx)?, parse_nc(g, &ctx)?, NcPoly::var(&ctx, Var(2))])
}

fn coord_decision(f: &NcPoly) -> Result<Verdict> {
    let vars = [Var(0), Var(1)];
    if f.degree_in(&vars).unwrap_or(0) <= 1 {
        decide_tame_coordinate_linear(f)
    } else {
        decide_wild_coordinate(f)
    }
}

/// Runs a command and times it.
pub fn run(command: &Command) -> Result<Report> {
    let start = Instant::now();
    let mut r = execute(command)?;
    r.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(r)
}

fn execute(command: &Command) -> Result<Report> {
    use Command as C;
    Ok(match command {
        C::Deriv { kind, poly, var, vars } => {
            let ctx = alphabet(vars)?;
            let f = parse_nc(poly, &ctx)?;
            let v = ctx.var_or_err(var)?;
            let value = match kind {
                DerivKind::Dl => dicks_lewin(&f, v).to_string(),
                DerivKind::Metab => metab_derivative(&f, v, &UVContext::new(&ctx)?).to_string(),
                DerivKind::FoxL => fox_left(&f, v).to_string(),
                DerivKind::FoxR => fox_right(&f, v).to_string(),
            };
            Report::value(command, json!({ "value": value }))
        }
        C::Ge2Check { matrix, vars } => {
            let m = parse_cmatrix(matrix, &alphabet(vars)?)?;
            match ge2_membership(&m)? {
                Membership::Member(cert) => {
                    Report { certificate: Some(CertificateJson::from_certificate(&cert)), ..Report::new(command, "member") }
                }
                Membership::NotMember(w) => {
                    Report { witness: Some(WitnessJson::from_witness(&w)), ..Report::new(command, "not-member") }
                }
            }
        }
        C::Ge2Complete { a, b, vars } => {
            let ctx = alphabet(vars)?;
            match complete_to_ge2(&parse_cpoly(a, &ctx)?, &parse_cpoly(b, &ctx)?)? {
                Completion::Completed { c, d, certificate } => Report {
                    certificate: Some(CertificateJson::from_certificate(&certificate)),
                    result: Some(json!({ "c": c.to_string(), "d": d.to_string() })),
                    ..Report::new(command, "completed")
                },
                Completion::NotCompletable(w) => {
                    Report { witness: Some(WitnessJson::from_witness(&w)), ..Report::new(command, "not-completable") }
                }
            }
        }
        C::AutoCompose { phi, psi, vars } => {
            let ctx = alphabet(vars)?;
            let c = NcEndo::parse(phi, &ctx)?.compose(&NcEndo::parse(psi, &ctx)?)?;
            Report::value(command, json!({ "value": c.to_string() }))
        }
        C::AutoInvert { endo } => {
            let lin = ZLinearAuto::from_endo(&endo_xyz(endo)?)?;
            let inv = invert_z_linear(&lin)?;
            Report::value(command, json!({ "value": inv.to_endo()?.to_string(), "matrix": inv.matrix.to_string() }))
        }
        C::AutoApply { endo, poly, vars } => {
            let ctx = alphabet(vars)?;
            let v = NcEndo::parse(endo, &ctx)?.apply(&parse_nc(poly, &ctx)?)?;
            Report::value(command, json!({ "value": v.to_string() }))
        }
        C::AutoDecideZfix { f, g } => Report::from_verdict(command, &decide_wild_automorphism_zfixing(&zfix(f, g)?)?),
        C::CoordDecide { poly } => Report::from_verdict(command, &coord_decision(&parse_nc(poly, &xyz())?)?),
        C::ExamplesAnick => Report::value(command, json!({ "value": anick().to_string() })),
        C::ExamplesAnickM { m } => Report::value(command, json!({ "value": anick_m(*m)?.to_string() })),
        C::ExamplesSigmaH { h } => {
            Report::value(command, json!({ "value": sigma_h(&parse_nc(h, &tz())?)?.to_string() }))
        }
        C::MetabJm { endo, vars } => {
            let m = jm(&NcEndo::parse(endo, &alphabet(vars)?)?)?;
            Report { matrix: Some(m.to_string()), ..Report::new(command, "value") }
        }
        C::MetabDet { endo, vars } => {
            let phi = NcEndo::parse(endo, &alphabet(vars)?)?;
            let det = jm(&phi)?.det()?;
            Report::value(command, json!({ "det": det.to_string(), "automorphism": is_metab_automorphism(&phi)? }))
        }
        C::MetabIdealTest { poly, vars } => {
            let f = parse_nc(poly, &alphabet(vars)?)?;
            let member = commutator_ideal_member(&f)?;
            Report {
                result: Some(json!({ "sum": ideal_test_sum(&f)?.to_string(), "constant": fmt_q(&f.constant_term()) })),
                ..Report::new(command, if member { "member" } else { "not-member" })
            }
        }
        C::MetabJ2 { endo } => {
            let m = j2_bar(&endo_xyz(endo)?)?;
            Report { matrix: Some(m.to_string()), ..Report::new(command, "value") }
        }
        C::MetabEvidence { endo } => Report::from_verdict(command, &umirbaev_wildness_evidence(&endo_xyz(endo)?)?),
        C::TraceTest { endo, side, vars } => match trace_test(&NcEndo::parse(endo, &alphabet(vars)?)?, *side)? {
            TraceOutcome::Pass { k } => Report { result: Some(json!({ "k": k })), ..Report::new(command, "pass") },
            TraceOutcome::Fail { k, residual } => Report {
                result: Some(json!({ "k": k, "residual": residual.to_string() })),
                ..Report::new(command, "fail")
            },
            TraceOutcome::NotApplicable { reason } => Report { reason: Some(reason), ..Report::new(command, "not-applicable") },
        },
        C::ObstructionTau => {
            let o = tau_lift_obstruction();
            let strs = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>();
            let verdict = match o.verdict {
                Consistency::Consistent => "consistent",
                Consistency::Inconsistent => "inconsistent",
            };
            Report {
                result: Some(json!({
                    "products": o.products,
                    "right": strs(&o.right),
                    "right_offset": fmt_q(&o.right_offset),
                    "left": strs(&o.left),
                    "left_offset": fmt_q(&o.left_offset),
                })),
                ..Report::new(command, verdict)
            }
        }
        C::NatreeDecompose { endo, vars, fixed, max_degree } => {
            let ctx = alphabet(vars)?;
            let phi = NaEndo::parse(endo, &ctx)?;
            match z_tame_decompose(&phi, &vars_of(&ctx, fixed)?, *max_degree)? {
                Decomposition::Decomposed { steps } => Report {
                    steps: Some(steps.iter().map(ToString::to_string).collect()),
                    ..Report::new(command, "decomposed")
                },
                Decomposition::NotAutomorphism(na) => Report {
                    reason: Some(na.reason.to_string()),
                    result: Some(json!({ "reached": na.reached.to_string() })),
                    ..Report::new(command, "not-automorphism")
                },
            }
        }
        C::NatreeMember { g, gens, vars, max_degree } => {
            let ctx = alphabet(vars)?;
            let g = parse_na(g, &ctx)?;
            let gens = gens.iter().map(|s| parse_na(s, &ctx)).collect::<Result<Vec<_>>>()?;
            let mut m = NaMembership::new(&ctx, &gens, *max_degree)?;
            match m.express(&g)? {
                Some(e) => Report { result: Some(json!({ "expression": e.to_string() })), ..Report::new(command, "member") },
                None => Report::new(command, "not-member"),
            }
        }
    })
}

/// A `z`-elementary map, or a diagonal scaling of `x` and `y`, which is a
/// product of two of them.
fn is_z_elementary(step: &NcEndo) -> bool {
    let ctx = step.ctx();
    let moved: Vec<Var> = ctx.vars().filter(|&v| !step.fixes(v)).collect();
    let scaled = |v: Var| {
        let img = step.image(v);
        img.len() == 1 && img.terms().all(|(w, _)| w.0 == [v])
    };
    match moved.as_slice() {
        [] => true,
        [v] if ctx.name(*v) != "z" => has_elementary_shape(step, *v),
        [a, b] => ctx.name(*a) != "z" && ctx.name(*b) != "z" && scaled(*a) && scaled(*b),
        _ => false,
    }
}

fn parse_steps(report: &Report) -> Result<Vec<NcEndo>> {
    report.steps.as_deref().unwrap_or_default().iter().map(|s| endo_xyz(s)).collect()
}

fn witness_ok(report: &Report, ctx: &Ctx, a: &CPoly, b: &CPoly) -> Result<bool> {
    let Some(w) = &report.witness else { return Ok(false) };
    let w = w.to_witness(ctx)?;
    Ok(w.reached_from(a, b) && w.recheck()?)
}

fn check_tame_steps(report: &Report, ctx: &Ctx) -> Result<Option<(NcEndo, Certificate)>> {
    let steps = parse_steps(report)?;
    if !steps.iter().all(is_z_elementary) {
        return Ok(None);
    }
    let Some(cert) = &report.certificate else { return Ok(None) };
    let cert = cert.to_certificate(&z_pair())?;
    if !cert.verify() {
        return Ok(None);
    }
    Ok(Some((compose_all(ctx, &steps)?, cert)))
}

fn first_column(m: &CMatrix) -> (CPoly, CPoly) {
    (m.get(0, 0).clone(), m.get(1, 0).clone())
}

/// Rechecks a report against its command.
pub fn verify(report: &Report) -> Result<bool> {
    if report.schema_version != SCHEMA_VERSION {
        return Ok(false);
    }
    let zp = z_pair();
    let ctx = xyz();
    match (&report.command, report.verdict.as_str()) {
        (Command::CoordDecide { poly }, "tame") => {
            let f = parse_nc(poly, &ctx)?;
            let form = f.xy_linear_decompose()?;
            let Some((composite, cert)) = check_tame_steps(report, &ctx)? else { return Ok(false) };
            Ok(*composite.image(Var(0)) == f
                && first_column(&cert.target) == (form.a, form.b)
                && jz(&composite)? == cert.target)
        }
        (Command::CoordDecide { poly }, "wild") => {
            let f = parse_nc(poly, &ctx)?;
            let linear = match report.criterion.as_deref().and_then(Criterion::from_tag) {
                Some(Criterion::LinearCoordinate) => f.clone(),
                Some(Criterion::LinearPartCoordinate) => {
                    if !f.homogeneous_component(0, &[Var(0), Var(1)]).is_zero() {
                        return Ok(false);
                    }
                    f.homogeneous_component(1, &[Var(0), Var(1)])
                }
                _ => return Ok(false),
            };
            let form = linear.xy_linear_decompose()?;
            Ok(witness_ok(report, &zp, &form.a, &form.b)?
                && report.witness.as_ref().is_some_and(|w| w.reason == StuckReason::NeitherLeadingFormDivides.as_str()))
        }
        (Command::AutoDecideZfix { f, g }, "tame") => {
            let rho = zfix(f, g)?;
            let Some((composite, cert)) = check_tame_steps(report, &ctx)? else { return Ok(false) };
            Ok(composite == rho && jz(&rho)? == cert.target)
        }
        (Command::AutoDecideZfix { f, g }, "wild") => {
            let rho = zfix(f, g)?;
            let Some(m) = &report.matrix else { return Ok(false) };
            let m = parse_cmatrix(m, &zp)?;
            let matches = match report.criterion.as_deref().and_then(Criterion::from_tag) {
                Some(Criterion::ZLinearGe2) => jz(&rho).ok() == Some(m.clone()),
                Some(Criterion::LinearPartAutomorphism) => TRANSLATION_CANDIDATES.iter().any(|&(a, b)| {
                    shifted_linear_part(&rho, (&Q::from_integer(a.into()), &Q::from_integer(b.into())))
                        .and_then(|l| jz(&l))
                        .is_ok_and(|j| j == m)
                }),
                _ => false,
            };
            let (a, b) = first_column(&m);
            Ok(matches && is_unit(&m.det()?) && witness_ok(report, &zp, &a, &b)?)
        }
        (Command::Ge2Check { matrix, vars }, "member") => {
            let vctx = alphabet(vars)?;
            let m = parse_cmatrix(matrix, &vctx)?;
            let Some(c) = &report.certificate else { return Ok(false) };
            let cert = c.to_certificate(&vctx)?;
            Ok(cert.target == m && cert.verify())
        }
        (Command::Ge2Check { matrix, vars }, "not-member") => {
            let vctx = alphabet(vars)?;
            let m = parse_cmatrix(matrix, &vctx)?;
            let (a, b) = first_column(&m);
            Ok(m.rows() == 2 && m.cols() == 2 && is_unit(&m.det()?) && witness_ok(report, &vctx, &a, &b)?)
        }
        (Command::Ge2Complete { a, b, vars }, "completed") => {
            let vctx = alphabet(vars)?;
            let (a, b) = (parse_cpoly(a, &vctx)?, parse_cpoly(b, &vctx)?);
            let Some(c) = &report.certificate else { return Ok(false) };
            let cert = c.to_certificate(&vctx)?;
            Ok(first_column(&cert.target) == (a, b) && is_unit(&cert.target.det()?) && cert.verify())
        }
        (Command::Ge2Complete { a, b, vars }, "not-completable") => {
            let vctx = alphabet(vars)?;
            witness_ok(report, &vctx, &parse_cpoly(a, &vctx)?, &parse_cpoly(b, &vctx)?)
        }
        (Command::AutoInvert { endo }, "value") => {
            let rho = endo_xyz(endo)?;
            let Some(inv) = report.result.as_ref().and_then(|r| r.get("value")).and_then(Value::as_str) else {
                return Ok(false);
            };
            Ok(rho.compose(&endo_xyz(inv)?)?.is_identity())
        }
        (Command::MetabEvidence { endo }, "wild") => {
            let j2 = j2_bar(&endo_xyz(endo)?)?;
            let Some(m) = &report.matrix else { return Ok(false) };
            let (a, b) = first_column(&j2);
            Ok(parse_cmatrix(m, &zp)? == j2
                && report.criterion.as_deref() == Some(Criterion::MetabelianJ2.tag())
                && witness_ok(report, &zp, &a, &b)?)
        }
        (Command::NatreeDecompose { endo, vars, fixed, .. }, "decomposed") => {
            let nctx = alphabet(vars)?;
            let phi = NaEndo::parse(endo, &nctx)?;
            let fixed = vars_of(&nctx, fixed)?;
            let steps = report
                .steps
                .as_deref()
                .unwrap_or_default()
                .iter()
                .map(|s| NaEndo::parse(s, &nctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(steps.iter().all(|s| is_elementary(s, &fixed)) && na_compose_all(&nctx, &steps)? == phi)
        }
        _ => {
            let fresh = execute(&report.command)?;
            Ok(Report { timing_ms: report.timing_ms, ..fresh } == *report)
        }
    }
}

/// Parses and verifies a report; malformed or uncheckable reports are
/// rejected.
pub fn verify_json(text: &str) -> bool {
    Report::from_json(text).and_then(|r| verify(&r)).unwrap_or(false)
}
