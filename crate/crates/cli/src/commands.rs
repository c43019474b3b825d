use std::fmt;
use std::time::Instant;

use anyhow::Context;
use lbsurf::builtins::{self, Builtin};
use lbsurf::exactalg::{parse_poly, RadExpr};
use lbsurf::implicitize::{class_of, implicitize, EliminationConfig, ParametricMap3};
use lbsurf::surfcalc::{fundamental_forms, gaussian_curvature, laplace_beltrami, mean_curvature, Geometry, LbKind, SurfacePatch};
use lbsurf::tfsurface::{make_family, FamilyConstants, FamilyId, TFSpec};
use lbsurf::verify::{
    finite_difference_check, lb_identity_check, numeric_grid_residual, printed_result_comparison, substitution_check,
    Status, VerificationReport, DEFAULT_TOL,
};
use serde_json::{json, Value};

use crate::config::{bad, FileConfig, Surface};

/// A failed verification; maps to exit code 2.
#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Output of one command: the JSON report, a short text summary, and
/// whether a verification inside it failed.
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub failed: Option<String>,
}

impl Outcome {
    fn ok(report: Value, summary: String) -> Self {
        Outcome { report, summary, failed: None }
    }
}

fn log_time(what: &str, t: Instant) {
    eprintln!("[time] {what}: {:.3} s", t.elapsed().as_secs_f64());
}

fn budget_hint(e: lbsurf::Error) -> anyhow::Error {
    match e {
        lbsurf::Error::BudgetExceeded(_) => {
            anyhow::Error::new(e).context("elimination ran out of time; try --method interp or a larger --budget-seconds")
        }
        e => e.into(),
    }
}

fn rational_map(s: &Surface) -> anyhow::Result<ParametricMap3> {
    let p = s.patch()?;
    Ok(ParametricMap3::from_patch(&p)?)
}

pub fn analyze(s: &Surface) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let out = match s.patch() {
        Ok(p) => analyze_exact(s, &p)?,
        Err(_) => {
            let Surface::Tf { spec, .. } = s else { unreachable!("only TF specs can be analytic") };
            analyze_numeric(s.name(), spec)
        }
    };
    log_time("analyze", t);
    Ok(out)
}

fn text(e: &RadExpr) -> String {
    e.to_string()
}

fn analyze_exact(s: &Surface, p: &SurfacePatch) -> anyhow::Result<Outcome> {
    let ff = fundamental_forms(p)?;
    let geo = Geometry::new(p)?;
    let h = mean_curvature(p)?;
    let k = gaussian_curvature(p)?;
    let mut report = json!({
        "surface": s.name(),
        "mode": "exact",
        "E": text(&ff.e), "F": text(&ff.f), "G": text(&ff.g),
        "l": text(&ff.l), "m": text(&ff.m), "n": text(&ff.n),
        "W": ff.w.to_string(),
        "H": text(&h),
        "K": text(&k),
        "normal": geo.normal.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Surface::Tf { spec, .. } = s {
        report["tf"] = json!({
            "A": spec.a.to_string(),
            "B": spec.b.to_string(),
            "f": spec.f.to_string(),
            "g": spec.g.to_string(),
            "minimality_numerator": spec.minimality_numerator()?.to_string(),
            "gauss_numerator": spec.gauss_numerator()?.to_string(),
        });
    }
    let summary = format!("{}: W = {}\n  H = {}\n  K = {}", s.name(), ff.w, h, k);
    Ok(Outcome::ok(report, summary))
}

fn analyze_numeric(name: &str, spec: &TFSpec) -> Outcome {
    let h = spec.numeric_mean_curvature();
    let kmax = lbsurf::verify::evaluate_grid(&lbsurf::surfcalc::Domain::default(), h.nu, h.nv, |u, v| {
        spec.point_geometry(u, v).map(|g| g.k)
    });
    let report = json!({
        "surface": name,
        "mode": "numeric",
        "A": spec.a.to_string(),
        "B": spec.b.to_string(),
        "f": spec.f.to_string(),
        "g": spec.g.to_string(),
        "max_abs_H": h.max_abs,
        "max_abs_K": kmax.max_abs,
        "grid": h,
    });
    let summary = format!("{name}: max |H| = {:e}, max |K| = {:e} over {} points", h.max_abs, kmax.max_abs, h.evaluated);
    Outcome::ok(report, summary)
}

pub fn parse_which(s: &str) -> anyhow::Result<LbKind> {
    match s {
        "I" | "i" | "1" => Ok(LbKind::I),
        "III" | "iii" | "3" => Ok(LbKind::III),
        other => Err(bad(format!("unknown operator `{other}`; expected I or III"))),
    }
}

pub fn lb(s: &Surface, which: LbKind) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let p = s.patch()?;
    let image = laplace_beltrami(&p, which)?;
    log_time("lb", t);
    let comps: Vec<String> = match image.rational_components() {
        Ok(r) => r.iter().map(|c| c.to_string()).collect(),
        Err(_) => image.components().iter().map(|c| c.to_string()).collect(),
    };
    let label = match which {
        LbKind::I => "I",
        LbKind::III => "III",
    };
    let mut report = json!({ "surface": s.name(), "operator": label, "components": comps });
    let mut summary = format!("Δ^{label} {}:\n  x = {}\n  y = {}\n  z = {}", s.name(), comps[0], comps[1], comps[2]);
    if s.builtin() == Some(Builtin::PaperS) {
        let mut comparisons = Vec::new();
        for b in [Builtin::PaperDeltaI, Builtin::PaperDeltaIII] {
            let r = printed_result_comparison(&image, &b.patch());
            summary.push_str(&format!("\n  against {b}: {:?} {}", r.status, r.notes.join("; ")));
            comparisons.push(json!({ "against": b.name(), "report": r }));
        }
        report["comparisons"] = Value::Array(comparisons);
    }
    Ok(Outcome::ok(report, summary))
}

pub fn implicit(s: &Surface, cfg: &EliminationConfig) -> anyhow::Result<Outcome> {
    let m = rational_map(s)?;
    let t = Instant::now();
    let res = implicitize(&m, ["x", "y", "z"], cfg).map_err(budget_hint)?;
    log_time("implicitize", t);
    let check = substitution_check(&m, &res.q);
    let mut report = json!({
        "surface": s.name(),
        "q": res.q.to_string(),
        "degree": res.total_degree,
        "method": res.method.to_string(),
        "notes": res.notes,
        "substitution": check,
    });
    let mut summary = format!("{}: Q = {}\n  degree {} ({})", s.name(), res.q, res.total_degree, res.method);
    if let Some(published) = s.builtin().and_then(Builtin::implicit) {
        let same = published.canonical() == res.q;
        report["published_match"] = json!(same);
        summary.push_str(&format!("\n  matches published equation: {same}"));
    }
    let failed = (!check.passed()).then(|| "substitution check of the result".to_string());
    Ok(Outcome { report, summary, failed })
}

pub fn class(s: &Surface, cfg: &EliminationConfig) -> anyhow::Result<Outcome> {
    let p = s.patch()?;
    let t = Instant::now();
    let (class, qhat) = class_of(&p, cfg).map_err(budget_hint)?;
    log_time("class", t);
    let leading = qhat.leading_form();
    let mut report = json!({
        "surface": s.name(),
        "class": class,
        "leading_terms": leading.to_string(),
        "lower_terms": qhat.lower_term_count(),
        "terms": qhat.q.num_terms(),
        "method": qhat.method.to_string(),
        "q_hat": qhat.q.to_string(),
    });
    let mut summary = format!("{}: class {}, {} lower-degree terms", s.name(), class, qhat.lower_term_count());
    let published = match s.builtin() {
        Some(Builtin::PaperDeltaI) => {
            Some((builtins::CLASS_DELTA_I, &builtins::LEADING_DELTA_I[..], builtins::LOWER_TERMS_DELTA_I))
        }
        Some(Builtin::PaperDeltaIII) => {
            Some((builtins::CLASS_DELTA_III, &builtins::LEADING_DELTA_III[..], builtins::LOWER_TERMS_DELTA_III))
        }
        _ => None,
    };
    if let Some((pc, terms, lower)) = published {
        let ratio = builtins::proportional_on(&leading, terms);
        report["published"] = json!({
            "class": pc,
            "lower_terms": lower,
            "class_matches": pc == class,
            "leading_ratio": ratio.as_ref().map(|r| r.to_string()),
        });
        summary.push_str(&format!(
            "\n  published class {pc} ({}), leading terms proportional: {}",
            if pc == class { "match" } else { "mismatch" },
            ratio.is_some()
        ));
    }
    Ok(Outcome::ok(report, summary))
}

struct Check {
    report: VerificationReport,
    subject: String,
    informative: bool,
}

fn tan_family() -> anyhow::Result<TFSpec> {
    let k = FamilyConstants { c1: "1/2".parse()?, ..FamilyConstants::default() };
    Ok(make_family(FamilyId::MinimalTanGv, k)?.spec)
}

/// The full suite over the built-ins, plus a substitution check of the
/// configured `implicit` equation when one is given.
pub fn verify(cfg: &FileConfig, surface: Option<&Surface>) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let mut checks = Vec::new();
    let mut push = |report: VerificationReport, subject: &str, informative: bool| {
        checks.push(Check { report, subject: subject.to_string(), informative });
    };
    for b in [Builtin::PaperDeltaI, Builtin::PaperDeltaIII] {
        push(substitution_check(&b.map(), &b.implicit().expect("published equation")), b.name(), false);
    }
    for b in [Builtin::PaperS, Builtin::Plane, Builtin::Paraboloid, Builtin::Saddle] {
        push(lb_identity_check(&b.patch()), b.name(), false);
    }
    let s = Builtin::PaperS.patch();
    let d1 = laplace_beltrami(&s, LbKind::I)?;
    let d3 = laplace_beltrami(&s, LbKind::III)?;
    push(printed_result_comparison(&d1, &Builtin::PaperDeltaI.patch()), "computed Δ^I S vs paper-deltaI", true);
    push(printed_result_comparison(&d1, &Builtin::PaperDeltaIII.patch()), "computed Δ^I S vs paper-deltaIII", true);
    push(printed_result_comparison(&d3, &Builtin::PaperDeltaIII.patch()), "computed Δ^III S vs paper-deltaIII", true);
    push(printed_result_comparison(&d3, &Builtin::PaperDeltaI.patch()), "computed Δ^III S vs paper-deltaI", true);

    let geo = Geometry::new(&s)?;
    let k = gaussian_curvature(&s)?;
    let w = geo.w.clone();
    let base = geo.base.clone();
    let pt = move |u: f64, v: f64| -> Vec<f64> {
        base.w().vars().iter().map(|n| if n == "u" { u } else if n == "v" { v } else { 0.0 }).collect()
    };
    let kw = numeric_grid_residual(
        "numeric_grid_residual",
        |u, v| Some(k.eval_f64(&pt(u, v)) + 1.0 / w.eval_f64(&[u, v]).powi(2)),
        s.domain(),
        21,
        21,
        DEFAULT_TOL,
    );
    push(kw.with_note("K = -1/W^2 is not constant on paper-S"), "K + 1/W^2 on paper-S", false);
    let tan = tan_family()?;
    let hr = numeric_grid_residual("numeric_grid_residual", |u, v| tan.point_geometry(u, v).map(|g| g.h), &Default::default(), 21, 21, DEFAULT_TOL);
    push(hr, "H of minimal_tan_gv", false);
    push(
        finite_difference_check("finite_difference", |u, v| tan.jet(u, v), &Default::default(), 21, 21, 1e-4),
        "derivatives of minimal_tan_gv",
        false,
    );

    if let Some(q) = &cfg.implicit {
        let surface = surface.ok_or_else(|| bad("`implicit` needs a surface"))?;
        let q = parse_poly(q, &["x", "y", "z"]).map_err(|e| bad(format!("implicit: {e}")))?;
        let m = rational_map(surface).context("the surface must be rational")?;
        push(substitution_check(&m, &q), surface.name(), false);
    }
    log_time("verify", t);

    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for c in &checks {
        let tag = match (c.report.status, c.informative) {
            (_, true) => "info",
            (Status::ExactPass | Status::NumericPass, false) => "pass",
            (Status::Skipped, false) => "skip",
            (Status::Fail, false) => "FAIL",
        };
        lines.push(format!("[{tag}] {} ({}): {:?}", c.report.check, c.subject, c.report.status));
        if !c.informative && !c.report.passed() {
            failures.push(format!("{} ({})", c.report.check, c.subject));
        }
    }
    let report = json!({
        "checks": checks.iter().map(|c| json!({
            "subject": c.subject,
            "informative": c.informative,
            "report": c.report,
        })).collect::<Vec<_>>(),
        "passed": failures.is_empty(),
    });
    let failed = (!failures.is_empty()).then(|| failures.join(", "));
    Ok(Outcome { report, summary: lines.join("\n"), failed })
}

/// The published third-operator image must satisfy its published equation.
pub fn self_test() -> anyhow::Result<()> {
    let b = Builtin::PaperDeltaIII;
    let r = substitution_check(&b.map(), &b.implicit().expect("published equation"));
    if r.passed() {
        Ok(())
    } else {
        Err(VerificationFailed(format!("startup self-test: {b} does not satisfy its implicit equation")).into())
    }
}
