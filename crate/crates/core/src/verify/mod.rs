//! Independent checks of computed and printed results.
//!
//! Every check returns a [`VerificationReport`]; none of them panics or
//! propagates an error, a failure to even run the check is reported as
//! `fail` with the error in the notes.

pub mod grid;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{rat_to_f64, MPoly, RadBase, RadExpr, RatFun, Rational};
use crate::implicitize::{substitution_witness, ParametricMap3};
use crate::surfcalc::numeric::Jet;
use crate::surfcalc::{laplace_beltrami_I, Domain, Geometry, SurfacePatch};
pub use grid::{evaluate_grid, GridReport};

/// Absolute tolerance for residuals of exact identities evaluated in floats.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Relative tolerance floor for finite-difference checks.
pub const FD_REL_TOL: f64 = 1e-6;
/// Constant in the `C·h²` truncation allowance of finite-difference checks.
pub const FD_C: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
    Skipped,
}

impl Status {
    pub fn passed(self) -> bool {
        matches!(self, Status::ExactPass | Status::NumericPass)
    }
}

/// Parameter point and value where a check failed. Exact values are kept
/// as rational strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportWitness {
    pub u: String,
    pub v: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub witness: Option<ReportWitness>,
    pub tolerances: BTreeMap<String, f64>,
    pub grid: Option<GridReport>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str, status: Status) -> Self {
        VerificationReport {
            check: check.to_string(),
            status,
            witness: None,
            tolerances: BTreeMap::new(),
            grid: None,
            notes: Vec::new(),
        }
    }

    fn errored(check: &str, e: &crate::Error) -> Self {
        let mut r = VerificationReport::new(check, Status::Fail);
        r.notes.push(format!("check could not run: {e}"));
        r
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Exact test of Q∘m ≡ 0.
pub fn substitution_check(m: &ParametricMap3, q: &MPoly) -> VerificationReport {
    const NAME: &str = "substitution";
    match substitution_witness(m, q) {
        Ok(None) => VerificationReport::new(NAME, Status::ExactPass),
        Ok(Some(w)) => {
            let mut r = VerificationReport::new(NAME, Status::Fail);
            r.witness = Some(ReportWitness { u: w.u.to_string(), v: w.v.to_string(), value: w.value.to_string() });
            r
        }
        Err(e) => VerificationReport::errored(NAME, &e),
    }
}

fn first_nonzero(domain: &Domain, f: impl Fn(f64, f64) -> f64) -> Option<ReportWitness> {
    (0..256).find_map(|i| {
        let (u, v) = domain.sample(i);
        let x = f(rat_to_f64(&u), rat_to_f64(&v));
        (x.is_finite() && x != 0.0).then(|| ReportWitness { u: u.to_string(), v: v.to_string(), value: format!("{x:e}") })
    })
}

fn base_point(base: &Arc<RadBase>, u: f64, v: f64) -> Vec<f64> {
    base.w().vars().iter().map(|n| if n == "u" { u } else if n == "v" { v } else { 0.0 }).collect()
}

fn cross_rad(a: &[RadExpr], b: &[RadExpr]) -> Result<Vec<RadExpr>> {
    let mut out = Vec::with_capacity(3);
    for (i, j) in [(1, 2), (2, 0), (0, 1)] {
        out.push(a[i].mul(&b[j])?.sub(&a[j].mul(&b[i])?)?.simplify()?);
    }
    Ok(out)
}

/// Δ^I x is normal and ⟨Δ^I x, U⟩ = −2H, both as exact identities.
pub fn lb_identity_check(p: &SurfacePatch) -> VerificationReport {
    const NAME: &str = "lb_identity";
    lb_identity(p).unwrap_or_else(|e| VerificationReport::errored(NAME, &e))
}

fn lb_identity(p: &SurfacePatch) -> Result<VerificationReport> {
    const NAME: &str = "lb_identity";
    let geo = Geometry::new(p)?;
    let lb = laplace_beltrami_I(p)?;
    let d: Vec<RadExpr> = lb.components().iter().map(|c| c.rebase(geo.base.clone())).collect::<Result<_>>()?;
    let m: Vec<RadExpr> = geo.normal.iter().map(|c| RadExpr::from_poly(geo.base.clone(), c.clone())).collect();
    let cross = cross_rad(&d, &m)?;
    let nf = geo.normal_field()?;
    let h = geo.mean_curvature()?;
    let mut s = h.add(&h)?;
    for i in 0..3 {
        s = s.add(&d[i].mul(&nf.u[i])?)?;
    }
    let s = s.simplify()?;
    let base = geo.base.clone();
    if let Some(k) = cross.iter().position(|c| !c.is_zero()) {
        let mut r = VerificationReport::new(NAME, Status::Fail).with_note(format!("component {k} of Δ^I x × N is not zero"));
        r.witness = first_nonzero(p.domain(), |u, v| cross[k].eval_f64(&base_point(&base, u, v)));
        return Ok(r);
    }
    if !s.is_zero() {
        let mut r = VerificationReport::new(NAME, Status::Fail).with_note("⟨Δ^I x, U⟩ + 2H is not zero");
        r.witness = first_nonzero(p.domain(), |u, v| s.eval_f64(&base_point(&base, u, v)));
        return Ok(r);
    }
    Ok(VerificationReport::new(NAME, Status::ExactPass).with_note("Δ^I x × N ≡ 0 and ⟨Δ^I x, U⟩ + 2H ≡ 0"))
}

/// Componentwise exact comparison of two rational patches. When they
/// differ, reports whether they are pointwise parallel and with which
/// factor, or else a point where they are not parallel.
pub fn printed_result_comparison(computed: &SurfacePatch, printed: &SurfacePatch) -> VerificationReport {
    const NAME: &str = "printed_result_comparison";
    comparison(computed, printed).unwrap_or_else(|e| VerificationReport::errored(NAME, &e))
}

fn rcross(a: &[RatFun; 3], b: &[RatFun; 3]) -> [RatFun; 3] {
    [(1, 2), (2, 0), (0, 1)].map(|(i, j)| a[i].mul(&b[j]).sub(&a[j].mul(&b[i])).normalize())
}

fn comparison(computed: &SurfacePatch, printed: &SurfacePatch) -> Result<VerificationReport> {
    const NAME: &str = "printed_result_comparison";
    let a = computed.rational_components()?;
    let b = printed.rational_components()?;
    let diffs: Vec<RatFun> = (0..3).map(|i| a[i].sub(&b[i]).normalize()).collect();
    if diffs.iter().all(|d| d.is_zero()) {
        return Ok(VerificationReport::new(NAME, Status::ExactPass));
    }
    let mut r = VerificationReport::new(NAME, Status::Fail);
    for (i, _) in diffs.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
        r.notes.push(format!("component {i} differs"));
    }
    let cross = rcross(&a, &b);
    if cross.iter().all(|c| c.is_zero()) {
        if let Some(i) = (0..3).find(|&i| !b[i].is_zero()) {
            let f = a[i].div(&b[i])?.normalize();
            match f.as_poly().filter(|p| p.is_constant()) {
                Some(c) => r.notes.push(format!("parallel with constant factor {}", c.coeff(&[0, 0]))),
                None => r.notes.push(format!("parallel with factor ({})/({})", f.num(), f.den())),
            }
        }
        let pts = computed.domain().clone();
        r.witness = first_nonzero(&pts, |u, v| diffs.iter().map(|d| d.eval_f64(&[u, v]).abs()).fold(0.0, f64::max));
    } else {
        r.notes.push("not parallel".into());
        let k = cross.iter().position(|c| !c.is_zero()).expect("nonzero cross component");
        r.witness = exact_witness(computed.domain(), &cross[k]);
        r.notes.push(format!("witness value is component {k} of computed × printed"));
    }
    Ok(r)
}

fn exact_witness(domain: &Domain, f: &RatFun) -> Option<ReportWitness> {
    (0..256).find_map(|i| {
        let (u, v) = domain.sample(i);
        match f.eval(&[u.clone(), v.clone()]) {
            Ok(x) if x != Rational::from_integer(0.into()) => {
                Some(ReportWitness { u: u.to_string(), v: v.to_string(), value: x.to_string() })
            }
            _ => None,
        }
    })
}

/// Max |f| over an `nu × nv` grid; `None` from `f` skips a point.
pub fn numeric_grid_residual<F>(check: &str, f: F, domain: &Domain, nu: usize, nv: usize, tol: f64) -> VerificationReport
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let g = evaluate_grid(domain, nu, nv, f);
    let status = if g.evaluated == 0 {
        Status::Skipped
    } else if g.max_abs < tol {
        Status::NumericPass
    } else {
        Status::Fail
    };
    let mut r = VerificationReport::new(check, status);
    r.tolerances.insert("abs".into(), tol);
    if status == Status::Fail {
        r.witness = g.argmax.map(|(u, v)| ReportWitness { u: format!("{u}"), v: format!("{v}"), value: format!("{:e}", g.max_abs) });
    }
    r.notes.push(format!("max residual {:e}, {} points skipped", g.max_abs, g.skipped));
    r.grid = Some(g);
    r
}

fn rel_err(supplied: &[f64; 3], approx: &[f64; 3]) -> f64 {
    (0..3).map(|i| (supplied[i] - approx[i]).abs() / supplied[i].abs().max(1.0)).fold(0.0, f64::max)
}

fn lin(a: &[f64; 3], b: &[f64; 3], s: f64) -> [f64; 3] {
    [0, 1, 2].map(|i| (a[i] - b[i]) * s)
}

/// Compares supplied first and second partial derivatives with central
/// differences of step `h`. First derivatives are differenced from
/// positions, second derivatives from the supplied first derivatives.
/// Passes at relative tolerance max(1e−6, 100·h²).
pub fn finite_difference_check<F>(check: &str, jet: F, domain: &Domain, nu: usize, nv: usize, h: f64) -> VerificationReport
where
    F: Fn(f64, f64) -> Option<Jet> + Sync,
{
    let tol = FD_REL_TOL.max(FD_C * h * h);
    let s = 0.5 / h;
    let g = evaluate_grid(domain, nu, nv, |u, v| {
        let j = jet(u, v)?;
        let (up, um, vp, vm) = (jet(u + h, v)?, jet(u - h, v)?, jet(u, v + h)?, jet(u, v - h)?);
        let errs = [
            rel_err(&j.pu, &lin(&up.p, &um.p, s)),
            rel_err(&j.pv, &lin(&vp.p, &vm.p, s)),
            rel_err(&j.puu, &lin(&up.pu, &um.pu, s)),
            rel_err(&j.puv, &lin(&vp.pu, &vm.pu, s)),
            rel_err(&j.pvv, &lin(&vp.pv, &vm.pv, s)),
        ];
        Some(errs.into_iter().fold(0.0, f64::max))
    });
    let status = if g.evaluated == 0 {
        Status::Skipped
    } else if g.max_abs < tol {
        Status::NumericPass
    } else {
        Status::Fail
    };
    let mut r = VerificationReport::new(check, status);
    r.tolerances.insert("rel".into(), tol);
    r.tolerances.insert("h".into(), h);
    if status == Status::Fail {
        r.witness = g.argmax.map(|(u, v)| ReportWitness { u: format!("{u}"), v: format!("{v}"), value: format!("{:e}", g.max_abs) });
    }
    r.notes.push(format!("max relative error {:e}", g.max_abs));
    r.grid = Some(g);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;
    use crate::surfcalc::{gaussian_curvature, mean_curvature, rational_jet};

    fn q(s: &str) -> MPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn substitution_reports() {
        let m = ParametricMap3::parse(["u", "v", "u*v"]).unwrap();
        assert_eq!(substitution_check(&m, &q("x*y - z")).status, Status::ExactPass);
        assert_eq!(substitution_check(&m, &q("-7/3*x*y + 7/3*z")).status, Status::ExactPass);
        let r = substitution_check(&m, &q("x + y + z"));
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.is_some());
        assert_eq!(substitution_check(&m, &q("x + y + z")), r);
    }

    #[test]
    fn lb_identity_examples() {
        for p in [["u", "v", "0"], ["u", "v", "u^2 + v^2"], ["u", "v", "u + v + u*v"], ["u + v", "u - v", "u*v^2"]] {
            let r = lb_identity_check(&SurfacePatch::parse(p).unwrap());
            assert_eq!(r.status, Status::ExactPass, "{p:?}");
        }
    }

    #[test]
    fn comparison_outcomes() {
        let p = SurfacePatch::parse(["u", "v", "u*v"]).unwrap();
        assert_eq!(printed_result_comparison(&p, &p).status, Status::ExactPass);
        let r = printed_result_comparison(&p, &p.scaled(&Rational::from_integer((-2).into())));
        assert_eq!(r.status, Status::Fail);
        assert!(r.notes.iter().any(|n| n == "parallel with constant factor -1/2"), "{:?}", r.notes);
        let other = SurfacePatch::parse(["v", "u", "u*v"]).unwrap();
        let r = printed_result_comparison(&p, &other);
        assert!(r.notes.iter().any(|n| n == "not parallel"));
        assert!(r.witness.is_some());
    }

    #[test]
    fn grid_residuals() {
        let p = SurfacePatch::parse(["u", "v", "u + v + u*v"]).unwrap();
        let k = gaussian_curvature(&p).unwrap();
        let geo = Geometry::new(&p).unwrap();
        let w = geo.w.clone();
        let pt = |u: f64, v: f64| base_point(&geo.base, u, v);
        let r = numeric_grid_residual(
            "k_plus_inverse_w2",
            |u, v| Some(k.eval_f64(&pt(u, v)) + 1.0 / w.eval_f64(&[u, v]).powi(2)),
            p.domain(),
            11,
            11,
            DEFAULT_TOL,
        );
        assert_eq!(r.status, Status::NumericPass);
        let h = mean_curvature(&p).unwrap();
        let r = numeric_grid_residual("h", |u, v| Some(h.eval_f64(&pt(u, v))), p.domain(), 11, 11, DEFAULT_TOL);
        assert_eq!(r.status, Status::Fail);
        let r = numeric_grid_residual("none", |_, _| None, p.domain(), 3, 3, DEFAULT_TOL);
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn finite_differences() {
        let p = SurfacePatch::parse(["u", "v", "u^3 - 2*u*v^2 + v"]).unwrap();
        let r = finite_difference_check("poly", |u, v| rational_jet(&p, u, v).ok(), p.domain(), 7, 7, 1e-4);
        assert_eq!(r.status, Status::NumericPass, "{:?}", r.notes);
        let bad = |u: f64, v: f64| {
            let mut j = rational_jet(&p, u, v).ok()?;
            j.puu[2] += 0.1;
            Some(j)
        };
        assert_eq!(finite_difference_check("bad", bad, p.domain(), 7, 7, 1e-4).status, Status::Fail);
    }
}
