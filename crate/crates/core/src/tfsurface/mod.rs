//! TF-type patches `(u, v, A(f(u) + g(v)) + B f(u) g(v))`, their curvature
//! conditions, and closed-form solution families with residual checks.
//!
//! With `α = A + B g`, `β = A + B f` and `W = α²ḟ² + β²ġ² + 1`:
//!
//! * `2H·W^(3/2) = α(1 + β²ġ²)f̈ + β(1 + α²ḟ²)g̈ − 2Bαβḟ²ġ²`
//! * `K·W² = αβf̈g̈ − B²ḟ²ġ²`

mod families;
mod function;

pub use families::{make_family, FamilyConstants, FamilyId, SolutionFamily};
pub use function::{real_pow, Analytic, Elementary, ScalarFunction};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{rat_to_f64, MPoly, Rational};
use crate::surfcalc::numeric::{point_geometry, Jet, PointGeometry};
use crate::surfcalc::{Domain, SurfacePatch};
use crate::verify::grid::{evaluate_grid, GridReport};

/// Grid points closer than this (in parameter distance) to a singularity
/// of `f` or `g` are skipped.
pub const POLE_MARGIN: f64 = 1e-3;
pub const DEFAULT_GRID: usize = 21;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct TFSpec {
    pub a: Rational,
    pub b: Rational,
    pub f: ScalarFunction,
    pub g: ScalarFunction,
}

/// A residual that is either an exact polynomial in `(u, v)` or, for
/// analytic profiles, a grid report.
#[derive(Clone, Debug)]
pub enum Residual {
    Exact(MPoly),
    Numeric(GridReport),
}

impl Residual {
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Residual::Exact(p) => p.is_zero(),
            Residual::Numeric(r) => r.below(tol),
        }
    }
}

fn uv() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

/// Per-point profile values: `[f, ḟ, f̈]`, `[g, ġ, g̈]`.
type Profiles = ([f64; 3], [f64; 3]);

impl TFSpec {
    pub fn new(a: Rational, b: Rational, f: ScalarFunction, g: ScalarFunction) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidSpec("A and B are both zero".into()));
        }
        Ok(TFSpec { a, b, f, g })
    }

    pub fn is_polynomial(&self) -> bool {
        self.f.is_polynomial() && self.g.is_polynomial()
    }

    fn polys(&self) -> Result<[MPoly; 6]> {
        let vars = uv();
        let f = self.f.poly_in("u", &vars).ok_or(Error::AnalyticPatch)?;
        let g = self.g.poly_in("v", &vars).ok_or(Error::AnalyticPatch)?;
        let fd = f.diff("u")?;
        let fdd = fd.diff("u")?;
        let gd = g.diff("v")?;
        let gdd = gd.diff("v")?;
        Ok([f, fd, fdd, g, gd, gdd])
    }

    /// `α = A + B g(v)` and `β = A + B f(u)`.
    pub fn alpha_beta(&self) -> Result<(MPoly, MPoly)> {
        let [f, _, _, g, _, _] = self.polys()?;
        let a = MPoly::constant(uv(), self.a.clone());
        Ok((&a + &g.scale(&self.b), &a + &f.scale(&self.b)))
    }

    /// The height function `A(f + g) + B f g`.
    pub fn height(&self) -> Result<MPoly> {
        let [f, _, _, g, _, _] = self.polys()?;
        Ok(&(&f + &g).scale(&self.a) + &(&f * &g).scale(&self.b))
    }

    /// `W = α²ḟ² + β²ġ² + 1`.
    pub fn w_poly(&self) -> Result<MPoly> {
        let [_, fd, _, _, gd, _] = self.polys()?;
        let (al, be) = self.alpha_beta()?;
        let x = &al * &fd;
        let y = &be * &gd;
        Ok(&(&(&x * &x) + &(&y * &y)) + &MPoly::one(uv()))
    }

    /// Numerator of `2H·W^(3/2)`.
    pub fn minimality_numerator(&self) -> Result<MPoly> {
        self.minimality_with(true)
    }

    /// The same numerator with the last term written `−2Bαḟ²ġ²`, i.e.
    /// without the factor β.
    pub fn printed_minimality_numerator(&self) -> Result<MPoly> {
        self.minimality_with(false)
    }

    fn minimality_with(&self, with_beta: bool) -> Result<MPoly> {
        let [_, fd, fdd, _, gd, gdd] = self.polys()?;
        let (al, be) = self.alpha_beta()?;
        let one = MPoly::one(uv());
        let t1 = &(&al * &(&one + &(&(&be * &be) * &(&gd * &gd)))) * &fdd;
        let t2 = &(&be * &(&one + &(&(&al * &al) * &(&fd * &fd)))) * &gdd;
        let last = &(&(&fd * &fd) * &(&gd * &gd)) * &al;
        let last = if with_beta { &last * &be } else { last };
        Ok(&(&t1 + &t2) - &last.scale(&(Rational::from_integer(2.into()) * &self.b)))
    }

    /// Numerator of `K·W²`: `αβf̈g̈ − B²ḟ²ġ²`.
    pub fn gauss_numerator(&self) -> Result<MPoly> {
        let [_, fd, fdd, _, gd, gdd] = self.polys()?;
        let (al, be) = self.alpha_beta()?;
        let b2 = &self.b * &self.b;
        Ok(&(&(&al * &be) * &(&fdd * &gdd)) - &(&(&fd * &fd) * &(&gd * &gd)).scale(&b2))
    }

    fn profiles(&self, u: f64, v: f64) -> Option<Profiles> {
        if self.f.singular_distance(u) < POLE_MARGIN || self.g.singular_distance(v) < POLE_MARGIN {
            return None;
        }
        Some((self.f.jet(u)?, self.g.jet(v)?))
    }

    fn ab(&self) -> (f64, f64) {
        (rat_to_f64(&self.a), rat_to_f64(&self.b))
    }

    /// Position and derivatives of the patch at `(u, v)`; `None` near a
    /// singularity of `f` or `g`.
    pub fn jet(&self, u: f64, v: f64) -> Option<Jet> {
        let ([f, fd, fdd], [g, gd, gdd]) = self.profiles(u, v)?;
        let (a, b) = self.ab();
        let (al, be) = (a + b * g, a + b * f);
        Some(Jet {
            p: [u, v, a * (f + g) + b * f * g],
            pu: [1.0, 0.0, fd * al],
            pv: [0.0, 1.0, gd * be],
            puu: [0.0, 0.0, fdd * al],
            puv: [0.0, 0.0, b * fd * gd],
            pvv: [0.0, 0.0, gdd * be],
        })
    }

    pub fn point_geometry(&self, u: f64, v: f64) -> Option<PointGeometry> {
        point_geometry(&self.jet(u, v)?)
    }

    fn grid<F>(&self, f: F) -> GridReport
    where
        F: Fn(f64, f64) -> Option<f64> + Sync,
    {
        evaluate_grid(&Domain::default(), DEFAULT_GRID, DEFAULT_GRID, f)
    }

    /// `2H·W^(3/2)` with β (or without, for the printed form) divided by
    /// `2W^(3/2)`, i.e. the mean curvature the formula predicts.
    pub fn numeric_minimality(&self, with_beta: bool) -> GridReport {
        let (a, b) = self.ab();
        self.grid(|u, v| {
            let ([f, fd, fdd], [g, gd, gdd]) = self.profiles(u, v)?;
            let (al, be) = (a + b * g, a + b * f);
            let w = al * al * fd * fd + be * be * gd * gd + 1.0;
            let last = 2.0 * b * al * fd * fd * gd * gd * if with_beta { be } else { 1.0 };
            let num = al * (1.0 + be * be * gd * gd) * fdd + be * (1.0 + al * al * fd * fd) * gdd - last;
            Some(num / (2.0 * w.powf(1.5)))
        })
    }

    /// Mean curvature from the point geometry of the patch.
    pub fn numeric_mean_curvature(&self) -> GridReport {
        self.grid(|u, v| Some(self.point_geometry(u, v)?.h))
    }
}

/// The patch `(u, v, A(f + g) + B f g)`; requires polynomial profiles.
pub fn make_tf_patch(spec: &TFSpec) -> Result<SurfacePatch> {
    let h = spec.height()?;
    let vars = uv();
    SurfacePatch::from_polys([MPoly::var(vars.clone(), "u")?, MPoly::var(vars, "v")?, h])
}

/// Numerator of `2H·W^(3/2)` for polynomial specs; for analytic specs a
/// grid report of the predicted mean curvature.
pub fn minimality_residual(spec: &TFSpec) -> Residual {
    match spec.minimality_numerator() {
        Ok(p) => Residual::Exact(p),
        Err(_) => Residual::Numeric(spec.numeric_minimality(true)),
    }
}

/// Same as [`minimality_residual`] with the β-less last term.
pub fn printed_minimality_residual(spec: &TFSpec) -> Residual {
    match spec.printed_minimality_numerator() {
        Ok(p) => Residual::Exact(p),
        Err(_) => Residual::Numeric(spec.numeric_minimality(false)),
    }
}

/// Residuals `(A + Bf)f̈ − Cḟ²` and `B²ġ² − C(A + Bg)g̈` of the
/// separated constant-curvature condition.
pub fn gauss_condition_residual(spec: &TFSpec, c: &Rational) -> (Residual, Residual) {
    if let Ok([f, fd, fdd, g, gd, gdd]) = spec.polys() {
        let a = MPoly::constant(uv(), spec.a.clone());
        let rf = &(&(&a + &f.scale(&spec.b)) * &fdd) - &(&fd * &fd).scale(c);
        let rg = &(&gd * &gd).scale(&(&spec.b * &spec.b)) - &(&(&a + &g.scale(&spec.b)) * &gdd).scale(c);
        return (Residual::Exact(rf), Residual::Exact(rg));
    }
    let (a, b) = spec.ab();
    let cf = rat_to_f64(c);
    let rf = spec.grid(|u, v| {
        let ([f, fd, fdd], _) = spec.profiles(u, v)?;
        Some((a + b * f) * fdd - cf * fd * fd)
    });
    let rg = spec.grid(|u, v| {
        let (_, [g, gd, gdd]) = spec.profiles(u, v)?;
        Some(b * b * gd * gd - cf * (a + b * g) * gdd)
    });
    (Residual::Numeric(rf), Residual::Numeric(rg))
}

/// Value of `B²ḟ² + C·W²` (when `g = v`) or `B²ġ² + C·W²` (when `f = u`)
/// at one point, with `W` as in the linear-coordinate theorem.
pub fn constant_k_constraint_at(spec: &TFSpec, c: f64, u: f64, v: f64) -> Result<Option<f64>> {
    let (a, b) = spec.ab();
    let Some(([f, fd, _], [g, gd, _])) = spec.profiles(u, v) else {
        return Ok(None);
    };
    if spec.g.is_identity() {
        let w = (a + b * v).powi(2) * fd * fd + (a + b * f).powi(2) + 1.0;
        Ok(Some(b * b * fd * fd + c * w * w))
    } else if spec.f.is_identity() {
        let w = (a + b * u).powi(2) * gd * gd + (a + b * g).powi(2) + 1.0;
        Ok(Some(b * b * gd * gd + c * w * w))
    } else {
        Err(Error::InvalidSpec("the constraint needs f(u) = u or g(v) = v".into()))
    }
}

/// Grid report of [`constant_k_constraint_at`].
pub fn constant_k_constraint_residual(spec: &TFSpec, c: &Rational) -> Result<GridReport> {
    let cf = rat_to_f64(c);
    constant_k_constraint_at(spec, cf, 0.0, 0.0)?;
    Ok(spec.grid(|u, v| constant_k_constraint_at(spec, cf, u, v).ok().flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, RadExpr, RatFun};
    use crate::surfcalc::{gaussian_curvature, mean_curvature, second_fundamental_form};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["u", "v"]).unwrap()
    }

    fn poly(s: &str) -> ScalarFunction {
        ScalarFunction::Polynomial(parse_poly(s, &["t"]).unwrap())
    }

    fn uv_spec(a: i64, b: i64) -> TFSpec {
        TFSpec::new(r(a), r(b), ScalarFunction::identity(), ScalarFunction::identity()).unwrap()
    }

    #[test]
    fn patch_modes() {
        let s = make_tf_patch(&uv_spec(1, 1)).unwrap();
        assert!(s.same_as(&SurfacePatch::parse(["u", "v", "u + v + u*v"]).unwrap()));
        let t = make_tf_patch(&TFSpec::new(r(1), r(0), poly("t^2"), poly("t^3")).unwrap()).unwrap();
        assert!(t.same_as(&SurfacePatch::parse(["u", "v", "u^2 + v^3"]).unwrap()));
        let f = make_tf_patch(&TFSpec::new(r(0), r(1), poly("t^2"), poly("t^3")).unwrap()).unwrap();
        assert!(f.same_as(&SurfacePatch::parse(["u", "v", "u^2*v^3"]).unwrap()));
        assert!(TFSpec::new(r(0), r(0), poly("t"), poly("t")).is_err());
    }

    #[test]
    fn minimality_examples() {
        match minimality_residual(&uv_spec(1, 1)) {
            Residual::Exact(q) => assert_eq!(q, p("-2*(1+u)*(1+v)")),
            _ => panic!("expected exact residual"),
        }
        let plane = TFSpec::new(r(1), r(1), poly("0"), poly("0")).unwrap();
        assert!(minimality_residual(&plane).is_zero_within(0.0));
    }

    #[test]
    fn curvature_closed_forms_match_geometry() {
        let spec = TFSpec::new(r(2), r(-3), poly("t^2 - t"), poly("t^3/2 + 1")).unwrap();
        let patch = make_tf_patch(&spec).unwrap();
        let w = spec.w_poly().unwrap();
        let h = mean_curvature(&patch).unwrap();
        assert_eq!(h.base().w(), &w);
        let two_w32 = RadExpr::graded(h.base().clone(), RatFun::constant(uv(), r(2)), 3).unwrap();
        let num = h.mul(&two_w32).unwrap().to_ratfun().unwrap().as_poly().unwrap();
        assert_eq!(num, spec.minimality_numerator().unwrap());
        let k = gaussian_curvature(&patch).unwrap().to_ratfun().unwrap();
        let kw = k.mul_poly(&(&w * &w)).as_poly().unwrap();
        assert_eq!(kw, spec.gauss_numerator().unwrap());
    }

    #[test]
    fn translation_mode_has_no_mixed_term() {
        let spec = TFSpec::new(r(3), r(0), poly("t^3"), poly("t^2 + t")).unwrap();
        let (_, m, _) = second_fundamental_form(&make_tf_patch(&spec).unwrap()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn gauss_condition_examples() {
        let spec = TFSpec::new(r(1), r(2), poly("3*t + 1"), poly("5")).unwrap();
        let (a, b) = gauss_condition_residual(&spec, &r(0));
        assert!(a.is_zero_within(0.0) && b.is_zero_within(0.0));
        let (a, _) = gauss_condition_residual(&uv_spec(1, 1), &r(2));
        match a {
            Residual::Exact(q) => assert_eq!(q, p("-2")),
            _ => panic!(),
        }
    }

    #[test]
    fn constraint_examples() {
        let flat = TFSpec::new(r(1), r(1), poly("4"), ScalarFunction::identity()).unwrap();
        assert!(constant_k_constraint_residual(&flat, &r(0)).unwrap().below(1e-12));
        let pos = constant_k_constraint_residual(&uv_spec(1, 2), &r(1)).unwrap();
        let min_val = evaluate_grid(&Domain::default(), 21, 21, |u, v| constant_k_constraint_at(&uv_spec(1, 2), 1.0, u, v).unwrap());
        assert!(pos.max_abs > 0.0 && min_val.evaluated == 441);
        for (u, v) in Domain::default().grid_f64(21, 21) {
            assert!(constant_k_constraint_at(&uv_spec(1, 2), 1.0, u, v).unwrap().unwrap() > 0.0);
        }
        // With f = u, g = v the constraint vanishes exactly when C equals
        // the pointwise Gaussian curvature −B²/W².
        let spec = uv_spec(1, 3);
        for (u, v) in Domain::default().grid_f64(7, 7) {
            let k = spec.point_geometry(u, v).unwrap().k;
            let val = constant_k_constraint_at(&spec, k, u, v).unwrap().unwrap();
            assert!(val.abs() < 1e-12, "{val}");
        }
        let neither = TFSpec::new(r(1), r(1), poly("t^2"), poly("t^2")).unwrap();
        assert!(constant_k_constraint_residual(&neither, &r(1)).is_err());
    }

    #[test]
    fn numeric_path_agrees_with_exact() {
        let spec = TFSpec::new(r(1), r(2), poly("t^2 + t"), poly("t^3 - t")).unwrap();
        let h = mean_curvature(&make_tf_patch(&spec).unwrap()).unwrap();
        for (u, v) in Domain::default().grid_f64(5, 5) {
            let g = spec.point_geometry(u, v).unwrap();
            assert!((g.h - h.eval_f64(&[u, v])).abs() < 1e-12);
        }
    }
}
