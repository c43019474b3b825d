//! Differential geometry of parametric patches: fundamental forms, normal,
//! curvatures, the first and third Laplace–Beltrami operators, tangent
//! planes and tangential coordinates.
//!
//! Symbolic operations need rational patches. The unit normal is
//! `U = (x_u × x_v)/|x_u × x_v|`, and with this orientation
//! `Δ^I x = −2H·U`.

mod forms;
mod lb;
pub mod numeric;
mod patch;

pub use forms::{FundamentalForms, Geometry, NormalField, TangentPlaneData, ThirdFormCombos};
pub use lb::{laplace_beltrami, laplace_beltrami_scalar, LbKind};
pub use patch::{Domain, SurfacePatch, PARAMS};
pub(crate) use patch::param_vars;

use crate::error::Result;
use crate::exactalg::RadExpr;

pub fn first_fundamental_form(p: &SurfacePatch) -> Result<(RadExpr, RadExpr, RadExpr)> {
    let f = Geometry::new(p)?.fundamental_forms()?;
    Ok((f.e, f.f, f.g))
}

pub fn second_fundamental_form(p: &SurfacePatch) -> Result<(RadExpr, RadExpr, RadExpr)> {
    let f = Geometry::new(p)?.fundamental_forms()?;
    Ok((f.l, f.m, f.n))
}

pub fn fundamental_forms(p: &SurfacePatch) -> Result<FundamentalForms> {
    Geometry::new(p)?.fundamental_forms()
}

pub fn third_form_combos(p: &SurfacePatch) -> Result<ThirdFormCombos> {
    Geometry::new(p)?.third_form_combos()
}

pub fn normal_field(p: &SurfacePatch) -> Result<NormalField> {
    Geometry::new(p)?.normal_field()
}

pub fn gaussian_curvature(p: &SurfacePatch) -> Result<RadExpr> {
    Geometry::new(p)?.gaussian_curvature()
}

pub fn mean_curvature(p: &SurfacePatch) -> Result<RadExpr> {
    Geometry::new(p)?.mean_curvature()
}

#[allow(non_snake_case)]
pub fn laplace_beltrami_I(p: &SurfacePatch) -> Result<SurfacePatch> {
    laplace_beltrami(p, LbKind::I)
}

#[allow(non_snake_case)]
pub fn laplace_beltrami_III(p: &SurfacePatch) -> Result<SurfacePatch> {
    laplace_beltrami(p, LbKind::III)
}

pub fn tangent_plane(p: &SurfacePatch) -> Result<TangentPlaneData> {
    Geometry::new(p)?.tangent_plane()
}

/// Exact derivatives of a rational patch, evaluated in floating point.
pub fn rational_jet(p: &SurfacePatch, u: f64, v: f64) -> Result<numeric::Jet> {
    let r = p.rational_components()?;
    let mut j = numeric::Jet::default();
    for i in 0..3 {
        let ru = r[i].diff("u")?;
        let rv = r[i].diff("v")?;
        let pt = [u, v];
        j.p[i] = r[i].eval_f64(&pt);
        j.pu[i] = ru.eval_f64(&pt);
        j.pv[i] = rv.eval_f64(&pt);
        j.puu[i] = ru.diff("u")?.eval_f64(&pt);
        j.puv[i] = ru.diff("v")?.eval_f64(&pt);
        j.pvv[i] = rv.diff("v")?.eval_f64(&pt);
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exactalg::{parse_poly, parse_ratfun, MPoly, RatFun, Rational};

    fn rf(s: &str) -> RatFun {
        parse_ratfun(s, &PARAMS).unwrap()
    }

    fn poly(s: &str) -> MPoly {
        parse_poly(s, &PARAMS).unwrap()
    }

    fn patch(c: [&str; 3]) -> SurfacePatch {
        SurfacePatch::parse(c).unwrap()
    }

    fn tf() -> SurfacePatch {
        patch(["u", "v", "u + v + u*v"])
    }

    const W_TF: &str = "(u+1)^2 + (v+1)^2 + 1";

    /// Asserts `e == r · W^(k/2)` on the base of `e`.
    fn assert_rad(e: &RadExpr, r: &str, k: i32) {
        let want = RadExpr::graded(e.base().clone(), rf(r), k).unwrap();
        assert!(e.sub(&want).unwrap().is_zero(), "{e} != ({r})*W^({k}/2)");
    }

    fn assert_rat(e: &RadExpr, r: &str) {
        assert_eq!(e.to_ratfun().unwrap(), rf(r), "{e} != {r}");
    }

    #[test]
    fn first_form_examples() {
        let (e, f, g) = first_fundamental_form(&patch(["u", "v", "0"])).unwrap();
        assert_rat(&e, "1");
        assert_rat(&f, "0");
        assert_rat(&g, "1");
        let (e, f, g) = first_fundamental_form(&tf()).unwrap();
        assert_rat(&e, "1 + (1+v)^2");
        assert_rat(&f, "(1+u)*(1+v)");
        assert_rat(&g, "1 + (1+u)^2");
        let (e, f, g) = first_fundamental_form(&patch(["u", "v", "u^2"])).unwrap();
        assert_rat(&e, "1 + 4*u^2");
        assert_rat(&f, "0");
        assert_rat(&g, "1");
    }

    #[test]
    fn normal_examples() {
        let nf = normal_field(&tf()).unwrap();
        assert_eq!(nf.w, poly(W_TF));
        assert_rad(&nf.u[0], "-(1+v)", -1);
        assert_rad(&nf.u[1], "-(1+u)", -1);
        assert_rad(&nf.u[2], "1", -1);
        let nf = normal_field(&patch(["u", "v", "0"])).unwrap();
        assert_rat(&nf.u[2], "1");
        assert_rat(&nf.u[0], "0");
        let nf = normal_field(&patch(["u", "v", "u + v"])).unwrap();
        assert_eq!(nf.w, poly("3"));
        let third = RadExpr::graded(nf.u[0].base().clone(), rf("1"), -1).unwrap();
        assert!(nf.u[0].add(&third).unwrap().is_zero());
        assert_eq!(nf.u[2].to_ratfun().unwrap_err(), Error::NotRational);
        let err = normal_field(&patch(["u", "u", "0"])).unwrap_err();
        assert!(matches!(err, Error::DegeneratePatch(_)));
    }

    #[test]
    fn second_form_examples() {
        let (l, m, n) = second_fundamental_form(&tf()).unwrap();
        assert!(l.is_zero() && n.is_zero());
        assert_rad(&m, "1", -1);
        let (l, m, n) = second_fundamental_form(&patch(["u", "v", "0"])).unwrap();
        assert!(l.is_zero() && m.is_zero() && n.is_zero());
        let (l, m, n) = second_fundamental_form(&patch(["u", "v", "u^2 + v^2"])).unwrap();
        assert_eq!(l.base().w(), &poly("1 + 4*u^2 + 4*v^2"));
        assert_rad(&l, "2", -1);
        assert!(m.is_zero());
        assert_rad(&n, "2", -1);
    }

    fn unit_sphere() -> SurfacePatch {
        patch(["2*u/(1+u^2+v^2)", "2*v/(1+u^2+v^2)", "(u^2+v^2-1)/(1+u^2+v^2)"])
    }

    #[test]
    fn curvature_examples() {
        let k = gaussian_curvature(&tf()).unwrap();
        assert_rat(&k, &format!("-1/({W_TF})^2"));
        assert!(gaussian_curvature(&patch(["u", "v", "0"])).unwrap().is_zero());
        assert_rat(&gaussian_curvature(&unit_sphere()).unwrap(), "1");
        let h = mean_curvature(&tf()).unwrap();
        assert_rad(&h, "-(1+u)*(1+v)", -3);
        assert!(mean_curvature(&patch(["u", "v", "0"])).unwrap().is_zero());
        let hs = mean_curvature(&unit_sphere()).unwrap().to_ratfun().unwrap();
        assert!(hs == rf("1") || hs == rf("-1"));
    }

    #[test]
    fn lagrange_identity_and_unit_normal() {
        for c in [["u", "v", "u + v + u*v"], ["u*v", "u - v^2", "u^3 + v"], ["2*u/(1+u^2+v^2)", "2*v/(1+u^2+v^2)", "(u^2+v^2-1)/(1+u^2+v^2)"]] {
            let g = Geometry::new(&patch(c)).unwrap();
            let eg = g.e.mul(&g.g).sub(&g.f.mul(&g.f));
            assert_eq!(eg, g.det_i());
            let nf = g.normal_field().unwrap();
            let uu = nf.u.iter().fold(RadExpr::zero(nf.u[0].base().clone()), |acc, x| acc.add(&x.mul(x).unwrap()).unwrap());
            assert_rat(&uu, "1");
        }
    }

    #[test]
    fn curvature_scaling() {
        let p = patch(["u*v", "u - v^2", "u^3 + v"]);
        let lam = Rational::new(3.into(), 2.into());
        let q = p.scaled(&lam);
        let (h, k) = (mean_curvature(&p).unwrap(), gaussian_curvature(&p).unwrap());
        let (hq, kq) = (mean_curvature(&q).unwrap(), gaussian_curvature(&q).unwrap());
        let h2 = h.mul(&h).unwrap().to_ratfun().unwrap();
        let hq2 = hq.mul(&hq).unwrap().to_ratfun().unwrap();
        assert!(hq2.scale(&(&lam * &lam)) == h2);
        let (a, b) = (h.eval_f64(&[0.3, -0.2]), hq.eval_f64(&[0.3, -0.2]));
        assert!((1.5 * b - a).abs() < 1e-12 * a.abs().max(1.0));
        assert!(kq.to_ratfun().unwrap().scale(&(&lam * &lam)) == k.to_ratfun().unwrap());
    }

    #[test]
    fn lb_first_examples() {
        let z = laplace_beltrami_I(&patch(["u", "v", "3*u - 2*v + 7"])).unwrap();
        assert!(z.components().iter().all(|c| c.is_zero()));
        let d = laplace_beltrami_I(&tf()).unwrap();
        let w2 = format!("(({W_TF})^2)");
        let want = patch([
            &format!("-2*(u+1)*(v+1)^2/{w2}"),
            &format!("-2*(u+1)^2*(v+1)/{w2}"),
            &format!("2*(u+1)*(v+1)/{w2}"),
        ]);
        assert!(d.same_as(&want));
        let plane = patch(["u", "v", "0"]);
        let s = laplace_beltrami_scalar(&plane, &rf("u"), LbKind::I).unwrap();
        assert!(s.is_zero());
        let s = laplace_beltrami_scalar(&plane, &rf("u^2 + v^2"), LbKind::I).unwrap();
        assert_rat(&s, "-4");
    }

    #[test]
    fn lb_first_is_minus_two_h_u() {
        let p = patch(["u*v", "u - v^2", "u^3 + v"]);
        let g = Geometry::new(&p).unwrap();
        let h = g.mean_curvature().unwrap();
        let nf = g.normal_field().unwrap();
        let d = laplace_beltrami_I(&p).unwrap();
        for i in 0..3 {
            let di = d.components()[i].rebase(h.base().clone()).unwrap();
            let rhs = h.mul(&nf.u[i]).unwrap().scale_rational(&Rational::from_integer((-2).into()));
            assert!(di.sub(&rhs).unwrap().is_zero());
        }
    }

    #[test]
    fn lb_third_examples() {
        let d = laplace_beltrami_III(&tf()).unwrap();
        let want = patch([
            &format!("-2*(u+1)*({W_TF})"),
            &format!("-2*(v+1)*({W_TF})"),
            &format!("-6*(u+1)*(v+1)*({W_TF})"),
        ]);
        assert!(d.same_as(&want));
        assert_eq!(laplace_beltrami_III(&patch(["u", "v", "0"])).unwrap_err(), Error::FlatSurface);
        assert_eq!(laplace_beltrami_III(&patch(["u", "v", "u + v^2"])).unwrap_err(), Error::FlatSurface);
        // On the unit sphere the third form equals the first, so the image is
        // the position vector times 2, parallel to U.
        let s = unit_sphere();
        let d = laplace_beltrami_III(&s).unwrap();
        let nf = normal_field(&s).unwrap();
        let n: Vec<RatFun> = nf.n.iter().map(|c| c.to_ratfun().unwrap()).collect();
        let dc = d.rational_components().unwrap();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            assert_eq!(dc[i].mul(&n[j]), dc[j].mul(&n[i]));
        }
    }

    #[test]
    fn tangent_plane_examples() {
        let w = "(u+1)^2 + (v+1)^2 + 1";
        let printed_delta_i = patch([
            &format!("2*(u+1)*({w})"),
            &format!("2*(v+1)*({w})"),
            &format!("6*(u+1)*(v+1)*({w})"),
        ]);
        let t = tangent_plane(&printed_delta_i).unwrap();
        assert_eq!(t.a, rf(&format!("-(u*(u+2) + 3*v*(v+2) + 5)/(2*(u+1)*({w})^2)")));
        assert_eq!(t.b, rf(&format!("-(3*u*(u+2) + v*(v+2) + 5)/(2*(v+1)*({w})^2)")));
        assert_eq!(t.c, rf(&format!("(3*(u^2+v^2) + 6*(u+v) + 7)/(6*(u+1)*(v+1)*({w})^2)")));

        let t = tangent_plane(&patch(["u", "v", "1"])).unwrap();
        assert!(t.a.is_zero() && t.b.is_zero());
        assert_eq!(t.c, rf("-1"));

        let printed_delta_iii = patch([
            &format!("-2*(u+1)*(v+1)^2/({w})^2"),
            &format!("-2*(u+1)^2*(v+1)/({w})^2"),
            &format!("2*(u+1)*(v+1)/({w})^2"),
        ]);
        let t = tangent_plane(&printed_delta_iii).unwrap();
        assert_eq!(t.b, rf(&format!("(3*u^2+6*u-v^2-2*v+1)*({w})/(2*(u+1)^2*(v+1))")));
        // Xn·x + Yn·y + Zn·z + P vanishes on the patch.
        let comps = printed_delta_iii.components();
        let base = t.p.base().clone();
        let mut acc = t.p.clone();
        for (n, x) in [&t.xn, &t.yn, &t.zn].into_iter().zip(comps) {
            acc = acc.add(&n.mul(&x.rebase(base.clone()).unwrap()).unwrap()).unwrap();
        }
        assert!(acc.is_zero());

        assert_eq!(tangent_plane(&patch(["u", "v", "u + v"])).unwrap_err(), Error::ConeThroughOrigin);
    }

    #[test]
    fn jet_matches_symbolic() {
        let p = tf();
        let j = rational_jet(&p, 0.5, -0.25).unwrap();
        let g = numeric::point_geometry(&j).unwrap();
        let h = mean_curvature(&p).unwrap();
        assert!((h.eval_f64(&[0.5, -0.25]) - g.h).abs() < 1e-14);
    }
}
