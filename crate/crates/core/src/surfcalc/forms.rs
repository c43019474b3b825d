use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::patch::{param_vars, SurfacePatch};
use crate::error::{Error, Result};
use crate::exactalg::{poly_gcd, poly_lcm, MPoly, RadBase, RadExpr, RatFun, Rational};

type Vec3 = [RatFun; 3];

fn dot(a: &Vec3, b: &Vec3) -> RatFun {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2])).normalize()
}

fn dot_poly(a: &Vec3, m: &[MPoly; 3]) -> RatFun {
    a[0].mul_poly(&m[0]).add(&a[1].mul_poly(&m[1])).add(&a[2].mul_poly(&m[2])).normalize()
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])).normalize(),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])).normalize(),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])).normalize(),
    ]
}

fn diff3(a: &Vec3, var: &str) -> Result<Vec3> {
    Ok([a[0].diff(var)?.normalize(), a[1].diff(var)?.normalize(), a[2].diff(var)?.normalize()])
}

/// Exact differential data of a rational patch.
///
/// The normal `x_u × x_v` is stored as `λ·M` with `M` a polynomial vector
/// without common polynomial factor and `λ` a rational function, so that `|x_u × x_v| = |λ|·√W` with
/// `W = ⟨M, M⟩`. The sign of `M` is chosen so that `λ > 0` at the first
/// usable domain sample; for Monge patches `(u, v, h)` this gives
/// `M = (−h_u, −h_v, 1)` and `λ = 1`.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub r: Vec3,
    pub r_u: Vec3,
    pub r_v: Vec3,
    pub r_uu: Vec3,
    pub r_uv: Vec3,
    pub r_vv: Vec3,
    pub e: RatFun,
    pub f: RatFun,
    pub g: RatFun,
    pub normal: [MPoly; 3],
    pub lambda: RatFun,
    pub w: MPoly,
    pub base: Arc<RadBase>,
    /// `⟨x_uu, M⟩`, `⟨x_uv, M⟩`, `⟨x_vv, M⟩`; the second fundamental form
    /// is these times `W^(−1/2)`.
    pub l_tilde: RatFun,
    pub m_tilde: RatFun,
    pub n_tilde: RatFun,
}

impl Geometry {
    pub fn new(p: &SurfacePatch) -> Result<Geometry> {
        let r = p.rational_components()?;
        let r_u = diff3(&r, "u")?;
        let r_v = diff3(&r, "v")?;
        let r_uu = diff3(&r_u, "u")?;
        let r_uv = diff3(&r_u, "v")?;
        let r_vv = diff3(&r_v, "v")?;
        let e = dot(&r_u, &r_u);
        let f = dot(&r_u, &r_v);
        let g = dot(&r_v, &r_v);
        let n = cross(&r_u, &r_v);
        if n.iter().all(|c| c.is_zero()) {
            return Err(Error::DegeneratePatch("x_u × x_v vanishes identically".into()));
        }
        let vars = param_vars();
        let den = n.iter().fold(MPoly::one(vars.clone()), |acc, c| poly_lcm(&acc, c.den()));
        let scaled: Vec<MPoly> = n
            .iter()
            .map(|c| c.num() * &den.div_exact(c.den()).expect("lcm is a multiple"))
            .collect();
        let common = scaled.iter().fold(MPoly::zero(vars.clone()), |acc, c| poly_gcd(&acc, c));
        let mut m: Vec<MPoly> = scaled.iter().map(|c| c.div_exact(&common).expect("gcd divides")).collect();
        let mut lambda = RatFun::new(common, den)?.normalize();

        let sign = orientation_sign(p, &lambda)?;
        if sign < 0 {
            m = m.iter().map(|c| -c).collect();
            lambda = lambda.neg();
        }
        let normal: [MPoly; 3] = m.try_into().expect("three components");
        let w = normal.iter().fold(MPoly::zero(vars.clone()), |acc, c| &acc + &(c * c));
        let base = RadBase::new(w.clone());
        let l_tilde = dot_poly(&r_uu, &normal);
        let m_tilde = dot_poly(&r_uv, &normal);
        let n_tilde = dot_poly(&r_vv, &normal);
        Ok(Geometry { r, r_u, r_v, r_uu, r_uv, r_vv, e, f, g, normal, lambda, w, base, l_tilde, m_tilde, n_tilde })
    }

    pub(crate) fn rad(&self, r: RatFun, k: i32) -> Result<RadExpr> {
        RadExpr::graded(self.base.clone(), r, k)
    }

    pub(crate) fn rat(&self, r: RatFun) -> RadExpr {
        RadExpr::from_ratfun(self.base.clone(), r)
    }

    /// `λ² W = E G − F²`.
    pub fn det_i(&self) -> RatFun {
        self.lambda.mul(&self.lambda).mul_poly(&self.w).normalize()
    }

    /// `W · det II = l̃ ñ − m̃²`.
    pub fn det_ii_scaled(&self) -> RatFun {
        self.l_tilde.mul(&self.n_tilde).sub(&self.m_tilde.mul(&self.m_tilde)).normalize()
    }

    pub fn fundamental_forms(&self) -> Result<FundamentalForms> {
        let wr = RatFun::from_poly(self.w.clone());
        Ok(FundamentalForms {
            e: self.rat(self.e.clone()),
            f: self.rat(self.f.clone()),
            g: self.rat(self.g.clone()),
            l: self.rad(self.l_tilde.clone(), -1)?.simplify()?,
            m: self.rad(self.m_tilde.clone(), -1)?.simplify()?,
            n: self.rad(self.n_tilde.clone(), -1)?.simplify()?,
            det_i: self.rat(self.det_i()),
            det_ii: self.rat(self.det_ii_scaled().div(&wr)?.normalize()),
            w: self.w.clone(),
        })
    }

    /// `X, Y, Z` of the third form, each a rational function.
    pub fn third_form_combos(&self) -> Result<ThirdFormCombos> {
        let (e, f, g) = (&self.e, &self.f, &self.g);
        let (l, m, n) = (&self.l_tilde, &self.m_tilde, &self.n_tilde);
        let wr = RatFun::from_poly(self.w.clone());
        let two = Rational::from_integer(2.into());
        let x = e.mul(&m.mul(m)).sub(&f.mul(&l.mul(m)).scale(&two)).add(&g.mul(&l.mul(l)));
        let y = e.mul(&m.mul(n)).sub(&f.mul(&l.mul(n))).add(&g.mul(&l.mul(m))).sub(&f.mul(&m.mul(m)));
        let z = g.mul(&m.mul(m)).sub(&f.mul(&n.mul(m)).scale(&two)).add(&e.mul(&n.mul(n)));
        Ok(ThirdFormCombos {
            x: self.rat(x.div(&wr)?.normalize()),
            y: self.rat(y.div(&wr)?.normalize()),
            z: self.rat(z.div(&wr)?.normalize()),
        })
    }

    pub fn normal_field(&self) -> Result<NormalField> {
        let mut n = Vec::with_capacity(3);
        let mut u = Vec::with_capacity(3);
        for c in &self.normal {
            n.push(self.rat(self.lambda.mul_poly(c).normalize()));
            u.push(self.rad(RatFun::from_poly(c.clone()), -1)?.simplify()?);
        }
        Ok(NormalField {
            n: n.try_into().expect("three"),
            w: self.w.clone(),
            u: u.try_into().expect("three"),
        })
    }

    pub fn gaussian_curvature(&self) -> Result<RadExpr> {
        let wr = RatFun::from_poly(self.w.clone());
        let k = self.det_ii_scaled().div(&self.det_i().mul(&wr))?.normalize();
        self.rat(k).simplify()
    }

    pub fn mean_curvature(&self) -> Result<RadExpr> {
        let two = Rational::from_integer(2.into());
        let num = self
            .e
            .mul(&self.n_tilde)
            .add(&self.g.mul(&self.l_tilde))
            .sub(&self.f.mul(&self.m_tilde).scale(&two));
        let den = self.lambda.mul(&self.lambda).scale(&two);
        self.rad(num.div(&den)?.normalize(), -3)?.simplify()
    }

    pub fn tangent_plane(&self) -> Result<TangentPlaneData> {
        let s = dot_poly(&self.r, &self.normal);
        if s.is_zero() {
            return Err(Error::ConeThroughOrigin);
        }
        let minus_s = s.neg();
        let mut unit = Vec::with_capacity(3);
        let mut coords = Vec::with_capacity(3);
        for c in &self.normal {
            unit.push(self.rad(RatFun::from_poly(c.clone()), -1)?.simplify()?);
            coords.push(RatFun::from_poly(c.clone()).div(&minus_s)?.normalize());
        }
        let [a, b, c]: [RatFun; 3] = coords.try_into().expect("three");
        let [xn, yn, zn]: [RadExpr; 3] = unit.try_into().expect("three");
        Ok(TangentPlaneData { xn, yn, zn, p: self.rad(minus_s, -1)?.simplify()?, a, b, c })
    }
}

fn orientation_sign(p: &SurfacePatch, lambda: &RatFun) -> Result<i32> {
    for i in 0..64 {
        let (u, v) = p.domain().sample(i);
        if let Ok(x) = lambda.eval(&[u, v]) {
            if !x.is_zero() {
                return Ok(if x.is_positive() { 1 } else { -1 });
            }
        }
    }
    Err(Error::DegeneratePatch("normal vanishes or is undefined at every domain sample".into()))
}

/// Coefficients of the first and second fundamental forms.
#[derive(Clone, Debug)]
pub struct FundamentalForms {
    pub e: RadExpr,
    pub f: RadExpr,
    pub g: RadExpr,
    pub l: RadExpr,
    pub m: RadExpr,
    pub n: RadExpr,
    pub det_i: RadExpr,
    pub det_ii: RadExpr,
    pub w: MPoly,
}

/// The combinations `X = E m² − 2F l m + G l²`,
/// `Y = E m n − F l n + G l m − F m²`, `Z = G m² − 2F n m + E n²`.
#[derive(Clone, Debug)]
pub struct ThirdFormCombos {
    pub x: RadExpr,
    pub y: RadExpr,
    pub z: RadExpr,
}

/// `n = x_u × x_v`, `W` and the unit normal `U`.
#[derive(Clone, Debug)]
pub struct NormalField {
    pub n: [RadExpr; 3],
    pub w: MPoly,
    pub u: [RadExpr; 3],
}

/// Tangent plane `Xn·x + Yn·y + Zn·z + P = 0` and the tangential coordinates
/// `a = Xn/P`, `b = Yn/P`, `c = Zn/P`.
#[derive(Clone, Debug)]
pub struct TangentPlaneData {
    pub xn: RadExpr,
    pub yn: RadExpr,
    pub zn: RadExpr,
    pub p: RadExpr,
    pub a: RatFun,
    pub b: RatFun,
    pub c: RatFun,
}
