use super::forms::Geometry;
use super::patch::SurfacePatch;
use crate::error::{Error, Result};
use crate::exactalg::{RadExpr, RatFun};

/// Which Laplace–Beltrami operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LbKind {
    I,
    III,
}

/// Coefficients of one divergence-form operator
/// `Δφ = −outer · [∂_u(inner·(c1 φ_u − c2 φ_v)) − ∂_v(inner·(c2 φ_u − c3 φ_v))]`.
struct Operator {
    c: [RatFun; 3],
    inner: RadExpr,
    outer: RadExpr,
}

impl Operator {
    fn new(geo: &Geometry, kind: LbKind) -> Result<Operator> {
        let inv_lambda = geo.lambda.recip()?;
        match kind {
            // √det I = λ·W^(1/2); its sign cancels between inner and outer.
            LbKind::I => {
                let inv_s = geo.rad(inv_lambda, -1)?;
                Ok(Operator { c: [geo.g.clone(), geo.f.clone(), geo.e.clone()], inner: inv_s.clone(), outer: inv_s })
            }
            LbKind::III => {
                let delta = geo.det_ii_scaled();
                if delta.is_zero() {
                    return Err(Error::FlatSurface);
                }
                let combos = geo.third_form_combos()?;
                let c = [combos.z.to_ratfun()?, combos.y.to_ratfun()?, combos.x.to_ratfun()?];
                // det II = δ/W, so 1/(√det I · det II) = W^(1/2)/(λδ) and
                // √det I / det II = λ W^(3/2)/δ.
                let inner = geo.rad(inv_lambda.div(&delta)?.normalize(), 1)?;
                let outer = geo.rad(geo.lambda.div(&delta)?.normalize(), 3)?;
                Ok(Operator { c, inner, outer })
            }
        }
    }

    fn apply(&self, phi_u: &RatFun, phi_v: &RatFun) -> Result<RadExpr> {
        let [c1, c2, c3] = &self.c;
        let a = self.inner.scale(&c1.mul(phi_u).sub(&c2.mul(phi_v)).normalize());
        let b = self.inner.scale(&c2.mul(phi_u).sub(&c3.mul(phi_v)).normalize());
        let bracket = a.diff("u")?.sub(&b.diff("v")?)?.simplify()?;
        self.outer.mul(&bracket)?.neg().simplify()
    }
}

/// Applies the operator to every component of the position vector.
pub fn laplace_beltrami(p: &SurfacePatch, kind: LbKind) -> Result<SurfacePatch> {
    let geo = Geometry::new(p)?;
    let op = Operator::new(&geo, kind)?;
    let mut comps = Vec::with_capacity(3);
    for i in 0..3 {
        comps.push(op.apply(&geo.r_u[i], &geo.r_v[i])?);
    }
    let comps: [RadExpr; 3] = comps.try_into().expect("three");
    let rational: Result<Vec<RatFun>> = comps.iter().map(|c| c.to_ratfun().map(|r| r.normalize())).collect();
    match rational {
        Ok(rs) => Ok(SurfacePatch::from_ratfuns(rs.try_into().expect("three"))?.with_domain(p.domain().clone())),
        Err(_) => SurfacePatch::new(comps, p.domain().clone()),
    }
}

/// Applies the operator to a scalar function of `(u, v)`.
pub fn laplace_beltrami_scalar(p: &SurfacePatch, phi: &RatFun, kind: LbKind) -> Result<RadExpr> {
    let geo = Geometry::new(p)?;
    let op = Operator::new(&geo, kind)?;
    let phi = phi.with_vars(&super::patch::param_vars())?;
    op.apply(&phi.diff("u")?.normalize(), &phi.diff("v")?.normalize())
}
