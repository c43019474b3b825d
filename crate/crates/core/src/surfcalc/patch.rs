use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{parse_ratfun, rat_to_f64, MPoly, RadBase, RadExpr, RatFun, Rational};

/// Parameter names shared by every patch.
pub const PARAMS: [&str; 2] = ["u", "v"];

pub(crate) fn param_vars() -> Vec<String> {
    PARAMS.iter().map(|s| s.to_string()).collect()
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Closed parameter rectangle used for sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub u: (Rational, Rational),
    pub v: (Rational, Rational),
}

impl Default for Domain {
    fn default() -> Self {
        Domain { u: (ri(-1), ri(1)), v: (ri(-1), ri(1)) }
    }
}

impl Domain {
    pub fn new(u: (Rational, Rational), v: (Rational, Rational)) -> Result<Self> {
        if u.0 >= u.1 || v.0 >= v.1 {
            return Err(Error::InvalidSpec("empty parameter rectangle".into()));
        }
        Ok(Domain { u, v })
    }

    /// The `i`-th point of a fixed interior sequence.
    pub fn sample(&self, i: usize) -> (Rational, Rational) {
        let i = i as i64;
        let su = Rational::new(((7 * i + 3) % 29).into(), 29.into()) + Rational::new(1.into(), 61.into());
        let sv = Rational::new(((11 * i + 5) % 31).into(), 31.into()) + Rational::new(1.into(), 67.into());
        (
            &self.u.0 + (&self.u.1 - &self.u.0) * su,
            &self.v.0 + (&self.v.1 - &self.v.0) * sv,
        )
    }

    /// Regular `nu × nv` grid including the corners, as floats.
    pub fn grid_f64(&self, nu: usize, nv: usize) -> Vec<(f64, f64)> {
        let (u0, u1) = (rat_to_f64(&self.u.0), rat_to_f64(&self.u.1));
        let (v0, v1) = (rat_to_f64(&self.v.0), rat_to_f64(&self.v.1));
        let step = |a: f64, b: f64, n: usize, k: usize| if n <= 1 { a } else { a + (b - a) * k as f64 / (n - 1) as f64 };
        let mut out = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            for j in 0..nv {
                out.push((step(u0, u1, nu, i), step(v0, v1, nv, j)));
            }
        }
        out
    }
}

/// A parametric surface `(x, y, z)(u, v)`. Components share one radical
/// base; purely rational patches use the base `W = 1`.
#[derive(Clone, Debug)]
pub struct SurfacePatch {
    comps: [RadExpr; 3],
    domain: Domain,
}

impl SurfacePatch {
    pub fn new(comps: [RadExpr; 3], domain: Domain) -> Result<Self> {
        let b = comps[0].base().clone();
        let comps = [comps[0].clone(), comps[1].rebase(b.clone())?, comps[2].rebase(b)?];
        Ok(SurfacePatch { comps, domain })
    }

    pub fn from_ratfuns(comps: [RatFun; 3]) -> Result<Self> {
        let vars = param_vars();
        let base = RadBase::unit(vars.clone());
        let mut out = Vec::with_capacity(3);
        for c in comps {
            let c = c.with_vars(&vars).map_err(|_| Error::InvalidSpec("components may only use u and v".into()))?;
            out.push(RadExpr::from_ratfun(base.clone(), c));
        }
        let comps: [RadExpr; 3] = out.try_into().expect("three components");
        Ok(SurfacePatch { comps, domain: Domain::default() })
    }

    pub fn from_polys(comps: [MPoly; 3]) -> Result<Self> {
        SurfacePatch::from_ratfuns(comps.map(RatFun::from_poly))
    }

    /// Reads three component expressions in `u`, `v`.
    pub fn parse(comps: [&str; 3]) -> Result<Self> {
        let mut rs = Vec::with_capacity(3);
        for c in comps {
            rs.push(parse_ratfun(c, &PARAMS)?);
        }
        SurfacePatch::from_ratfuns(rs.try_into().expect("three components"))
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn components(&self) -> &[RadExpr; 3] {
        &self.comps
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn base(&self) -> &Arc<RadBase> {
        self.comps[0].base()
    }

    /// Components as rational functions; fails when a square root of the
    /// base survives simplification.
    pub fn rational_components(&self) -> Result<[RatFun; 3]> {
        let vars = param_vars();
        let mut out = Vec::with_capacity(3);
        for c in &self.comps {
            out.push(c.to_ratfun()?.with_vars(&vars)?.normalize());
        }
        Ok(out.try_into().expect("three components"))
    }

    pub fn is_rational(&self) -> bool {
        self.rational_components().is_ok()
    }

    pub fn eval_f64(&self, u: f64, v: f64) -> [f64; 3] {
        let vals = self.point_for_base(u, v);
        [0, 1, 2].map(|i| self.comps[i].eval_f64(&vals))
    }

    fn point_for_base(&self, u: f64, v: f64) -> Vec<f64> {
        self.base().w().vars().iter().map(|n| if n == "u" { u } else if n == "v" { v } else { 0.0 }).collect()
    }

    /// Exact value at a rational point (rational patches only).
    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<[Rational; 3]> {
        let rc = self.rational_components()?;
        let pt = [u.clone(), v.clone()];
        let mut out = Vec::with_capacity(3);
        for c in &rc {
            out.push(c.eval(&pt)?);
        }
        Ok(out.try_into().expect("three components"))
    }

    /// Componentwise exact difference is zero.
    pub fn same_as(&self, other: &SurfacePatch) -> bool {
        match (self.rational_components(), other.rational_components()) {
            (Ok(a), Ok(b)) => (0..3).all(|i| a[i] == b[i]),
            _ => (0..3).all(|i| {
                other.comps[i]
                    .rebase(self.base().clone())
                    .and_then(|o| self.comps[i].sub(&o))
                    .map(|d| d.is_zero())
                    .unwrap_or(false)
            }),
        }
    }

    /// Scales every component by a nonzero rational.
    pub fn scaled(&self, c: &Rational) -> SurfacePatch {
        assert!(!c.is_zero());
        SurfacePatch { comps: [0, 1, 2].map(|i| self.comps[i].scale_rational(c)), domain: self.domain.clone() }
    }
}
