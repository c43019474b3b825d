//! Implicit equations of rational parametric surfaces.
//!
//! Two independent engines: Groebner elimination (modular with lifting, or
//! over the integers on request) and dense interpolation of the annihilating polynomial with modular linear
//! algebra. Both return the canonical form of the minimal-degree eliminant
//! and only after an exact substitution check.

mod elim;
mod groebner;
mod interp;
mod modp;
mod subst;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use groebner::{groebner_basis, groebner_basis_mod};
pub use interp::{monomial_count, monomials, sample_params};
pub use subst::{substitution_witness, Witness};

use crate::error::{Error, Result};
use crate::exactalg::{parse_ratfun, poly_lcm, MPoly, RatFun, Rational};
use crate::surfcalc::{param_vars, tangent_plane, SurfacePatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Groebner,
    #[serde(alias = "interp")]
    Interpolation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Groebner => "groebner",
            Method::Interpolation => "interpolation",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "groebner" => Ok(Method::Groebner),
            "interp" | "interpolation" => Ok(Method::Interpolation),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationConfig {
    pub method: Method,
    /// Largest total degree tried by interpolation.
    pub dmax: u32,
    /// Rows per candidate monomial in the evaluation matrix.
    pub sample_factor: usize,
    /// Cap on primes used for one reconstruction.
    pub max_primes: usize,
    pub budget_seconds: f64,
    /// Run Buchberger over the integers instead of modulo primes.
    #[serde(default)]
    pub exact_groebner: bool,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        EliminationConfig { method: Method::Groebner, dmax: 20, sample_factor: 2, max_primes: 64, budget_seconds: 60.0, exact_groebner: false }
    }
}

impl EliminationConfig {
    pub fn interpolation() -> Self {
        EliminationConfig { method: Method::Interpolation, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dmax < 1 {
            return Err(Error::Config("dmax must be at least 1".into()));
        }
        if self.sample_factor < 2 {
            return Err(Error::Config("sample_factor must be at least 2".into()));
        }
        if self.max_primes < 2 {
            return Err(Error::Config("max_primes must be at least 2".into()));
        }
        if !(self.budget_seconds > 0.0) {
            return Err(Error::Config("time budget must be positive".into()));
        }
        Ok(())
    }
}

/// A rational map (u, v) ↦ (x, y, z).
///
/// Alongside the normalized components it keeps the integer form
/// `x = nums[0] / den` etc. over one common denominator.
#[derive(Clone, Debug)]
pub struct ParametricMap3 {
    comps: [RatFun; 3],
    nums: [MPoly; 3],
    den: MPoly,
}

impl ParametricMap3 {
    pub fn new(comps: [RatFun; 3]) -> Result<Self> {
        let vars = param_vars();
        let mut norm = Vec::with_capacity(3);
        for c in &comps {
            norm.push(c.with_vars(&vars)?.normalize());
        }
        let comps: [RatFun; 3] = norm.try_into().expect("three components");
        if comps.iter().all(|c| c.num().is_constant()) {
            return Err(Error::DegeneratePatch("all components are constant".into()));
        }
        let mut den = comps.iter().fold(MPoly::one(vars.clone()), |acc, c| poly_lcm(&acc, c.den()));
        let mut nums: Vec<MPoly> = comps
            .iter()
            .map(|c| &c.num().clone() * &den.div_exact(c.den()).expect("lcm is a multiple"))
            .collect();
        let l = nums.iter().chain(std::iter::once(&den)).flat_map(|p| p.terms()).fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let l = Rational::from_integer(l);
        nums = nums.iter().map(|p| p.scale(&l)).collect();
        den = den.scale(&l);
        Ok(ParametricMap3 { comps, nums: nums.try_into().expect("three numerators"), den })
    }

    pub fn parse(comps: [&str; 3]) -> Result<Self> {
        let mut rs = Vec::with_capacity(3);
        for c in comps {
            rs.push(parse_ratfun(c, &["u", "v"])?);
        }
        ParametricMap3::new(rs.try_into().expect("three components"))
    }

    pub fn from_patch(p: &SurfacePatch) -> Result<Self> {
        ParametricMap3::new(p.rational_components()?)
    }

    pub fn components(&self) -> &[RatFun; 3] {
        &self.comps
    }

    pub fn common_denominator(&self) -> &MPoly {
        &self.den
    }

    /// Exact image point, `None` on a denominator zero.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Option<[Rational; 3]> {
        let vals = [u.clone(), v.clone()];
        let d = self.den.eval_slice(&vals);
        if d == Rational::from_integer(0.into()) {
            return None;
        }
        Some([0, 1, 2].map(|k| self.nums[k].eval_slice(&vals) / &d))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitSurface {
    pub q: MPoly,
    pub total_degree: u32,
    pub method: Method,
    pub notes: Vec<String>,
}

impl ImplicitSurface {
    /// Terms of the top-degree homogeneous part, in canonical order.
    pub fn leading_form(&self) -> MPoly {
        self.q.homogeneous_part(self.total_degree)
    }

    /// Number of terms below the top degree.
    pub fn lower_term_count(&self) -> usize {
        self.q.num_terms() - self.leading_form().num_terms()
    }
}

/// Primitive integer content, positive graded-lex leading coefficient.
pub fn canonical_implicit(q: &MPoly) -> MPoly {
    q.canonical()
}

pub fn degree_of(s: &ImplicitSurface) -> u32 {
    s.total_degree
}

fn names(vars: [&str; 3]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

fn finish(m: &ParametricMap3, q: MPoly, method: Method, notes: Vec<String>) -> Result<ImplicitSurface> {
    let q = canonical_implicit(&q);
    if substitution_witness(m, &q)?.is_some() {
        return Err(Error::SamplingDegenerate);
    }
    let total_degree = q.total_degree().unwrap_or(0);
    Ok(ImplicitSurface { q, total_degree, method, notes })
}

/// Elimination through a Groebner basis of
/// ⟨x·den_x − num_x, y·den_y − num_y, z·den_z − num_z, 1 − t·D⟩ where D is
/// the product of the distinct denominators (the last generator is left
/// out when D is constant). The generators are made weighted homogeneous
/// with an extra variable that is set to 1 afterwards. The result is
/// accepted only if it vanishes on the map and no annihilator of lower
/// degree exists.
pub fn implicitize_groebner(m: &ParametricMap3, vars: [&str; 3], cfg: &EliminationConfig) -> Result<ImplicitSurface> {
    cfg.validate()?;
    let names = names(vars);
    let sys = elim::system(m, &names);
    let lifted = if cfg.exact_groebner {
        elim::eliminate_integer(&sys, &names, cfg.budget_seconds)?
    } else {
        elim::eliminate_modular(m, &sys, &names, cfg.max_primes, cfg.budget_seconds)?
    };
    let d = lifted.q.total_degree().unwrap_or(0);
    if !is_degree_minimal(m, d, cfg.sample_factor) {
        return Err(Error::SamplingDegenerate);
    }
    let mut notes = vec![format!("basis size {}", lifted.basis_size), format!("saturated: {}", sys.saturated)];
    if cfg.exact_groebner {
        notes.push("integer coefficients".into());
    } else {
        notes.push(format!("primes used {}", lifted.primes_used));
    }
    finish(m, lifted.q, Method::Groebner, notes)
}

/// Interpolation of the annihilating polynomial, raising the degree until
/// the evaluation matrix has a kernel.
pub fn implicitize_interpolation(m: &ParametricMap3, vars: [&str; 3], cfg: &EliminationConfig) -> Result<ImplicitSurface> {
    cfg.validate()?;
    let start = Instant::now();
    let mut samples = interp::Samples::new();
    let names = names(vars);
    for d in 1..=cfg.dmax {
        if let Some(found) =
            interp::kernel_at_degree(m, &names, d, cfg.sample_factor, cfg.max_primes, &mut samples, start, cfg.budget_seconds)?
        {
            let notes = vec![
                format!("kernel dimension {}", found.nullity),
                format!("primes used {}", found.primes_used),
                format!("samples {}", cfg.sample_factor * monomial_count(d)),
            ];
            return finish(m, found.q, Method::Interpolation, notes);
        }
    }
    Err(Error::NotFound(cfg.dmax))
}

pub fn implicitize(m: &ParametricMap3, vars: [&str; 3], cfg: &EliminationConfig) -> Result<ImplicitSurface> {
    cfg.validate()?;
    match cfg.method {
        Method::Groebner => implicitize_groebner(m, vars, cfg),
        Method::Interpolation => implicitize_interpolation(m, vars, cfg),
    }
}

/// True when no nonzero polynomial of total degree below `d` vanishes on
/// the sample points. Decided modulo one prime, which can only overstate
/// the kernel, so `true` is a proof for the sampled points.
pub fn is_degree_minimal(m: &ParametricMap3, d: u32, sample_factor: usize) -> bool {
    if d <= 1 {
        return true;
    }
    let mut samples = interp::Samples::new();
    interp::nullity_mod_p(m, d - 1, sample_factor, &mut samples) == 0
}

/// The tangential map (a, b, c) of a patch, with the plane written as
/// a·x + b·y + c·z = 1.
pub fn tangential_map(p: &SurfacePatch) -> Result<ParametricMap3> {
    let t = tangent_plane(p)?;
    ParametricMap3::new([t.a, t.b, t.c])
}

/// Class of a surface: the degree of the implicit equation satisfied by its
/// tangential coordinates, in variables (a, b, c).
pub fn class_of(p: &SurfacePatch, cfg: &EliminationConfig) -> Result<(u32, ImplicitSurface)> {
    let m = tangential_map(p)?;
    let s = implicitize(&m, ["a", "b", "c"], cfg)?;
    Ok((s.total_degree, s))
}
