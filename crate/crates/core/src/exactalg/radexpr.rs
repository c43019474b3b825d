use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::mpoly::rational_sqrt;
use super::{MPoly, RatFun, Rational};
use crate::error::{Error, Result};

/// Largest allowed |grade| in halves (|s| <= 8).
pub const MAX_HALF_GRADE: i32 = 16;

/// The polynomial W under the square root, with its exact root when W
/// happens to be a perfect square (then every grade folds to zero).
#[derive(Debug)]
pub struct RadBase {
    w: MPoly,
    root: Option<MPoly>,
}

impl RadBase {
    pub fn new(w: MPoly) -> Arc<RadBase> {
        let root = match w.constant_value() {
            Some(c) => rational_sqrt(&c).map(|r| MPoly::constant(w.vars().to_vec(), r)),
            None => w.sqrt_exact(),
        };
        Arc::new(RadBase { w, root })
    }

    /// The trivial base W = 1.
    pub fn unit(vars: Vec<String>) -> Arc<RadBase> {
        RadBase::new(MPoly::one(vars))
    }

    pub fn w(&self) -> &MPoly {
        &self.w
    }

    pub fn root(&self) -> Option<&MPoly> {
        self.root.as_ref()
    }

    fn same(a: &Arc<RadBase>, b: &Arc<RadBase>) -> bool {
        Arc::ptr_eq(a, b) || a.w == b.w
    }
}

/// Finite sum `Σ parts[k] · W^(k/2)` with rational-function coefficients.
/// Grades are stored as integer counts of halves.
#[derive(Clone, Debug)]
pub struct RadExpr {
    base: Arc<RadBase>,
    parts: BTreeMap<i32, RatFun>,
}

fn check_grade(k: i32) -> Result<i32> {
    if k.abs() > MAX_HALF_GRADE {
        Err(Error::GradeOverflow(k))
    } else {
        Ok(k)
    }
}

impl RadExpr {
    pub fn zero(base: Arc<RadBase>) -> Self {
        RadExpr { base, parts: BTreeMap::new() }
    }

    pub fn from_ratfun(base: Arc<RadBase>, r: RatFun) -> Self {
        let mut parts = BTreeMap::new();
        if !r.is_zero() {
            parts.insert(0, r);
        }
        RadExpr { base, parts }
    }

    pub fn from_poly(base: Arc<RadBase>, p: MPoly) -> Self {
        RadExpr::from_ratfun(base, RatFun::from_poly(p))
    }

    /// `r · W^(half_grade/2)`.
    pub fn graded(base: Arc<RadBase>, r: RatFun, half_grade: i32) -> Result<Self> {
        check_grade(half_grade)?;
        let mut parts = BTreeMap::new();
        if !r.is_zero() {
            parts.insert(half_grade, r);
        }
        Ok(RadExpr { base, parts })
    }

    pub fn base(&self) -> &Arc<RadBase> {
        &self.base
    }

    pub fn parts(&self) -> impl Iterator<Item = (i32, &RatFun)> {
        self.parts.iter().map(|(k, r)| (*k, r))
    }

    pub fn part(&self, half_grade: i32) -> Option<&RatFun> {
        self.parts.get(&half_grade)
    }

    pub fn grades(&self) -> Vec<i32> {
        self.parts.keys().copied().collect()
    }

    /// Moves the expression onto another base. Only grade-0 expressions can
    /// be rebased.
    pub fn rebase(&self, base: Arc<RadBase>) -> Result<RadExpr> {
        if RadBase::same(&self.base, &base) {
            return Ok(RadExpr { base, parts: self.parts.clone() });
        }
        let r = self.to_ratfun()?;
        Ok(RadExpr::from_ratfun(base, r))
    }

    fn ensure_same(&self, other: &RadExpr) -> Result<()> {
        if RadBase::same(&self.base, &other.base) {
            Ok(())
        } else {
            Err(Error::MixedBases)
        }
    }

    pub fn neg(&self) -> RadExpr {
        RadExpr {
            base: self.base.clone(),
            parts: self.parts.iter().map(|(k, r)| (*k, r.neg())).collect(),
        }
    }

    pub fn add(&self, other: &RadExpr) -> Result<RadExpr> {
        self.ensure_same(other)?;
        let mut parts = self.parts.clone();
        for (k, r) in &other.parts {
            let s = match parts.get(k) {
                Some(x) => x.add(r),
                None => r.clone(),
            };
            if s.is_zero() {
                parts.remove(k);
            } else {
                parts.insert(*k, s);
            }
        }
        Ok(RadExpr { base: self.base.clone(), parts })
    }

    pub fn sub(&self, other: &RadExpr) -> Result<RadExpr> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RadExpr) -> Result<RadExpr> {
        self.ensure_same(other)?;
        let mut out = RadExpr::zero(self.base.clone());
        for (ka, ra) in &self.parts {
            for (kb, rb) in &other.parts {
                let k = check_grade(ka + kb)?;
                let term = RadExpr { base: self.base.clone(), parts: BTreeMap::from([(k, ra.mul(rb))]) };
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &RatFun) -> RadExpr {
        if r.is_zero() {
            return RadExpr::zero(self.base.clone());
        }
        RadExpr {
            base: self.base.clone(),
            parts: self.parts.iter().map(|(k, x)| (*k, x.mul(r))).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> RadExpr {
        self.scale(&RatFun::constant(self.base.w.vars().to_vec(), c.clone()))
    }

    /// Division. Exact when the divisor has a single grade after
    /// simplification; otherwise the quotient must be a single-grade
    /// expression, which is verified.
    pub fn div(&self, other: &RadExpr) -> Result<RadExpr> {
        self.ensure_same(other)?;
        let d = other.simplify()?;
        if d.parts.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if d.parts.len() == 1 {
            let (kd, rd) = d.parts.iter().next().unwrap();
            let mut parts = BTreeMap::new();
            for (k, r) in &self.parts {
                parts.insert(check_grade(k - kd)?, r.div(rd)?);
            }
            return Ok(RadExpr { base: self.base.clone(), parts });
        }
        let n = self.simplify()?;
        let Some((kn, rn)) = n.parts.iter().next_back() else {
            return Ok(RadExpr::zero(self.base.clone()));
        };
        let (kd, rd) = d.parts.iter().next_back().unwrap();
        let q = RadExpr::graded(self.base.clone(), rn.div(rd)?.normalize(), kn - kd)?;
        if q.mul(&d)?.sub(&n)?.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Partial derivative, using d(W^s) = s·W^(s-1)·∂W.
    pub fn diff(&self, var: &str) -> Result<RadExpr> {
        let w = &self.base.w;
        let dw = match w.var_index(var) {
            Some(i) => w.diff_index(i),
            None => MPoly::zero(w.vars().to_vec()),
        };
        let dw = RatFun::from_poly(dw);
        let mut out = RadExpr::zero(self.base.clone());
        for (k, r) in &self.parts {
            let dr = r.diff(var)?;
            if !dr.is_zero() {
                out = out.add(&RadExpr::graded(self.base.clone(), dr, *k)?)?;
            }
            if *k != 0 && !dw.is_zero() {
                let c = Rational::new((*k).into(), 2.into());
                let t = r.mul(&dw).scale(&c);
                out = out.add(&RadExpr::graded(self.base.clone(), t, check_grade(k - 2)?)?)?;
            }
        }
        Ok(out)
    }

    /// Collects each parity class over a common grade, cancels gcds and
    /// shifts whole factors of W between the coefficient and the grade.
    pub fn simplify(&self) -> Result<RadExpr> {
        let vars = self.base.w.vars().to_vec();
        if let Some(root) = &self.base.root {
            let root = RatFun::from_poly(root.clone());
            let mut acc = RatFun::zero(vars);
            for (k, r) in &self.parts {
                acc = acc.add(&r.mul(&root.pow(*k)?));
            }
            return Ok(RadExpr::from_ratfun(self.base.clone(), acc.normalize()));
        }
        let wconst = self.base.w.constant_value();
        let mut parts = BTreeMap::new();
        for parity in [0, 1] {
            let ks: Vec<i32> = self.parts.keys().copied().filter(|k| k.rem_euclid(2) == parity).collect();
            let Some(&kmin) = ks.first() else { continue };
            let target = if wconst.is_some() { parity } else { kmin };
            let mut combined = RatFun::zero(vars.clone());
            for k in &ks {
                let e = (k - target) / 2;
                let factor = match &wconst {
                    Some(c) => RatFun::constant(vars.clone(), rational_pow(c, e)),
                    None => RatFun::from_poly(self.base.w.pow(e as u32)),
                };
                combined = combined.add(&self.parts[k].mul(&factor));
            }
            let combined = combined.normalize();
            if combined.is_zero() {
                continue;
            }
            let (combined, target) = if wconst.is_some() {
                (combined, target)
            } else {
                self.extract_w(combined, target)
            };
            parts.insert(check_grade(target)?, combined);
        }
        Ok(RadExpr { base: self.base.clone(), parts })
    }

    fn extract_w(&self, r: RatFun, mut k: i32) -> (RatFun, i32) {
        let w = &self.base.w;
        let (mut num, mut den) = r.into_parts();
        while let Some(q) = num.div_exact(w) {
            num = q;
            k += 2;
        }
        while let Some(q) = den.div_exact(w) {
            den = q;
            k -= 2;
        }
        (RatFun::new(num, den).expect("nonzero denominator"), k)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty() || self.simplify().map(|e| e.parts.is_empty()).unwrap_or(false)
    }

    /// The value as a rational function, if no odd grade survives
    /// simplification.
    pub fn to_ratfun(&self) -> Result<RatFun> {
        let vars = self.base.w.vars().to_vec();
        if self.parts.is_empty() {
            return Ok(RatFun::zero(vars));
        }
        if self.parts.len() == 1 {
            if let Some(r) = self.parts.get(&0) {
                return Ok(r.clone());
            }
        }
        let s = self.simplify()?;
        let mut acc = RatFun::zero(vars.clone());
        for (k, r) in &s.parts {
            if k.rem_euclid(2) != 0 {
                return Err(Error::NotRational);
            }
            let f = match self.base.w.constant_value() {
                Some(c) => RatFun::constant(vars.clone(), rational_pow(&c, k / 2)),
                None => RatFun::from_poly(self.base.w.clone()).pow(k / 2)?,
            };
            acc = acc.add(&r.mul(&f));
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        let w = self.base.w.eval_f64(vals);
        self.parts.iter().map(|(k, r)| r.eval_f64(vals) * w.powf(*k as f64 / 2.0)).sum()
    }
}

fn rational_pow(c: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl fmt::Display for RadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, r) in self.parts.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{r}")?,
                k if k % 2 == 0 => write!(f, "({r})*W^{}", k / 2)?,
                k => write!(f, "({r})*W^({k}/2)")?,
            }
        }
        Ok(())
    }
}
