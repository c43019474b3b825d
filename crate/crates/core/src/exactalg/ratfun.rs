use std::fmt;

use num_traits::{Signed, Zero};

use super::{poly_gcd, MPoly, Rational};
use crate::error::{Error, Result};

fn mk(num: MPoly, den: MPoly) -> RatFun {
    if num.vars() == den.vars() {
        RatFun { num, den }
    } else {
        let vars = MPoly::union_vars(num.vars(), den.vars());
        RatFun {
            num: num.with_vars(&vars).expect("superset"),
            den: den.with_vars(&vars).expect("superset"),
        }
    }
}

/// Quotient of two polynomials. Kept unreduced until [`RatFun::normalize`]
/// is called; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = MPoly::union_vars(num.vars(), den.vars());
        Ok(mk(num.with_vars(&vars)?, den.with_vars(&vars)?))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars().to_vec());
        mk(p, den)
    }

    pub fn zero(vars: Vec<String>) -> Self {
        RatFun::from_poly(MPoly::zero(vars))
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        RatFun::from_poly(MPoly::constant(vars, c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, if the denominator divides the numerator.
    pub fn as_poly(&self) -> Option<MPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn with_vars(&self, vars: &[String]) -> Result<RatFun> {
        Ok(mk(self.num.with_vars(vars)?, self.den.with_vars(vars)?))
    }

    /// Cancels the gcd of numerator and denominator and moves all scalar
    /// content into the numerator, leaving a primitive denominator with a
    /// positive leading coefficient.
    pub fn normalize(&self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero(self.vars().to_vec());
        }
        let g = poly_gcd(&self.num, &self.den);
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        let c = den.content();
        let lead_neg = den.leading_term().is_some_and(|(_, x)| x.is_negative());
        let c = if lead_neg { -c } else { c };
        let inv = c.recip();
        mk(num.scale(&inv), den.scale(&inv))
    }

    pub fn neg(&self) -> RatFun {
        mk(-&self.num, self.den.clone())
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.combine(other, true)
    }

    fn combine(&self, other: &RatFun, subtract: bool) -> RatFun {
        let rhs_num = if subtract { -&other.num } else { other.num.clone() };
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return mk(rhs_num, other.den.clone());
        }
        if self.den == other.den {
            return mk(&self.num + &rhs_num, self.den.clone());
        }
        if let Some(c) = other.den.constant_value() {
            let num = &self.num + &(&rhs_num * &self.den).scale(&c.recip());
            return mk(num, self.den.clone());
        }
        if let Some(c) = self.den.constant_value() {
            let num = &(&self.num * &other.den).scale(&c.recip()) + &rhs_num;
            return mk(num, other.den.clone());
        }
        if let Some(q) = other.den.div_exact(&self.den) {
            return mk(&(&self.num * &q) + &rhs_num, other.den.clone());
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            return mk(&self.num + &(&rhs_num * &q), self.den.clone());
        }
        mk(&(&self.num * &other.den) + &(&rhs_num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFun::zero(MPoly::union_vars(self.vars(), other.vars()));
        }
        mk(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFun {
        mk(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        mk(self.num.scale(c), self.den.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(mk(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(mk(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RatFun> {
        if e >= 0 {
            Ok(mk(self.num.pow(e as u32), self.den.pow(e as u32)))
        } else {
            self.recip()?.pow(-e)
        }
    }

    /// Quotient rule.
    pub fn diff(&self, var: &str) -> Result<RatFun> {
        let vars = self.vars().to_vec();
        if !vars.iter().any(|v| v == var) {
            return Ok(RatFun::zero(vars));
        }
        let dn = self.num.diff(var)?;
        if self.den.is_constant() {
            return Ok(mk(dn, self.den.clone()));
        }
        let dd = self.den.diff(var)?;
        Ok(mk(&(&dn * &self.den) - &(&self.num * &dd), &self.den * &self.den))
    }

    pub fn eval(&self, vals: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_slice(vals);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_slice(vals) / d)
    }

    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        self.num.eval_f64(vals) / self.den.eval_f64(vals)
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &RatFun) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if let Some(c) = self.den.constant_value() {
            if !c.is_zero() {
                return write!(f, "{}", self.num.scale(&c.recip()));
            }
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfun;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s, &["u", "v"]).unwrap()
    }

    #[test]
    fn arithmetic_and_equality() {
        let a = r("1/(u+1)");
        let b = r("1/(u-1)");
        let s = a.add(&b);
        assert_eq!(s, r("2*u/(u^2-1)"));
        assert_eq!(a.mul(&b), r("1/(u^2-1)"));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn normalize_cancels() {
        let x = r("(u^2 - v^2)/(2*u + 2*v)").normalize();
        assert_eq!(x.den().to_string(), "1");
        assert_eq!(x.num().to_string(), "1/2*u - 1/2*v");
        let y = r("(u+1)/(-3*u*v - 3*v)").normalize();
        assert_eq!(y.den().to_string(), "v");
        assert_eq!(y.num().to_string(), "-1/3");
    }

    #[test]
    fn quotient_rule() {
        let a = r("u/(u+v)");
        assert_eq!(a.diff("u").unwrap(), r("v/(u+v)^2"));
        assert!(r("v^3").diff("u").unwrap().is_zero());
    }

    #[test]
    fn zero_denominator() {
        let u = crate::exactalg::parse_poly("u", &["u"]).unwrap();
        assert!(RatFun::new(u.clone(), MPoly::zero(u.vars().to_vec())).is_err());
        let q = RatFun::from_poly(u);
        let zero = RatFun::zero(q.vars().to_vec());
        assert_eq!(q.div(&zero).unwrap_err(), Error::DivisionByZero);
    }
}
