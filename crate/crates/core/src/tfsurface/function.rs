use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactalg::{rat_to_f64, MPoly, Rational};

/// Elementary functions available to analytic profiles.
#[derive(Clone, Debug, PartialEq)]
pub enum Elementary {
    Tan,
    Cos,
    /// `x^e`, real-valued only where `x > 0` unless `e` has odd denominator.
    Pow(Rational),
}

/// `p · F(q·t + r) + s` for an elementary `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Analytic {
    pub func: Elementary,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub name: String,
}

/// A profile function of one variable: an exact polynomial in `t`, or an
/// analytic expression with closed-form derivatives.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarFunction {
    Polynomial(MPoly),
    Analytic(Analytic),
}

/// Real power with rational exponent; `None` when the value is not real.
pub fn real_pow(x: f64, e: &Rational) -> Option<f64> {
    let ef = rat_to_f64(e);
    if x > 0.0 {
        return Some(x.powf(ef));
    }
    if x == 0.0 {
        return if e.is_negative() { None } else if e.is_zero() { Some(1.0) } else { Some(0.0) };
    }
    if e.denom().is_odd() {
        let mag = (-x).powf(ef);
        Some(if e.numer().is_odd() { -mag } else { mag })
    } else {
        None
    }
}

fn is_nonneg_integer(e: &Rational) -> bool {
    e.is_integer() && !e.is_negative()
}

impl Elementary {
    /// Value and first two derivatives at `x`.
    fn jet(&self, x: f64) -> Option<[f64; 3]> {
        match self {
            Elementary::Tan => {
                let t = x.tan();
                let s2 = 1.0 + t * t;
                Some([t, s2, 2.0 * t * s2])
            }
            Elementary::Cos => Some([x.cos(), -x.sin(), -x.cos()]),
            Elementary::Pow(e) => {
                let one = Rational::from_integer(1.into());
                let two = Rational::from_integer(2.into());
                let ef = rat_to_f64(e);
                let v0 = real_pow(x, e)?;
                let v1 = if e.is_zero() { 0.0 } else { ef * real_pow(x, &(e - &one))? };
                let v2 = if e.is_zero() || *e == one { 0.0 } else { ef * (ef - 1.0) * real_pow(x, &(e - &two))? };
                Some([v0, v1, v2])
            }
        }
    }

    /// Distance from `x` to the nearest point where `F` is singular or not
    /// real, in the argument of `F`.
    fn singular_distance(&self, x: f64) -> f64 {
        match self {
            Elementary::Tan => {
                let k = ((x - PI / 2.0) / PI).round();
                (x - (PI / 2.0 + k * PI)).abs()
            }
            Elementary::Cos => f64::INFINITY,
            Elementary::Pow(e) => {
                if is_nonneg_integer(e) {
                    f64::INFINITY
                } else if x < 0.0 && e.denom().is_even() {
                    0.0
                } else {
                    x.abs()
                }
            }
        }
    }
}

impl ScalarFunction {
    /// The polynomial `t`.
    pub fn identity() -> Self {
        ScalarFunction::Polynomial(MPoly::var(vec!["t".into()], "t").expect("t"))
    }

    pub fn constant(c: Rational) -> Self {
        ScalarFunction::Polynomial(MPoly::constant(vec!["t".into()], c))
    }

    /// Polynomial from coefficients, constant term first.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone()));
        ScalarFunction::Polynomial(MPoly::from_terms(vec!["t".into()], terms))
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, ScalarFunction::Polynomial(_))
    }

    /// The polynomial rewritten in the variable `var` (within `vars`).
    pub fn poly_in(&self, var: &str, vars: &[String]) -> Option<MPoly> {
        match self {
            ScalarFunction::Polynomial(p) => {
                let p = p.with_vars(&["t".to_string()]).ok()?;
                Some(p.renamed(&[var.to_string()]).with_vars(vars).expect("var in vars"))
            }
            ScalarFunction::Analytic(_) => None,
        }
    }

    /// `(value, first derivative, second derivative)` at `t`.
    pub fn jet(&self, t: f64) -> Option<[f64; 3]> {
        match self {
            ScalarFunction::Polynomial(p) => {
                let d1 = p.diff("t").ok()?;
                let d2 = d1.diff("t").ok()?;
                let at = |q: &MPoly| if q.nvars() == 0 { q.eval_f64(&[]) } else { q.eval_f64(&[t]) };
                Some([at(p), at(&d1), at(&d2)])
            }
            ScalarFunction::Analytic(a) => {
                let [f0, f1, f2] = a.func.jet(a.q * t + a.r)?;
                let out = [a.p * f0 + a.s, a.p * a.q * f1, a.p * a.q * a.q * f2];
                out.iter().all(|x| x.is_finite()).then_some(out)
            }
        }
    }

    pub fn value(&self, t: f64) -> Option<f64> {
        self.jet(t).map(|j| j[0])
    }

    /// Distance in `t` to the nearest singularity; infinite for polynomials.
    pub fn singular_distance(&self, t: f64) -> f64 {
        match self {
            ScalarFunction::Polynomial(_) => f64::INFINITY,
            ScalarFunction::Analytic(a) => {
                if a.q == 0.0 {
                    f64::INFINITY
                } else {
                    a.func.singular_distance(a.q * t + a.r) / a.q.abs()
                }
            }
        }
    }

    /// Whether this is exactly the polynomial `t`.
    pub fn is_identity(&self) -> bool {
        *self == ScalarFunction::identity()
            || matches!(self, ScalarFunction::Polynomial(p) if p.with_vars(&["t".to_string()]).ok() == MPoly::var(vec!["t".into()], "t").ok())
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            ScalarFunction::Polynomial(p) => Some(p.total_degree().unwrap_or(0)),
            ScalarFunction::Analytic(_) => None,
        }
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFunction::Polynomial(p) => write!(f, "{p}"),
            ScalarFunction::Analytic(a) => write!(f, "{}", a.name),
        }
    }
}

impl Analytic {
    pub fn new(func: Elementary, p: f64, q: f64, r: f64, s: f64) -> Self {
        let fname = match &func {
            Elementary::Tan => "tan".to_string(),
            Elementary::Cos => "cos".to_string(),
            Elementary::Pow(e) => format!("pow[{e}]"),
        };
        let name = format!("{p}*{fname}({q}*t + {r}) + {s}");
        Analytic { func, p, q, r, s, name }
    }

    pub fn exponent(&self) -> Option<f64> {
        match &self.func {
            Elementary::Pow(e) => e.to_f64(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn real_powers() {
        assert_eq!(real_pow(-8.0, &r(1, 3)), Some(-2.0));
        assert_eq!(real_pow(-4.0, &r(1, 2)), None);
        assert_eq!(real_pow(4.0, &r(-1, 2)), Some(0.5));
        assert_eq!(real_pow(0.0, &r(-1, 1)), None);
    }

    #[test]
    fn tan_jet_and_poles() {
        let f = ScalarFunction::Analytic(Analytic::new(Elementary::Tan, 1.0, 1.0, 0.0, -1.0));
        let [v, d1, d2] = f.jet(0.3).unwrap();
        let t = 0.3f64.tan();
        assert!((v - (t - 1.0)).abs() < 1e-15);
        assert!((d1 - (1.0 + t * t)).abs() < 1e-15);
        assert!((d2 - 2.0 * t * (1.0 + t * t)).abs() < 1e-14);
        assert!((f.singular_distance(1.5) - (PI / 2.0 - 1.5)).abs() < 1e-15);
    }

    #[test]
    fn polynomial_jet() {
        let f = ScalarFunction::from_coeffs(&[r(1, 1), r(0, 1), r(3, 1)]);
        assert_eq!(f.jet(2.0).unwrap(), [13.0, 12.0, 6.0]);
        assert!(ScalarFunction::identity().is_identity());
        assert_eq!(ScalarFunction::constant(r(2, 1)).jet(5.0).unwrap(), [2.0, 0.0, 0.0]);
    }
}
