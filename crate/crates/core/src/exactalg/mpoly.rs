use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per declared variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in a map keyed by exponent vector, so the storage order is
/// lexicographic on the declared variable order. Display and canonical
/// forms use graded-lexicographic order instead.
#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Graded lexicographic comparison: total degree first, then lex.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn vars_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl MPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        MPoly::constant(vars, Rational::one())
    }

    pub fn from_int(vars: Vec<String>, c: i64) -> Self {
        MPoly::constant(vars, Rational::from_integer(BigInt::from(c)))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: Vec<String>, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        let mut p = MPoly::zero(vars);
        p.terms.insert(m, Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from (exponents, coefficient) pairs; repeated
    /// monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Lex leading term (the last map entry).
    fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Terms sorted in canonical (graded-lex, descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_cmp(b.0, a.0));
        t
    }

    /// Terms of the given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the polynomial over `new_vars`. Every variable that
    /// actually occurs must be present in `new_vars`.
    pub fn with_vars(&self, new_vars: &[String]) -> Result<MPoly> {
        if new_vars == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let j = new_vars.iter().position(|w| w == v);
            if j.is_none() && self.degree_in(i) > 0 {
                return Err(Error::UnknownVariable(v.clone()));
            }
            map.push(j);
        }
        let mut out = MPoly::zero(new_vars.to_vec());
        for (m, c) in &self.terms {
            let mut nm = vec![0; new_vars.len()];
            for (i, &e) in m.iter().enumerate() {
                if let Some(j) = map[i] {
                    nm[j] += e;
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Union of the two variable lists, keeping `self`'s order first.
    pub fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut v = a.to_vec();
        for x in b {
            if !v.contains(x) {
                v.push(x.clone());
            }
        }
        v
    }

    fn aligned(&self, other: &MPoly) -> (std::borrow::Cow<'_, MPoly>, MPoly) {
        if self.vars == other.vars {
            (std::borrow::Cow::Borrowed(self), other.clone())
        } else {
            let vars = MPoly::union_vars(&self.vars, &other.vars);
            (
                std::borrow::Cow::Owned(self.with_vars(&vars).expect("superset")),
                other.with_vars(&vars).expect("superset"),
            )
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &[u32], c: &Rational) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn try_pow(&self, e: i64) -> Result<MPoly> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    /// Formal partial derivative.
    pub fn diff(&self, var: &str) -> Result<MPoly> {
        let i = self.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.diff_index(i))
    }

    pub fn diff_index(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut nm = m.clone();
                nm[i] -= 1;
                out.add_term(nm, c * Rational::from_integer(BigInt::from(m[i])));
            }
        }
        out
    }

    /// Exact evaluation at a point given by name.
    pub fn eval<S: AsRef<str>>(&self, point: &[(S, Rational)]) -> Result<Rational> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match point.iter().find(|(n, _)| n.as_ref() == v) {
                Some((_, x)) => vals.push(x.clone()),
                None if self.degree_in(i) == 0 => vals.push(Rational::zero()),
                None => return Err(Error::MissingVariable(v.clone())),
            }
        }
        Ok(self.eval_slice(&vals))
    }

    /// Exact evaluation with one value per declared variable, in order.
    pub fn eval_slice(&self, vals: &[Rational]) -> Rational {
        assert_eq!(vals.len(), self.vars.len());
        let maxdeg: Vec<u32> = (0..self.vars.len()).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Rational>> = vals
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d as usize + 1);
                p.push(Rational::one());
                for k in 1..=d as usize {
                    let next = &p[k - 1] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation (for plotting and numeric summaries only).
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rat_to_f64(c);
                for (i, &e) in m.iter().enumerate() {
                    t *= vals[i].powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Evaluates an integer-coefficient polynomial at integer values.
    /// Returns `None` if some coefficient is not an integer.
    pub fn eval_integer(&self, vals: &[BigInt]) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let mut t = c.numer().clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitutes `value` for the variable at index `i`.
    pub fn substitute(&self, var: &str, value: &MPoly) -> Result<MPoly> {
        let i = self.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let vars = MPoly::union_vars(&self.vars, &value.vars);
        let this = self.with_vars(&vars)?;
        let value = value.with_vars(&vars)?;
        let d = self.degree_in(i) as usize;
        let mut powers = vec![MPoly::one(vars.clone())];
        for k in 1..=d {
            let next = &powers[k - 1] * &value;
            powers.push(next);
        }
        let mut out = MPoly::zero(vars.clone());
        for (m, c) in &this.terms {
            let mut rest = m.clone();
            let e = rest[i] as usize;
            rest[i] = 0;
            let t = powers[e].mul_monomial(&rest, c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// The positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::zero();
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Integer primitive part with positive content removed (sign kept).
    pub fn primitive_part(&self) -> MPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Primitive part with the graded-lex leading coefficient made positive.
    pub fn canonical(&self) -> MPoly {
        let p = self.primitive_part();
        match p.leading_term() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    /// Canonical text: primitive integer coefficients, positive leading
    /// coefficient, terms in descending graded-lex order.
    pub fn to_canonical_string(&self) -> String {
        self.canonical().to_string()
    }

    /// Exact division. Returns `None` when `q` does not divide `self`.
    pub fn div_exact(&self, q: &MPoly) -> Option<MPoly> {
        if q.is_zero() {
            return None;
        }
        let (p, q) = self.aligned(q);
        if let Some(c) = q.constant_value() {
            return Some(p.scale(&c.recip()));
        }
        let (qm, qc) = q.lex_leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let qinv = qc.recip();
        // Degree guard: the quotient's exponents are bounded by p's.
        for i in 0..p.nvars() {
            if q.degree_in(i) > p.degree_in(i) && !p.is_zero() {
                return None;
            }
        }
        let mut rem = p.into_owned();
        let mut quot = MPoly::zero(rem.vars.clone());
        while let Some((rm, rc)) = rem.lex_leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !divides(&qm, &rm) {
                return None;
            }
            let mono: Monomial = rm.iter().zip(&qm).map(|(a, b)| a - b).collect();
            let coef = &rc * &qinv;
            rem = rem.sub_scaled_shifted(&q, &mono, &coef);
            quot.add_term(mono, coef);
        }
        Some(quot)
    }

    /// `self - c * x^mono * q`, assuming equal variable lists.
    fn sub_scaled_shifted(mut self, q: &MPoly, mono: &[u32], c: &Rational) -> MPoly {
        for (m, x) in &q.terms {
            let nm: Monomial = m.iter().zip(mono).map(|(a, b)| a + b).collect();
            self.add_term(nm, -(x * c));
        }
        self
    }

    /// Coefficients of `self` viewed as a univariate polynomial in the
    /// variable at index `i` (index = power).
    pub fn to_univariate(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            let e = nm[i] as usize;
            nm[i] = 0;
            out[e].add_term(nm, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_univariate(coeffs: &[MPoly], i: usize, vars: Vec<String>) -> MPoly {
        let mut out = MPoly::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut nm = m.clone();
                nm[i] += e as u32;
                out.add_term(nm, x.clone());
            }
        }
        out
    }

    /// Exact polynomial square root, if one exists.
    pub fn sqrt_exact(&self) -> Option<MPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.lex_leading().map(|(m, c)| (m.clone(), c.clone()))?;
        if lm.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_c = rational_sqrt(&lc)?;
        let root_m: Monomial = lm.iter().map(|e| e / 2).collect();
        let mut s = MPoly::zero(self.vars.clone());
        s.add_term(root_m.clone(), root_c.clone());
        let two_lc = &root_c * Rational::from_integer(BigInt::from(2));
        // Each new root term has strictly smaller lex monomial; bound the loop.
        for _ in 0..=self.terms.len() * 2 + 2 {
            let r = self - &(&s * &s);
            let Some((rm, rc)) = r.lex_leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some(s);
            };
            if !divides(&root_m, &rm) {
                return None;
            }
            let tm: Monomial = rm.iter().zip(&root_m).map(|(a, b)| a - b).collect();
            if tm >= root_m {
                return None;
            }
            s.add_term(tm, rc / &two_lc);
        }
        None
    }

    /// Renames variables in place (same arity).
    pub fn renamed(&self, names: &[String]) -> MPoly {
        assert_eq!(names.len(), self.vars.len());
        MPoly { vars: names.to_vec(), terms: self.terms.clone() }
    }
}

pub fn rat_to_f64(c: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale through the bit lengths.
        let n = c.numer();
        let d = c.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as i64;
        let ns = (n >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let ds = (d >> shift as usize).to_f64().unwrap_or(f64::NAN);
        ns / ds
    })
}

pub fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            (self - other).is_zero()
        }
    }
}

impl Eq for MPoly {}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = MPoly::zero(b.vars.clone());
        if a.is_zero() || b.is_zero() {
            return out;
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.terms = acc;
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
