use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp::{crt, kernel_mod, primes, rat_mod, rat_recon};
use super::subst::substitution_witness;
use super::ParametricMap3;
use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Rational};

/// Exponent triples of total degree ≤ d, in descending graded-lex order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for t in (0..=d).rev() {
        for i in (0..=t).rev() {
            for j in (0..=t - i).rev() {
                out.push([i, j, t - i - j]);
            }
        }
    }
    out
}

pub fn sample_params(i: u64) -> (Rational, Rational) {
    let u = Rational::new(BigInt::from(i), BigInt::from(17)) + Rational::new(BigInt::one(), BigInt::from(3));
    let j = (7 * i * i + 3 * i) % 1009;
    let v = Rational::new(BigInt::from(j), BigInt::from(19)) + Rational::new(BigInt::one(), BigInt::from(5));
    (u, v)
}

/// Deterministic image points of the map, skipping denominator zeros.
pub struct Samples {
    next: u64,
    pub points: Vec<[Rational; 3]>,
}

impl Samples {
    pub fn new() -> Self {
        Samples { next: 0, points: Vec::new() }
    }

    pub fn ensure(&mut self, m: &ParametricMap3, n: usize) {
        while self.points.len() < n {
            let (u, v) = sample_params(self.next);
            self.next += 1;
            if let Some(p) = m.eval(&u, &v) {
                self.points.push(p);
            }
        }
    }
}

fn rows_mod(points: &[[Rational; 3]], monos: &[[u32; 3]], d: u32, p: u64) -> Option<Vec<Vec<u64>>> {
    points
        .iter()
        .map(|pt| {
            let mut tables = Vec::with_capacity(3);
            for c in pt {
                let x = rat_mod(c, p)?;
                let mut t = Vec::with_capacity(d as usize + 1);
                let mut acc = 1u64;
                for _ in 0..=d {
                    t.push(acc);
                    acc = acc * x % p;
                }
                tables.push(t);
            }
            Some(
                monos
                    .iter()
                    .map(|e| tables[0][e[0] as usize] * tables[1][e[1] as usize] % p * tables[2][e[2] as usize] % p)
                    .collect(),
            )
        })
        .collect()
}

/// Number of monomials of degree ≤ d in three variables.
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

pub struct Found {
    pub q: MPoly,
    pub nullity: usize,
    pub primes_used: usize,
}

/// Kernel nullity at degree `d` modulo a single prime. An upper bound on
/// the nullity over the rationals, so zero proves that no annihilator of
/// degree ≤ d exists.
pub fn nullity_mod_p(m: &ParametricMap3, d: u32, factor: usize, samples: &mut Samples) -> usize {
    let monos = monomials(d);
    samples.ensure(m, factor * monos.len());
    for p in primes() {
        if let Some(rows) = rows_mod(&samples.points[..factor * monos.len()], &monos, d, p) {
            return kernel_mod(rows, monos.len(), p).free.len();
        }
    }
    unreachable!("some prime avoids every sample denominator")
}

/// Searches for a kernel vector of degree exactly `d`. `Ok(None)` when the
/// evaluation matrix has full column rank.
#[allow(clippy::too_many_arguments)]
pub fn kernel_at_degree(
    m: &ParametricMap3,
    vars: &[String],
    d: u32,
    factor: usize,
    max_primes: usize,
    samples: &mut Samples,
    start: Instant,
    budget: f64,
) -> Result<Option<Found>> {
    let monos = monomials(d);
    let n = monos.len();
    samples.ensure(m, factor * n);
    let points = &samples.points[..factor * n];
    // best (pivots, residues, modulus)
    let mut state: Option<(Vec<usize>, usize, Vec<BigInt>, BigInt)> = None;
    let mut used = 0;
    let mut last: Option<Vec<Rational>> = None;
    for p in primes() {
        if start.elapsed().as_secs_f64() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let Some(rows) = rows_mod(points, &monos, d, p) else { continue };
        let k = kernel_mod(rows, n, p);
        if k.free.is_empty() {
            return Ok(None);
        }
        used += 1;
        let vec = &k.basis[0];
        let better = match &state {
            None => true,
            Some((piv, _, _, _)) => k.pivots.len() > piv.len() || (k.pivots.len() == piv.len() && k.pivots < *piv),
        };
        let same = matches!(&state, Some((piv, _, _, _)) if *piv == k.pivots);
        if better && !same {
            state = Some((k.pivots.clone(), k.free.len(), vec.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(p)));
        } else if same {
            let (_, _, res, modulus) = state.as_mut().expect("state set");
            if let Some(prev) = &last {
                // a stable reconstruction must agree with the fresh prime
                let agrees = prev.iter().zip(vec).all(|(r, &x)| rat_mod(r, p) == Some(x));
                if agrees {
                    let q = to_poly(prev, &monos, vars);
                    if substitution_witness(m, &q)?.is_none() {
                        return Ok(Some(Found { q, nullity: state.as_ref().unwrap().1, primes_used: used }));
                    }
                    return Err(Error::SamplingDegenerate);
                }
            }
            for (r, &x) in res.iter_mut().zip(vec) {
                *r = crt(r, modulus, x, p);
            }
            *modulus *= p;
        } else {
            continue;
        }
        let (_, _, res, modulus) = state.as_ref().expect("state set");
        last = res.iter().map(|r| rat_recon(r, modulus)).collect();
        if used >= max_primes {
            return Err(Error::SamplingDegenerate);
        }
    }
    unreachable!("prime supply exhausted")
}

fn to_poly(coeffs: &[Rational], monos: &[[u32; 3]], vars: &[String]) -> MPoly {
    MPoly::from_terms(
        vars.to_vec(),
        coeffs.iter().zip(monos).filter(|(c, _)| !c.is_zero()).map(|(c, e)| (e.to_vec(), c.clone())),
    )
}
