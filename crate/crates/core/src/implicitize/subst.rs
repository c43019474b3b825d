use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::modp::{big_mod, pow, primes};
use super::ParametricMap3;
use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Rational};

/// A parameter point where Q∘m is defined and nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub u: Rational,
    pub v: Rational,
    pub value: Rational,
}

fn int_terms(p: &MPoly) -> Vec<(u32, u32, BigInt)> {
    p.terms()
        .map(|(m, c)| {
            debug_assert!(c.is_integer());
            (m[0], m[1], c.numer().clone())
        })
        .collect()
}

fn eval_mod(terms: &[(u32, u32, u64)], upow: &[u64], vpow: &[u64], p: u64) -> u64 {
    terms.iter().fold(0, |acc, &(i, j, c)| (acc + c * upow[i as usize] % p * vpow[j as usize]) % p)
}

fn norm_bits(p: &MPoly) -> u64 {
    let s: BigInt = p.terms().map(|(_, c)| c.numer().abs()).sum();
    s.bits().max(1)
}

/// Decides Q∘m ≡ 0 exactly.
///
/// N(u, v) = Σ c·nx^i·ny^j·nz^k·D^(d−i−j−k) is the cleared numerator. Its
/// degree in each parameter is at most d times the largest degree among
/// nx, ny, nz, D, so vanishing on an integer grid one point wider than
/// that forces N ≡ 0 over any field. Checking the grid modulo enough
/// primes to exceed twice a coefficient bound of N makes the test exact.
/// Returns a witness when N is not identically zero.
pub fn substitution_witness(m: &ParametricMap3, q: &MPoly) -> Result<Option<Witness>> {
    if q.nvars() != 3 {
        return Err(Error::InvalidSpec(format!("implicit equation must have 3 variables, got {}", q.nvars())));
    }
    if q.is_zero() {
        return Ok(None);
    }
    let q = q.primitive_part();
    let d = q.total_degree().unwrap_or(0);
    let polys = [&m.nums[0], &m.nums[1], &m.nums[2], &m.den];
    let du = d * polys.iter().map(|p| p.degree_in(0)).max().unwrap_or(0);
    let dv = d * polys.iter().map(|p| p.degree_in(1)).max().unwrap_or(0);
    let qsum: BigInt = q.terms().map(|(_, c)| c.numer().abs()).sum();
    let bound_bits = qsum.bits() + d as u64 * polys.iter().map(|p| norm_bits(p)).max().unwrap_or(1) + 2;
    let needed = bound_bits.div_ceil(30) as usize;
    let qterms: Vec<(Vec<u32>, BigInt)> = q.terms().map(|(e, c)| (e.clone(), c.numer().clone())).collect();
    let iterms: Vec<Vec<(u32, u32, BigInt)>> = polys.iter().map(|p| int_terms(p)).collect();
    for p in primes().take(needed) {
        let qm: Vec<(&Vec<u32>, u64)> = qterms.iter().map(|(e, c)| (e, big_mod(c, p))).collect();
        let pm: Vec<Vec<(u32, u32, u64)>> =
            iterms.iter().map(|t| t.iter().map(|(i, j, c)| (*i, *j, big_mod(c, p))).collect()).collect();
        let maxdeg = polys.iter().map(|p| p.degree_in(0).max(p.degree_in(1))).max().unwrap_or(0) as usize;
        for a in 0..=du as u64 {
            let upow: Vec<u64> = (0..=maxdeg as u64).map(|e| pow(a, e, p)).collect();
            for b in 0..=dv as u64 {
                let vpow: Vec<u64> = (0..=maxdeg as u64).map(|e| pow(b, e, p)).collect();
                let vals: Vec<u64> = pm.iter().map(|t| eval_mod(t, &upow, &vpow, p)).collect();
                let tables: Vec<Vec<u64>> = vals
                    .iter()
                    .map(|&x| {
                        let mut t = Vec::with_capacity(d as usize + 1);
                        let mut acc = 1u64;
                        for _ in 0..=d {
                            t.push(acc);
                            acc = acc * x % p;
                        }
                        t
                    })
                    .collect();
                let mut s = 0u64;
                for (e, c) in &qm {
                    let rest = (d - e[0] - e[1] - e[2]) as usize;
                    let t = tables[0][e[0] as usize] * tables[1][e[1] as usize] % p * tables[2][e[2] as usize] % p
                        * tables[3][rest]
                        % p;
                    s = (s + c * t) % p;
                }
                if s != 0 {
                    return Ok(Some(find_witness(m, &q, du + m.den.degree_in(0), dv + m.den.degree_in(1))));
                }
            }
        }
    }
    Ok(None)
}

fn find_witness(m: &ParametricMap3, q: &MPoly, du: u32, dv: u32) -> Witness {
    for a in 0..=du as i64 {
        for b in 0..=dv as i64 {
            let (u, v) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
            let Some(xyz) = m.eval(&u, &v) else { continue };
            let value = q.eval_slice(&xyz);
            if !value.is_zero() {
                return Witness { u, v, value };
            }
        }
    }
    unreachable!("a nonzero numerator times a nonzero denominator has a nonzero grid value")
}
