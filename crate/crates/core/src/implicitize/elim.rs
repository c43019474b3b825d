use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::groebner::{groebner_basis, groebner_basis_mod};
use super::modp::{crt, inv, primes, rat_mod, rat_recon};
use super::subst::substitution_witness;
use super::ParametricMap3;
use crate::error::{Error, Result};
use crate::exactalg::{grlex_cmp, MPoly, Rational};
use crate::surfcalc::param_vars;

/// The weighted-homogeneous elimination system for a map.
///
/// Ring order: u, v[, t] | x, y, z, h. Parameters and h have weight 1, the
/// saturation variable t weight 1, and each image variable the excess of
/// numerator over denominator degree (at least 1). Every generator is
/// homogenized with h to its top weighted degree.
pub struct System {
    pub gens: Vec<MPoly>,
    pub weights: Vec<u16>,
    pub split: usize,
    pub saturated: bool,
}

fn wdeg(e: &[u32], w: &[u16]) -> u32 {
    e.iter().zip(w).map(|(&a, &b)| a * b as u32).sum()
}

fn homogenize(p: &MPoly, w: &[u16]) -> MPoly {
    let h = p.nvars() - 1;
    let top = p.terms().map(|(e, _)| wdeg(e, w)).max().unwrap_or(0);
    MPoly::from_terms(
        p.vars().to_vec(),
        p.terms().map(|(e, c)| {
            let mut e = e.clone();
            e[h] += top - wdeg(&e, w);
            (e, c.clone())
        }),
    )
}

pub fn system(m: &ParametricMap3, vars: &[String]) -> System {
    let mut dens: Vec<MPoly> = Vec::new();
    for c in &m.comps {
        let d = c.den().canonical();
        if !d.is_constant() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    let saturated = !dens.is_empty();
    let mut ring: Vec<String> = vec!["_u".into(), "_v".into()];
    if saturated {
        ring.push("_t".into());
    }
    let split = ring.len();
    ring.extend(vars.iter().cloned());
    ring.push("_h".into());
    let n = ring.len();
    let lift = |p: &MPoly| -> MPoly {
        MPoly::from_terms(
            ring.clone(),
            p.terms().map(|(e, c)| {
                let mut x = vec![0; n];
                x[0] = e[0];
                x[1] = e[1];
                (x, c.clone())
            }),
        )
    };
    let mut weights = vec![1u16; n];
    for (k, c) in m.comps.iter().enumerate() {
        let excess = c.num().total_degree().unwrap_or(0) as i64 - c.den().total_degree().unwrap_or(0) as i64;
        weights[split + k] = excess.max(1) as u16;
    }
    let mut gens = Vec::with_capacity(4);
    for (k, c) in m.comps.iter().enumerate() {
        let xk = MPoly::var(ring.clone(), &ring[split + k]).expect("image variable");
        gens.push(homogenize(&(&(&xk * &lift(c.den())) - &lift(c.num())), &weights));
    }
    if saturated {
        let d = dens.iter().fold(MPoly::one(param_vars()), |acc, x| &acc * x);
        let t = MPoly::var(ring.clone(), "_t").expect("saturation variable");
        gens.push(homogenize(&(&MPoly::one(ring.clone()) - &(&t * &lift(&d))), &weights));
    }
    System { gens, weights, split, saturated }
}

/// Eliminant terms over (x, y, z): among basis elements free of the
/// eliminated block, the one of least degree once h is set to 1. Terms are
/// returned in descending graded-lex order.
fn eliminant<C: Clone>(basis: &[Vec<(Vec<u32>, C)>], split: usize) -> Option<Vec<([u32; 3], C)>> {
    let mut best: Option<Vec<([u32; 3], C)>> = None;
    for g in basis.iter().filter(|g| g.iter().all(|(e, _)| e[..split].iter().all(|&x| x == 0))) {
        let mut terms: Vec<([u32; 3], C)> = g.iter().map(|(e, c)| ([e[split], e[split + 1], e[split + 2]], c.clone())).collect();
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let deg = |t: &[([u32; 3], C)]| t[0].0.iter().sum::<u32>();
        if best.as_ref().is_none_or(|b| deg(&terms) < deg(b)) {
            best = Some(terms);
        }
    }
    best
}

fn to_mpoly(terms: &[([u32; 3], Rational)], vars: &[String]) -> MPoly {
    MPoly::from_terms(vars.to_vec(), terms.iter().map(|(e, c)| (e.to_vec(), c.clone())))
}

pub struct Lifted {
    pub q: MPoly,
    pub primes_used: usize,
    pub basis_size: usize,
}

/// Exact engine: integer Buchberger on the homogenized system.
pub fn eliminate_integer(sys: &System, vars: &[String], budget: f64) -> Result<Lifted> {
    let basis = groebner_basis(&sys.gens, sys.split, &sys.weights, Some(budget))?;
    let raw: Vec<Vec<(Vec<u32>, Rational)>> =
        basis.iter().map(|g| g.terms().map(|(e, c)| (e.clone(), c.clone())).collect()).collect();
    let terms = eliminant(&raw, sys.split).ok_or(Error::NotFound(0))?;
    Ok(Lifted { q: to_mpoly(&terms, vars), primes_used: 0, basis_size: basis.len() })
}

/// Modular engine: the basis is computed modulo word-sized primes, the
/// eliminant (made monic on its graded-lex leading term) is combined by
/// Chinese remaindering and rational reconstruction, and a candidate is
/// accepted once it is stable under a fresh prime and vanishes exactly on
/// the map. Primes are grouped by eliminant support so that an unlucky
/// prime cannot contaminate the lift.
pub fn eliminate_modular(m: &ParametricMap3, sys: &System, vars: &[String], max_primes: usize, budget: f64) -> Result<Lifted> {
    let start = Instant::now();
    type Group = (Vec<BigInt>, BigInt, Option<Vec<Rational>>);
    let mut groups: HashMap<Vec<[u32; 3]>, Group> = HashMap::new();
    let mut used = 0;
    let mut basis_size;
    for p in primes() {
        let left = budget - start.elapsed().as_secs_f64();
        if left <= 0.0 {
            return Err(Error::BudgetExceeded(budget));
        }
        let basis = match groebner_basis_mod(&sys.gens, sys.split, &sys.weights, p, Some(left)) {
            Ok(b) => b,
            Err(Error::DivisionByZero) => continue,
            Err(e) => return Err(e),
        };
        used += 1;
        basis_size = basis.len();
        let Some(mut terms) = eliminant(&basis, sys.split) else { continue };
        let li = inv(terms[0].1, p);
        for t in &mut terms {
            t.1 = t.1 * li % p;
        }
        let support: Vec<[u32; 3]> = terms.iter().map(|t| t.0).collect();
        let group = groups.entry(support.clone()).or_insert_with(|| (vec![BigInt::zero(); terms.len()], BigInt::one(), None));
        if let Some(prev) = &group.2 {
            if prev.iter().zip(&terms).all(|(r, t)| rat_mod(r, p) == Some(t.1)) {
                let cand: Vec<([u32; 3], Rational)> = support.iter().copied().zip(prev.iter().cloned()).collect();
                let q = to_mpoly(&cand, vars);
                if substitution_witness(m, &q)?.is_none() {
                    return Ok(Lifted { q, primes_used: used, basis_size });
                }
            }
        }
        for (r, t) in group.0.iter_mut().zip(&terms) {
            *r = crt(r, &group.1, t.1, p);
        }
        group.1 *= p;
        group.2 = group.0.iter().map(|r| rat_recon(r, &group.1)).collect();
        if used >= max_primes {
            return Err(Error::SamplingDegenerate);
        }
    }
    unreachable!("prime supply exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenized_generators() {
        let m = ParametricMap3::parse(["u", "v", "u*v + 1"]).unwrap();
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let s = system(&m, &vars);
        assert!(!s.saturated);
        assert_eq!(s.weights, vec![1, 1, 1, 1, 2, 1]);
        assert_eq!(s.gens[2].to_string(), "-_u*_v - _h^2 + z");
    }

    #[test]
    fn saturation_generator() {
        let m = ParametricMap3::parse(["1/u", "v", "u"]).unwrap();
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let s = system(&m, &vars);
        assert!(s.saturated);
        assert_eq!(s.split, 3);
        assert_eq!(s.gens.len(), 4);
    }
}
