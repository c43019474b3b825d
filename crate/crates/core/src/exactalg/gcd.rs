//! Multivariate gcd over the rationals. A heuristic integer-evaluation gcd
//! is tried first; when it gives up, a recursive content/primitive-part
//! decomposition with a subresultant pseudo-remainder sequence in the main
//! variable decides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Rational};

/// A greatest common divisor of `p` and `q`, in canonical form (primitive
/// integer coefficients, positive leading coefficient). `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &MPoly, q: &MPoly) -> MPoly {
    let vars = MPoly::union_vars(p.vars(), q.vars());
    let p = p.with_vars(&vars).expect("superset");
    let q = q.with_vars(&vars).expect("superset");
    if p.is_zero() || q.is_zero() || p.is_constant() || q.is_constant() {
        return gcd_rec(&p, &q).canonical();
    }
    let (pc, qc) = (p.canonical(), q.canonical());
    if let Some(g) = heu_gcd(&pc, &qc, 0) {
        return g.canonical();
    }
    gcd_rec(&p, &q).canonical()
}

fn max_norm(p: &MPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

/// `p` with variable `k` set to the integer `xi`.
fn eval_var(p: &MPoly, k: usize, xi: &BigInt) -> MPoly {
    let deg = p.degree_in(k) as usize;
    let mut pows = Vec::with_capacity(deg + 1);
    pows.push(BigInt::one());
    for i in 0..deg {
        let next = &pows[i] * xi;
        pows.push(next);
    }
    MPoly::from_terms(
        p.vars().to_vec(),
        p.terms().map(|(m, c)| {
            let mut m = m.clone();
            let e = m[k] as usize;
            m[k] = 0;
            (m, c * Rational::from_integer(pows[e].clone()))
        }),
    )
}

/// Inverse of [`eval_var`]: expands every integer coefficient of `g` in the
/// symmetric base-`xi` representation, digits becoming powers of variable `k`.
fn lift_var(g: &MPoly, k: usize, xi: &BigInt) -> MPoly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in g.terms() {
        let mut c = c.numer().clone();
        let mut i = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut mm = m.clone();
                mm[k] += i;
                terms.push((mm, Rational::from_integer(d.clone())));
            }
            c = (c - d) / xi;
            i += 1;
        }
    }
    MPoly::from_terms(g.vars().to_vec(), terms)
}

/// Heuristic gcd of two primitive integer polynomials: evaluate one
/// variable at a large integer, recurse, and lift the result back by its
/// base-ξ digits. Any answer is confirmed by exact division; `None` means
/// the caller must fall back to the subresultant algorithm.
fn heu_gcd(a: &MPoly, b: &MPoly, depth: usize) -> Option<MPoly> {
    let vars = a.vars().to_vec();
    if a.is_constant() || b.is_constant() {
        return Some(MPoly::one(vars));
    }
    if depth > 8 {
        return None;
    }
    let k = (0..a.nvars()).find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)?;
    let na = max_norm(a);
    let nb = max_norm(b);
    let mut xi = BigInt::from(2) * na.min(nb) + BigInt::from(29);
    for _ in 0..4 {
        let ea = eval_var(a, k, &xi);
        let eb = eval_var(b, k, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let ga = ea.primitive_part();
            let gb = eb.primitive_part();
            let cont = ea.content().numer().gcd(eb.content().numer());
            if let Some(gamma) = heu_gcd(&ga, &gb, depth + 1) {
                let gamma = gamma.scale(&Rational::from_integer(cont));
                let g = lift_var(&gamma, k, &xi).primitive_part();
                if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

fn main_var(p: &MPoly, q: &MPoly) -> Option<usize> {
    (0..p.nvars()).find(|&i| p.degree_in(i) > 0 || q.degree_in(i) > 0)
}

fn gcd_rec(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one(p.vars().to_vec());
    }
    // Cheap exits when one operand divides the other.
    if p.num_terms() >= q.num_terms() {
        if p.div_exact(q).is_some() {
            return q.canonical();
        }
    } else if q.div_exact(p).is_some() {
        return p.canonical();
    }
    let k = main_var(p, q).expect("non-constant");
    if p.degree_in(k) == 0 {
        return gcd_rec(p, &content_in(q, k));
    }
    if q.degree_in(k) == 0 {
        return gcd_rec(&content_in(p, k), q);
    }
    let cp = content_in(p, k);
    let cq = content_in(q, k);
    let c = gcd_rec(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let g = subresultant_gcd(&pp, &qq, k);
    let g = primitive_in(&g, k);
    (&c * &g).canonical()
}

/// Gcd of the coefficients of `p` viewed as univariate in variable `k`.
pub(crate) fn content_in(p: &MPoly, k: usize) -> MPoly {
    let mut coeffs: Vec<MPoly> = p.to_univariate(k).into_iter().filter(|c| !c.is_zero()).collect();
    // Small coefficients first tends to shrink the running gcd quickly.
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = MPoly::zero(p.vars().to_vec());
    for c in coeffs {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MPoly::one(p.vars().to_vec());
        }
    }
    g
}

fn primitive_in(p: &MPoly, k: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, k);
    p.div_exact(&c).expect("content divides")
}

fn degree(c: &[MPoly]) -> usize {
    c.len() - 1
}

fn subresultant_gcd(p: &MPoly, q: &MPoly, k: usize) -> MPoly {
    let vars = p.vars().to_vec();
    let (mut a, mut b) = {
        let pa = p.to_univariate(k);
        let qb = q.to_univariate(k);
        if pa.len() >= qb.len() {
            (pa, qb)
        } else {
            (qb, pa)
        }
    };
    let mut g = MPoly::one(vars.clone());
    let mut h = MPoly::one(vars.clone());
    loop {
        let d = degree(&a) - degree(&b);
        let r = prem_full(&a, &b);
        if r.is_empty() {
            return MPoly::from_univariate(&b, k, vars);
        }
        if r.len() == 1 {
            return MPoly::one(vars);
        }
        let divisor = &g * &h.pow(d as u32);
        let r: Vec<MPoly> = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = r;
        g = a[degree(&a)].clone();
        h = if d == 0 {
            h
        } else {
            let num = g.pow(d as u32);
            let den = h.pow(d as u32 - 1);
            num.div_exact(&den).expect("subresultant h update is exact")
        };
    }
}

/// Classical pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
fn prem_full(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = degree(b);
    let da = degree(a);
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    let mut steps = 0usize;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps += 1;
    }
    let total = da + 1 - db;
    if steps < total && !r.is_empty() {
        let extra = lb.pow((total - steps) as u32);
        for c in r.iter_mut() {
            *c = &*c * &extra;
        }
    }
    r
}

/// Least common multiple, canonical.
pub fn poly_lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero(MPoly::union_vars(p.vars(), q.vars()));
    }
    let g = poly_gcd(p, q);
    (p * &q.div_exact(&g).expect("gcd divides")).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["u", "v", "x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(poly_gcd(&p("x^2-y^2"), &p("x+y")), p("x+y"));
        let zero = MPoly::zero(p("x").vars().to_vec());
        assert_eq!(poly_gcd(&p("-6*x^2 - 4*x"), &zero), p("3*x^2 + 2*x"));
        assert_eq!(poly_gcd(&p("(u+1)^3*(v+1)"), &p("(u+1)*(v+1)^2")), p("(u+1)*(v+1)"));
        let z = MPoly::zero(p("x").vars().to_vec());
        assert!(poly_gcd(&z, &z).is_zero());
    }

    #[test]
    fn coprime_and_nontrivial() {
        assert!(poly_gcd(&p("x^2+y^2+1"), &p("x*y+3")).is_one());
        let a = p("(x*y - u^2 + 3)*(x + v)^2*(u - 2*y)");
        let b = p("(x*y - u^2 + 3)*(u - 2*y)^3*(v*x + 1)");
        assert_eq!(poly_gcd(&a, &b), p("(x*y - u^2 + 3)*(2*y - u)").canonical());
    }

    #[test]
    fn rational_coefficients() {
        let a = p("(x/2 + y/3)*(u - 1)");
        let b = p("(3*x + 2*y)*(u + 1)");
        assert_eq!(poly_gcd(&a, &b), p("3*x + 2*y"));
    }

    #[test]
    fn lcm() {
        assert_eq!(poly_lcm(&p("x*(x+1)"), &p("(x+1)*y")), p("x*y*(x+1)"));
    }

    fn random_poly(rng: &mut rand_chacha::ChaCha8Rng, deg: u32) -> MPoly {
        use rand::Rng;
        let vars = p("x").vars().to_vec();
        let n = vars.len();
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..5) {
            let mut m = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=deg) {
                m[rng.gen_range(0..n)] += 1;
            }
            terms.push((m, Rational::from_integer(rng.gen_range(-9i64..=9).into())));
        }
        MPoly::from_terms(vars, terms)
    }

    #[test]
    fn heuristic_agrees_with_subresultant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let g = random_poly(&mut rng, 3);
            let a = &random_poly(&mut rng, 3) * &g;
            let b = &random_poly(&mut rng, 3) * &g;
            let slow = gcd_rec(&a, &b).canonical();
            assert_eq!(poly_gcd(&a, &b), slow);
            if !g.is_zero() && !a.is_zero() {
                assert!(slow.div_exact(&g.canonical()).is_some() || g.is_constant());
            }
        }
    }
}
