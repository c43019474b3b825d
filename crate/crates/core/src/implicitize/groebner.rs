use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{big_mod, inv};
use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Rational};

const MAXV: usize = 8;

type Exp = [u16; MAXV];

/// Block order: weighted grevlex on the first `split` variables, ties
/// broken by weighted grevlex on the rest.
#[derive(Clone, Copy, Debug)]
struct Order {
    n: usize,
    split: usize,
    w: Exp,
}

impl Order {
    fn grevlex(&self, a: &Exp, b: &Exp, lo: usize, hi: usize) -> Ordering {
        let da: u32 = (lo..hi).map(|i| a[i] as u32 * self.w[i] as u32).sum();
        let db: u32 = (lo..hi).map(|i| b[i] as u32 * self.w[i] as u32).sum();
        if da != db {
            return da.cmp(&db);
        }
        for i in (lo..hi).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        self.grevlex(a, b, 0, self.split).then_with(|| self.grevlex(a, b, self.split, self.n))
    }
}

/// Coefficient domain of the engine.
trait Coeffs {
    type C: Clone + PartialEq + std::fmt::Debug;
    fn is_zero(&self, x: &Self::C) -> bool;
    fn is_one(&self, x: &Self::C) -> bool;
    /// (a, b) with a·lf − b·lg = 0 and `a` as small as possible.
    fn cofactors(&self, lf: &Self::C, lg: &Self::C) -> (Self::C, Self::C);
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// a·x − b·y
    fn axmby(&self, a: Option<&Self::C>, x: &Self::C, b: &Self::C, y: &Self::C) -> Self::C;
    fn neg_mul(&self, b: &Self::C, y: &Self::C) -> Self::C;
    /// Divides out common content; `lead_first` fixes the sign/scale by the
    /// first coefficient.
    fn normalize(&self, parts: &mut [&mut [(Exp, Self::C)]], lead_first: bool);
    fn from_int(&self, x: &BigInt) -> Self::C;
}

struct Integers;

impl Coeffs for Integers {
    type C = BigInt;

    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }

    fn is_one(&self, x: &BigInt) -> bool {
        x.is_one()
    }

    fn cofactors(&self, lf: &BigInt, lg: &BigInt) -> (BigInt, BigInt) {
        let g = lf.gcd(lg);
        let (mut a, mut b) = (lg / &g, lf / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn axmby(&self, a: Option<&BigInt>, x: &BigInt, b: &BigInt, y: &BigInt) -> BigInt {
        match a {
            Some(a) => a * x - b * y,
            None => x - b * y,
        }
    }

    fn neg_mul(&self, b: &BigInt, y: &BigInt) -> BigInt {
        -(b * y)
    }

    fn normalize(&self, parts: &mut [&mut [(Exp, BigInt)]], lead_first: bool) {
        let mut g = BigInt::zero();
        'outer: for part in parts.iter() {
            for (_, c) in part.iter() {
                g = g.gcd(c);
                if g.is_one() {
                    break 'outer;
                }
            }
        }
        if g.is_zero() {
            return;
        }
        if lead_first && parts.iter().find_map(|p| p.first()).is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            return;
        }
        for part in parts.iter_mut() {
            for (_, c) in part.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn from_int(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
}

struct ModP(u64);

impl Coeffs for ModP {
    type C = u64;

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn is_one(&self, x: &u64) -> bool {
        *x == 1
    }

    fn cofactors(&self, lf: &u64, lg: &u64) -> (u64, u64) {
        (1, lf * inv(*lg, self.0) % self.0)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }

    fn axmby(&self, a: Option<&u64>, x: &u64, b: &u64, y: &u64) -> u64 {
        let p = self.0;
        let ax = a.map_or(*x, |a| a * x % p);
        (ax + p - b * y % p) % p
    }

    fn neg_mul(&self, b: &u64, y: &u64) -> u64 {
        (self.0 - b * y % self.0) % self.0
    }

    fn normalize(&self, parts: &mut [&mut [(Exp, u64)]], lead_first: bool) {
        if !lead_first {
            return;
        }
        let Some(l) = parts.iter().find_map(|p| p.first()).map(|(_, c)| *c) else {
            return;
        };
        let li = inv(l, self.0);
        for part in parts.iter_mut() {
            for (_, c) in part.iter_mut() {
                *c = *c * li % self.0;
            }
        }
    }

    fn from_int(&self, x: &BigInt) -> u64 {
        big_mod(x, self.0)
    }
}

type Terms<C> = Vec<(Exp, C)>;

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i] - b[i])
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i] + b[i])
}

fn coprime(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

struct Engine<'k, K: Coeffs> {
    k: &'k K,
    ord: Order,
    polys: Vec<Terms<K::C>>,
    sugar: Vec<u32>,
    weights: Exp,
    active: Vec<bool>,
    deadline: Option<(Instant, f64)>,
}

impl<K: Coeffs> Engine<'_, K> {
    fn wdeg(&self, e: &Exp) -> u32 {
        e.iter().zip(&self.weights).map(|(&a, &w)| a as u32 * w as u32).sum()
    }

    fn poly_wdeg(&self, f: &[(Exp, K::C)]) -> u32 {
        f.iter().map(|(e, _)| self.wdeg(e)).max().unwrap_or(0)
    }

    fn check_time(&self) -> Result<()> {
        if let Some((start, budget)) = self.deadline {
            if start.elapsed().as_secs_f64() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
        Ok(())
    }

    /// a·f − b·x^shift·g, for term slices sorted descending.
    fn combine(&self, f: &[(Exp, K::C)], a: &K::C, b: &K::C, shift: &Exp, g: &[(Exp, K::C)]) -> Terms<K::C> {
        let k = self.k;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let a = (!k.is_one(a)).then_some(a);
        while i < f.len() || j < g.len() {
            let gj = (j < g.len()).then(|| add_exp(&g[j].0, shift));
            let c = match (i < f.len(), &gj) {
                (true, Some(e)) => self.ord.cmp(&f[i].0, e),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match c {
                Ordering::Greater => {
                    let (e, x) = &f[i];
                    out.push((*e, a.map_or_else(|| x.clone(), |a| k.mul(a, x))));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gj.expect("term present"), k.neg_mul(b, &g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = k.axmby(a, &f[i].1, b, &g[j].1);
                    if !k.is_zero(&v) {
                        out.push((f[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn find_reducer(&self, e: &Exp) -> Option<usize> {
        (0..self.polys.len()).find(|&k| self.active[k] && divides(&self.polys[k][0].0, e))
    }

    /// Full reduction modulo the active basis, normalized. Tracks the
    /// sugar degree of the result.
    fn reduce(&self, mut f: Terms<K::C>, sugar: &mut u32) -> Result<Terms<K::C>> {
        let mut done: Terms<K::C> = Vec::new();
        let mut pos = 0;
        let mut steps = 0usize;
        while pos < f.len() {
            let e = f[pos].0;
            match self.find_reducer(&e) {
                Some(r) => {
                    let g = &self.polys[r];
                    let (a, b) = self.k.cofactors(&f[pos].1, &g[0].1);
                    let shift = sub_exp(&e, &g[0].0);
                    *sugar = (*sugar).max(self.sugar[r] + self.wdeg(&shift));
                    f = self.combine(&f[pos + 1..], &a, &b, &shift, &g[1..]);
                    pos = 0;
                    if !self.k.is_one(&a) {
                        for (_, c) in &mut done {
                            *c = self.k.mul(&a, c);
                        }
                    }
                    steps += 1;
                    if steps % 16 == 0 {
                        self.k.normalize(&mut [&mut done[..], &mut f[..]], false);
                        self.check_time()?;
                    }
                }
                None => {
                    done.push(f[pos].clone());
                    pos += 1;
                }
            }
        }
        self.k.normalize(&mut [&mut done[..]], true);
        Ok(done)
    }

    fn pair_sugar(&self, i: usize, j: usize, l: &Exp) -> u32 {
        let si = self.sugar[i] + self.wdeg(&sub_exp(l, &self.polys[i][0].0));
        let sj = self.sugar[j] + self.wdeg(&sub_exp(l, &self.polys[j][0].0));
        si.max(sj)
    }

    /// a·x^(l−lt f)·f − b·x^(l−lt g)·g
    fn spoly(&self, i: usize, j: usize) -> Terms<K::C> {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let l = lcm_exp(&f[0].0, &g[0].0);
        let (a, b) = self.k.cofactors(&f[0].1, &g[0].1);
        let sf = sub_exp(&l, &f[0].0);
        let lf: Terms<K::C> = f[1..].iter().map(|(e, c)| (add_exp(e, &sf), self.k.mul(c, &a))).collect();
        let one = self.k.from_int(&BigInt::one());
        self.combine(&lf, &one, &b, &sub_exp(&l, &g[0].0), &g[1..])
    }

    fn push(&mut self, h: Terms<K::C>, sugar: u32, pairs: &mut Vec<Pair>) {
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let k = self.polys.len() - 1;
        self.update(pairs, k);
    }

    /// Gebauer–Möller update after adding the basis element at index `h`.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: usize) {
        let lh = self.polys[h][0].0;
        let mut c: Vec<(usize, Exp, bool)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, lcm_exp(&lh, &self.polys[g][0].0), coprime(&lh, &self.polys[g][0].0)))
            .collect();
        let mut d: Vec<(usize, Exp, bool)> = Vec::new();
        while !c.is_empty() {
            let (g, l, cp) = c.remove(0);
            let covered = |x: &(usize, Exp, bool)| divides(&x.1, &l);
            if cp || (!c.iter().any(covered) && !d.iter().any(covered)) {
                d.push((g, l, cp));
            }
        }
        pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm_exp(&self.polys[p.i][0].0, &lh) != p.lcm
                && lcm_exp(&lh, &self.polys[p.j][0].0) != p.lcm)
        });
        let fresh: Vec<Pair> =
            d.into_iter().filter(|x| !x.2).map(|(g, l, _)| Pair { i: g, j: h, lcm: l, sugar: self.pair_sugar(g, h, &l) }).collect();
        pairs.extend(fresh);
        for g in 0..h {
            if self.active[g] && divides(&lh, &self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    fn run(&mut self, input: Vec<Terms<K::C>>) -> Result<Vec<Terms<K::C>>> {
        let mut pairs: Vec<Pair> = Vec::new();
        let mut input = input;
        input.retain(|p| !p.is_empty());
        input.sort_by(|a, b| self.ord.cmp(&a[0].0, &b[0].0));
        for p in input {
            let mut sugar = self.poly_wdeg(&p);
            let h = self.reduce(p, &mut sugar)?;
            if !h.is_empty() {
                self.push(h, sugar, &mut pairs);
            }
        }
        while !pairs.is_empty() {
            self.check_time()?;
            let ord = self.ord;
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let key = |p: &Pair| (p.sugar, p.j, p.i);
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.sugar.cmp(&pb.sugar).then(ord.cmp(&pa.lcm, &pb.lcm)).then(key(pa).cmp(&key(pb)))
                })
                .expect("nonempty");
            let pr = pairs.swap_remove(best);
            let mut sugar = pr.sugar;
            let h = self.reduce(self.spoly(pr.i, pr.j), &mut sugar)?;
            if h.is_empty() {
                continue;
            }
            if h.len() == 1 && h[0].0.iter().all(|&e| e == 0) {
                return Ok(vec![h]);
            }
            self.push(h, sugar, &mut pairs);
        }
        let mut out: Vec<Terms<K::C>> =
            (0..self.polys.len()).filter(|&k| self.active[k]).map(|k| self.polys[k].clone()).collect();
        out.sort_by(|a, b| self.ord.cmp(&a[0].0, &b[0].0));
        Ok(out)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

fn to_terms<K: Coeffs>(k: &K, p: &MPoly, ord: &Order) -> Terms<K::C> {
    let l = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut terms: Terms<K::C> = p
        .terms()
        .map(|(m, c)| {
            let mut e = [0u16; MAXV];
            for (i, &x) in m.iter().enumerate() {
                e[i] = x as u16;
            }
            (e, k.from_int(&(c.numer() * (&l / c.denom()))))
        })
        .filter(|(_, c)| !k.is_zero(c))
        .collect();
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    k.normalize(&mut [&mut terms[..]], true);
    terms
}

fn weights(w: &[u16]) -> Exp {
    std::array::from_fn(|i| w.get(i).copied().unwrap_or(1))
}

fn check_input(gens: &[MPoly]) -> Result<Vec<String>> {
    let vars = gens.first().map(|g| g.vars().to_vec()).unwrap_or_default();
    if vars.len() > MAXV {
        return Err(Error::Config(format!("at most {MAXV} variables in elimination")));
    }
    if gens.iter().any(|g| g.vars() != vars.as_slice()) {
        return Err(Error::MixedBases);
    }
    if gens.iter().flat_map(|g| g.terms()).any(|(m, _)| m.iter().any(|&e| e > u16::MAX as u32 / 4)) {
        return Err(Error::GradeOverflow(i32::MAX));
    }
    Ok(vars)
}

/// Groebner basis of the ideal generated by `gens` for the block order
/// that puts the first `split` variables above the rest (weighted grevlex
/// inside each block, `weights_in` giving per-variable weights that default
/// to 1). Buchberger with sugar selection and the Gebauer–Möller criteria;
/// coefficients stay integral.
///
/// The result is a minimal basis, each element primitive with positive
/// leading coefficient, sorted by leading monomial ascending.
pub fn groebner_basis(gens: &[MPoly], split: usize, weights_in: &[u16], budget_seconds: Option<f64>) -> Result<Vec<MPoly>> {
    let vars = check_input(gens)?;
    let ord = Order { n: vars.len(), split, w: weights(weights_in) };
    let k = Integers;
    let mut eng = Engine {
        k: &k,
        ord,
        polys: Vec::new(),
        sugar: Vec::new(),
        weights: weights(weights_in),
        active: Vec::new(),
        deadline: budget_seconds.map(|b| (Instant::now(), b)),
    };
    let input = gens.iter().map(|g| to_terms(&k, g, &ord)).collect();
    let basis = eng.run(input)?;
    let n = vars.len();
    Ok(basis
        .iter()
        .map(|p| {
            MPoly::from_terms(
                vars.clone(),
                p.iter().map(|(e, c)| (e[..n].iter().map(|&x| x as u32).collect(), Rational::from_integer(c.clone()))),
            )
        })
        .collect())
}

/// The same basis computation over Z/p, each element monic. Exponent
/// vectors are returned with `u32` entries alongside residues.
pub fn groebner_basis_mod(
    gens: &[MPoly],
    split: usize,
    weights_in: &[u16],
    p: u64,
    budget_seconds: Option<f64>,
) -> Result<Vec<Vec<(Vec<u32>, u64)>>> {
    let vars = check_input(gens)?;
    let ord = Order { n: vars.len(), split, w: weights(weights_in) };
    let k = ModP(p);
    for g in gens {
        if g.terms().any(|(_, c)| big_mod(c.denom(), p) == 0) {
            return Err(Error::DivisionByZero);
        }
    }
    let mut eng = Engine {
        k: &k,
        ord,
        polys: Vec::new(),
        sugar: Vec::new(),
        weights: weights(weights_in),
        active: Vec::new(),
        deadline: budget_seconds.map(|b| (Instant::now(), b)),
    };
    let input = gens.iter().map(|g| to_terms(&k, g, &ord)).collect();
    let basis = eng.run(input)?;
    let n = vars.len();
    Ok(basis.iter().map(|t| t.iter().map(|(e, c)| (e[..n].iter().map(|&x| x as u32).collect(), *c)).collect()).collect())
}
