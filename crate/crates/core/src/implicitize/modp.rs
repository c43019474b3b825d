use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::Rational;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below 2^31, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// `None` when p divides the denominator.
pub fn rat_mod(x: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(big_mod(x.numer(), p) * inv(d, p) % p)
}

/// Right kernel of a matrix over Z/p, reduced to echelon form.
///
/// `pivots` are the pivot columns in increasing order. Each basis vector
/// belongs to one free column, holding 1 there and 0 in the other free
/// columns, so the basis is unique for a given kernel.
pub struct ModKernel {
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<u64>>,
}

pub fn kernel_mod(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> ModKernel {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(k) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, k);
        let iv = inv(rows[rank][c], p);
        for x in rows[rank][c..].iter_mut() {
            *x = *x * iv % p;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = (*x + f * y) % p;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    // back substitution to reduced form
    for r in (0..rank).rev() {
        let c = pivots[r];
        let (top, rest) = rows.split_at_mut(r);
        let prow = &rest[0];
        for row in top.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = (*x + f * y) % p;
            }
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| pivots.binary_search(c).is_err()).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect();
    ModKernel { pivots, free, basis }
}

/// Combines residues `r mod m` and `s mod p` into a residue mod `m·p`.
pub fn crt(r: &BigInt, m: &BigInt, s: u64, p: u64) -> BigInt {
    let rp = big_mod(r, p);
    let mp = big_mod(m, p);
    let t = ((s + p - rp) % p) * inv(mp, p) % p;
    r + m * BigInt::from(t)
}

/// Rational reconstruction: the fraction n/d with |n|, d ≤ sqrt(m/2) and
/// n ≡ a·d (mod m), if one exists.
pub fn rat_recon(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if (&r1 - a * &t1).mod_floor(m) != BigInt::zero() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != BigInt::one() {
        return None;
    }
    Some(Rational::new(n, d))
}
