use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::Rational;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        RationalMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact basis of the right nullspace.
    ///
    /// Rows are scaled to integers and reduced by fraction-free (Bareiss)
    /// elimination with first-nonzero pivoting. One basis vector per free
    /// column, with a 1 in that column and 0 in the other free columns.
    pub fn rational_kernel(&self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| integer_row(&self.data[r * cols..(r + 1) * cols]))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let (top, rest) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pv = pivot_row[c].clone();
            let update = |row: &mut Vec<BigInt>| {
                let f = row[c].clone();
                for j in c..cols {
                    let v = (&pv * &row[j] - &f * &pivot_row[j]).div_floor(&prev);
                    row[j] = v;
                }
            };
            if rest.len() * (cols - c) > 4096 {
                rest.par_iter_mut().for_each(update);
            } else {
                rest.iter_mut().for_each(update);
            }
            prev = pv;
            pivots.push(c);
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); cols];
                x[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    let mut s = Rational::zero();
                    for j in pc + 1..cols {
                        if !m[r][j].is_zero() && !x[j].is_zero() {
                            s += Rational::from_integer(m[r][j].clone()) * &x[j];
                        }
                    }
                    x[pc] = -s / Rational::from_integer(m[r][pc].clone());
                }
                x
            })
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}
