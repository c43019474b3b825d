use rayon::prelude::*;
use serde::Serialize;

use crate::surfcalc::Domain;

/// Outcome of evaluating a scalar function over a parameter grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub nu: usize,
    pub nv: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub max_abs: f64,
    /// Parameter point where `max_abs` was attained.
    pub argmax: Option<(f64, f64)>,
}

impl GridReport {
    pub fn below(&self, tol: f64) -> bool {
        self.evaluated > 0 && self.max_abs < tol
    }
}

/// Evaluates `f` on the `nu × nv` grid over `domain`. `None` marks a point
/// to skip (near a singularity); a non-finite value counts as infinite.
pub fn evaluate_grid<F>(domain: &Domain, nu: usize, nv: usize, f: F) -> GridReport
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let pts = domain.grid_f64(nu, nv);
    let vals: Vec<Option<f64>> = pts.par_iter().map(|&(u, v)| f(u, v)).collect();
    let mut rep = GridReport { nu, nv, evaluated: 0, skipped: 0, max_abs: 0.0, argmax: None };
    for (pt, val) in pts.iter().zip(vals) {
        match val {
            None => rep.skipped += 1,
            Some(x) => {
                rep.evaluated += 1;
                let a = if x.is_finite() { x.abs() } else { f64::INFINITY };
                if rep.argmax.is_none() || a > rep.max_abs {
                    rep.max_abs = a;
                    rep.argmax = Some(*pt);
                }
            }
        }
    }
    rep
}
