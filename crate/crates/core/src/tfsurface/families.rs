use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::function::{real_pow, Analytic, Elementary, ScalarFunction};
use super::TFSpec;
use crate::error::{Error, Result};
use crate::exactalg::{rat_to_f64, Rational};

/// Closed-form profile families.
///
/// * `minimal_tan_gv`: `g = v`, `f = (tan(B(C1·u + C2)) − A)/B`, minimal.
/// * `minimal_tan_fu`: `f = u`, `g = (tan(B(C1·v + C2)) − A)/B`, minimal.
/// * `flatK_f`: `g = v`, `f = C1`, flat.
/// * `constantK_f`: `g = v`, `f = [(B − C)(C1·u + C2)]^(B/(B−C)) − A`.
///   This solves `(A + Bf)f̈ = Cḟ²` only when `B = 1` or `A = 0`; the
///   general solution is `f = (K·[(B − C)(C1·u + C2)]^(B/(B−C)) − A)/B`
///   for any constant `K`.
/// * `constantK_g`: `f = u`, `g = p·(C1·v + C2)^(−C/(B−C)) − A/B` with
///   `p = (−1)^k (B−C)^(−k) (B^(−C/(B−C)) C^((2B−C)/(B−C)) − B^((B−2C)/(B−C)) C^k)/(BC)`,
///   `k = B/(B − C)`; the family exists only where this is real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "minimal_tan_gv")]
    MinimalTanGv,
    #[serde(rename = "minimal_tan_fu")]
    MinimalTanFu,
    #[serde(rename = "constantK_f")]
    ConstantKF,
    #[serde(rename = "constantK_g")]
    ConstantKG,
    #[serde(rename = "flatK_f")]
    FlatKF,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] =
        [FamilyId::MinimalTanGv, FamilyId::MinimalTanFu, FamilyId::ConstantKF, FamilyId::ConstantKG, FamilyId::FlatKF];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::MinimalTanGv => "minimal_tan_gv",
            FamilyId::MinimalTanFu => "minimal_tan_fu",
            FamilyId::ConstantKF => "constantK_f",
            FamilyId::ConstantKG => "constantK_g",
            FamilyId::FlatKF => "flatK_f",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyConstants {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl Default for FamilyConstants {
    fn default() -> Self {
        FamilyConstants {
            a: Rational::one(),
            b: Rational::one(),
            c: Rational::zero(),
            c1: Rational::one(),
            c2: Rational::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    pub id: FamilyId,
    pub constants: FamilyConstants,
    pub spec: TFSpec,
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Constraint(what.to_string()))
    }
}

fn tan_profile(k: &FamilyConstants) -> ScalarFunction {
    let (a, b) = (rat_to_f64(&k.a), rat_to_f64(&k.b));
    let (c1, c2) = (rat_to_f64(&k.c1), rat_to_f64(&k.c2));
    ScalarFunction::Analytic(Analytic::new(Elementary::Tan, 1.0 / b, b * c1, b * c2, -a / b))
}

fn pow_or_constraint(x: f64, e: &Rational) -> Result<f64> {
    real_pow(x, e).ok_or_else(|| Error::Constraint("g(v) is not real-valued for these constants".into()))
}

pub fn make_family(id: FamilyId, k: FamilyConstants) -> Result<SolutionFamily> {
    let (a, b, c) = (&k.a, &k.b, &k.c);
    let spec = match id {
        FamilyId::MinimalTanGv | FamilyId::MinimalTanFu => {
            require(!b.is_zero(), "B != 0")?;
            require(!k.c1.is_zero(), "C1 != 0")?;
            let tan = tan_profile(&k);
            if id == FamilyId::MinimalTanGv {
                TFSpec::new(a.clone(), b.clone(), tan, ScalarFunction::identity())?
            } else {
                TFSpec::new(a.clone(), b.clone(), ScalarFunction::identity(), tan)?
            }
        }
        FamilyId::FlatKF => {
            TFSpec::new(a.clone(), b.clone(), ScalarFunction::constant(k.c1.clone()), ScalarFunction::identity())?
        }
        FamilyId::ConstantKF => {
            require(b != c, "B != C")?;
            require(!b.is_zero(), "B != 0")?;
            require(!c.is_zero(), "C != 0")?;
            require(!k.c1.is_zero(), "C1 != 0")?;
            let bc = rat_to_f64(&(b - c));
            let e = b / (b - c);
            let f = Analytic::new(Elementary::Pow(e), 1.0, bc * rat_to_f64(&k.c1), bc * rat_to_f64(&k.c2), -rat_to_f64(a));
            TFSpec::new(a.clone(), b.clone(), ScalarFunction::Analytic(f), ScalarFunction::identity())?
        }
        FamilyId::ConstantKG => {
            require(b != c, "B != C")?;
            require(!b.is_zero(), "B != 0")?;
            require(!c.is_zero(), "C != 0")?;
            require(!k.c1.is_zero(), "C1 != 0")?;
            let bmc = b - c;
            let kk = b / &bmc;
            let e = -c / &bmc;
            let two = Rational::from_integer(2.into());
            let (bf, cf, bmcf) = (rat_to_f64(b), rat_to_f64(c), rat_to_f64(&bmc));
            let sign = pow_or_constraint(-1.0, &kk)?;
            let lead = pow_or_constraint(bmcf, &-kk.clone())?;
            let t1 = pow_or_constraint(bf, &e)? * pow_or_constraint(cf, &((&two * b - c) / &bmc))?;
            let t2 = pow_or_constraint(bf, &((b - &two * c) / &bmc))? * pow_or_constraint(cf, &kk)?;
            let p = sign * lead * (t1 - t2) / (bf * cf);
            let g = Analytic::new(Elementary::Pow(e), p, rat_to_f64(&k.c1), rat_to_f64(&k.c2), -rat_to_f64(a) / bf);
            TFSpec::new(a.clone(), b.clone(), ScalarFunction::identity(), ScalarFunction::Analytic(g))?
        }
    };
    Ok(SolutionFamily { id, constants: k, spec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfsurface::{gauss_condition_residual, minimality_residual, printed_minimality_residual};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn consts(a: Rational, b: Rational, c: Rational, c1: Rational, c2: Rational) -> FamilyConstants {
        FamilyConstants { a, b, c, c1, c2 }
    }

    #[test]
    fn tan_family_shape() {
        let fam = make_family(FamilyId::MinimalTanGv, FamilyConstants::default()).unwrap();
        for u in [-1.0, -0.3, 0.4, 1.2] {
            let want = f64::tan(u) - 1.0;
            assert!((fam.spec.f.value(u).unwrap() - want).abs() < 1e-14);
        }
        assert!(fam.spec.g.is_identity());
    }

    #[test]
    fn tan_families_are_minimal() {
        for id in [FamilyId::MinimalTanGv, FamilyId::MinimalTanFu] {
            let fam = make_family(id, consts(r(2, 1), r(-3, 2), r(0, 1), r(1, 2), r(1, 5))).unwrap();
            assert!(minimality_residual(&fam.spec).is_zero_within(1e-9));
            assert!(fam.spec.numeric_mean_curvature().below(1e-9));
            assert!(!printed_minimality_residual(&fam.spec).is_zero_within(1e-3));
        }
    }

    #[test]
    fn flat_family() {
        let fam = make_family(FamilyId::FlatKF, consts(r(1, 1), r(2, 1), r(0, 1), r(3, 1), r(0, 1))).unwrap();
        assert_eq!(fam.spec.f.value(0.7), Some(3.0));
        let rep = crate::verify::grid::evaluate_grid(&crate::surfcalc::Domain::default(), 9, 9, |u, v| {
            Some(fam.spec.point_geometry(u, v)?.k)
        });
        assert!(rep.below(1e-14));
    }

    #[test]
    fn constraints_are_named() {
        let bad = consts(r(1, 1), r(2, 1), r(2, 1), r(1, 1), r(0, 1));
        assert_eq!(make_family(FamilyId::ConstantKF, bad).unwrap_err(), Error::Constraint("B != C".into()));
        let bad = consts(r(1, 1), r(0, 1), r(2, 1), r(1, 1), r(0, 1));
        assert_eq!(make_family(FamilyId::MinimalTanGv, bad).unwrap_err(), Error::Constraint("B != 0".into()));
        // B = 3, C = 1: k = 3/2 and (−1)^k is not real.
        let complex = consts(r(1, 1), r(3, 1), r(1, 1), r(1, 1), r(3, 1));
        assert!(matches!(make_family(FamilyId::ConstantKG, complex), Err(Error::Constraint(_))));
    }

    #[test]
    fn constant_k_profiles() {
        // B = 1: the printed f solves its equation.
        let k = consts(r(2, 1), r(1, 1), r(1, 2), r(1, 1), r(3, 1));
        let fam = make_family(FamilyId::ConstantKF, k.clone()).unwrap();
        assert!(gauss_condition_residual(&fam.spec, &k.c).0.is_zero_within(1e-9));
        // A != 0, B != 1: it does not.
        let k = consts(r(2, 1), r(3, 1), r(1, 1), r(1, 1), r(3, 1));
        let fam = make_family(FamilyId::ConstantKF, k.clone()).unwrap();
        assert!(!gauss_condition_residual(&fam.spec, &k.c).0.is_zero_within(1e-3));
        // The rescaled profile (X^(B/(B−C)) − A)/B does.
        let Analytic { func, q, r: rr, .. } = match &fam.spec.f {
            ScalarFunction::Analytic(a) => a.clone(),
            _ => unreachable!(),
        };
        let fixed = ScalarFunction::Analytic(Analytic::new(func, 1.0 / 3.0, q, rr, -2.0 / 3.0));
        let spec = TFSpec::new(k.a.clone(), k.b.clone(), fixed, ScalarFunction::identity()).unwrap();
        assert!(gauss_condition_residual(&spec, &k.c).0.is_zero_within(1e-9));

        // The printed g solves its equation wherever it is real.
        let k = consts(r(1, 1), r(2, 1), r(1, 1), r(1, 1), r(3, 1));
        let fam = make_family(FamilyId::ConstantKG, k.clone()).unwrap();
        let (_, rg) = gauss_condition_residual(&fam.spec, &k.c);
        assert!(rg.is_zero_within(1e-9));
    }
}
