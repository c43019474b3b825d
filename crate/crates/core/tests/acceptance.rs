//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lbsurf::builtins::{self, Builtin};
use lbsurf::exactalg::{parse_poly, MPoly, RadExpr, RatFun, Rational};
use lbsurf::implicitize::{
    class_of, implicitize_groebner, implicitize_interpolation, EliminationConfig, ImplicitSurface, Method,
    ParametricMap3,
};
use lbsurf::surfcalc::{gaussian_curvature, laplace_beltrami_I, mean_curvature, tangent_plane, SurfacePatch};
use lbsurf::tfsurface::{make_family, make_tf_patch, FamilyConstants, FamilyId, ScalarFunction, TFSpec};
use lbsurf::verify::{lb_identity_check, printed_result_comparison, substitution_check, Status};

const IMPLICIT_BUDGET: Duration = Duration::from_secs(60);
const CLASS_BUDGET_SECONDS: f64 = 1800.0;
const AGREEMENT_BUDGET: Duration = Duration::from_secs(5);
const H_TOL: f64 = 1e-9;
const PRINTED_FORM_MIN_RESIDUAL: f64 = 1e-3;
const GRID: usize = 21;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn uv() -> Vec<String> {
    vec!["u".into(), "v".into()]
}

fn xyz(s: &str) -> MPoly {
    parse_poly(s, &["x", "y", "z"]).unwrap()
}

fn random_uv_poly(rng: &mut ChaCha8Rng, deg: u32) -> MPoly {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for i in 0..=d {
            terms.push((vec![i, d - i], r(rng.gen_range(-3..=3))));
        }
    }
    MPoly::from_terms(uv(), terms)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn both_methods(m: &ParametricMap3) -> Result<[(ImplicitSurface, Duration); 2], String> {
    let (g, tg) = timed(|| implicitize_groebner(m, ["x", "y", "z"], &EliminationConfig::default()));
    let (i, ti) = timed(|| implicitize_interpolation(m, ["x", "y", "z"], &EliminationConfig::interpolation()));
    Ok([(g.map_err(|e| format!("groebner: {e}"))?, tg), (i.map_err(|e| format!("interpolation: {e}"))?, ti)])
}

fn implicit_criterion(b: Builtin, expected: &str, degree: u32) -> (Outcome, Option<MPoly>) {
    let expected = xyz(expected);
    let m = b.map();
    match both_methods(&m) {
        Err(e) => (outcome(false, e), None),
        Ok([(g, tg), (i, ti)]) => {
            let ok = g.q == expected && i.q == expected && g.total_degree == degree && i.total_degree == degree;
            let fast = tg < IMPLICIT_BUDGET && ti < IMPLICIT_BUDGET;
            let detail = format!(
                "groebner {} (deg {}, {:.2?}), interpolation {} (deg {}, {:.2?})",
                if g.q == expected { "matches" } else { "differs" },
                g.total_degree,
                tg,
                if i.q == expected { "matches" } else { "differs" },
                i.total_degree,
                ti
            );
            (outcome(ok && fast, detail), Some(g.q))
        }
    }
}

fn criterion_1() -> Outcome {
    implicit_criterion(Builtin::PaperDeltaI, builtins::Q_DELTA_I, 6).0
}

fn criterion_2() -> Outcome {
    let (mut o, got) = implicit_criterion(Builtin::PaperDeltaIII, builtins::Q_DELTA_III, 4);
    if let Some(got) = got {
        let identity = got == &xyz("(x^2 + y^2 + z^2)^2") - &xyz("2*x*y*z");
        let subst = substitution_check(&Builtin::PaperDeltaIII.map(), &got).status == Status::ExactPass;
        o.pass &= identity && subst;
        o.detail += &format!("; (x²+y²+z²)² − 2xyz identity {identity}; substitution exact {subst}");
    }
    o
}

fn class_criterion(b: Builtin, class: u32, leading: &[([u32; 3], i64)], lower: usize) -> Outcome {
    let cfg = EliminationConfig { budget_seconds: CLASS_BUDGET_SECONDS, ..EliminationConfig::interpolation() };
    let (res, t) = timed(|| class_of(&b.patch(), &cfg));
    match res {
        Err(e) => outcome(false, format!("class computation failed: {e}")),
        Ok((d, s)) => {
            let ratio = builtins::proportional_on(&s.q, leading);
            let detail = format!(
                "class {d} (expected {class}); leading ratio {}; {} top-degree terms; {} lower-degree terms (published {lower}); {:.2?}",
                ratio.as_ref().map_or("none".to_string(), |r| r.to_string()),
                s.leading_form().num_terms(),
                s.lower_term_count(),
                t
            );
            outcome(d == class && ratio.is_some(), detail)
        }
    }
}

fn criterion_3() -> Outcome {
    class_criterion(Builtin::PaperDeltaI, builtins::CLASS_DELTA_I, &builtins::LEADING_DELTA_I, builtins::LOWER_TERMS_DELTA_I)
}

fn criterion_4() -> Outcome {
    class_criterion(
        Builtin::PaperDeltaIII,
        builtins::CLASS_DELTA_III,
        &builtins::LEADING_DELTA_III,
        builtins::LOWER_TERMS_DELTA_III,
    )
}

fn criterion_5() -> Outcome {
    let t = match tangent_plane(&Builtin::PaperDeltaI.patch()) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("tangent plane failed: {e}")),
    };
    let fixed = builtins::parse_ratfuns(&builtins::tangential_delta_i_corrected()).unwrap();
    let printed = builtins::parse_ratfuns(&builtins::tangential_delta_i_printed()).unwrap();
    let ab = t.a.equals(&fixed[0]) && t.b.equals(&fixed[1]);
    let c_fixed = t.c.equals(&fixed[2]);
    let c_printed = t.c.equals(&printed[2]);
    outcome(
        ab && c_fixed,
        format!("a, b match {ab}; c matches with denominator 6(u+1)(v+1)α {c_fixed}, with 6(v+1)(v+1)α {c_printed}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (u, v) = (MPoly::var(uv(), "u").unwrap(), MPoly::var(uv(), "v").unwrap());
    let mut failures = 0;
    for _ in 0..50 {
        let z = random_uv_poly(&mut rng, 3);
        let p = SurfacePatch::from_polys([u.clone(), v.clone(), z]).unwrap();
        if !lb_identity_check(&p).passed() {
            failures += 1;
        }
    }
    let s = Builtin::PaperS.patch();
    let lb = laplace_beltrami_I(&s).unwrap();
    let matches_iii = lb.same_as(&Builtin::PaperDeltaIII.patch());
    let cmp = printed_result_comparison(&lb, &Builtin::PaperDeltaI.patch());
    let documented = cmp.status == Status::Fail && cmp.witness.is_some() && cmp.notes.iter().any(|n| n == "not parallel");
    let witness = cmp.witness.as_ref().map_or("none".to_string(), |w| format!("(u, v) = ({}, {}), value {}", w.u, w.v, w.value));
    outcome(
        failures == 0 && matches_iii && documented,
        format!(
            "{}/50 random patches satisfy the identities; Δ^I S equals paper-deltaIII {matches_iii}; against paper-deltaI not parallel at {witness}",
            50 - failures
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut failures = 0;
    while checked < 100 {
        let coeffs = |rng: &mut ChaCha8Rng| (0..4).map(|_| r(rng.gen_range(-3..=3))).collect::<Vec<_>>();
        let (f, g) = (ScalarFunction::from_coeffs(&coeffs(&mut rng)), ScalarFunction::from_coeffs(&coeffs(&mut rng)));
        let Ok(spec) = TFSpec::new(r(rng.gen_range(-3..=3)), r(rng.gen_range(-3..=3)), f, g) else { continue };
        checked += 1;
        let ok = (|| -> lbsurf::Result<bool> {
            let patch = make_tf_patch(&spec)?;
            let w = spec.w_poly()?;
            let h = mean_curvature(&patch)?;
            let two_w32 = RadExpr::graded(h.base().clone(), RatFun::constant(uv(), r(2)), 3)?;
            let hn = h.mul(&two_w32)?.to_ratfun()?.as_poly();
            let kn = gaussian_curvature(&patch)?.to_ratfun()?.mul_poly(&(&w * &w)).as_poly();
            Ok(hn == Some(spec.minimality_numerator()?) && kn == Some(spec.gauss_numerator()?))
        })();
        if !matches!(ok, Ok(true)) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{}/100 specs: H·2W^(3/2) and K·W² equal the closed-form numerators", 100 - failures))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let bs = [q(-2, 1), q(-1, 1), q(1, 2), q(1, 1), q(2, 1)];
    let c1s = [q(-1, 1), q(1, 2), q(1, 1), q(3, 2)];
    let c2s = [q(-1, 2), q(0, 1), q(1, 3), q(1, 1)];
    let mut worst_h: f64 = 0.0;
    let mut min_printed = f64::INFINITY;
    let mut pass = true;
    for i in 0..5 {
        let k = FamilyConstants {
            a: r(rng.gen_range(-2..=2)),
            b: bs[rng.gen_range(0..bs.len())].clone(),
            c: r(0),
            c1: c1s[rng.gen_range(0..c1s.len())].clone(),
            c2: c2s[rng.gen_range(0..c2s.len())].clone(),
        };
        let id = if i % 2 == 0 { FamilyId::MinimalTanGv } else { FamilyId::MinimalTanFu };
        let fam = match make_family(id, k) {
            Ok(f) => f,
            Err(e) => return outcome(false, format!("family construction failed: {e}")),
        };
        let h = fam.spec.numeric_mean_curvature();
        let printed = fam.spec.numeric_minimality(false);
        pass &= h.nu == GRID && h.nv == GRID && h.below(H_TOL) && printed.max_abs > PRINTED_FORM_MIN_RESIDUAL;
        worst_h = worst_h.max(h.max_abs);
        min_printed = min_printed.min(printed.max_abs);
    }
    outcome(
        pass,
        format!("max |H| {worst_h:.2e} (tol {H_TOL:e}); printed form residual at least {min_printed:.2e} per choice (needs > {PRINTED_FORM_MIN_RESIDUAL:e})"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut agree = 0;
    let mut slowest = Duration::ZERO;
    let mut errors = Vec::new();
    for n in 0..20 {
        let comps = [0, 1, 2].map(|_| RatFun::from_poly(random_uv_poly(&mut rng, 3)));
        let m = ParametricMap3::new(comps).unwrap();
        match both_methods(&m) {
            Ok([(g, tg), (i, ti)]) => {
                slowest = slowest.max(tg).max(ti);
                let ok = g.q == i.q
                    && g.method == Method::Groebner
                    && substitution_check(&m, &g.q).status == Status::ExactPass
                    && tg < AGREEMENT_BUDGET
                    && ti < AGREEMENT_BUDGET;
                if ok {
                    agree += 1;
                }
            }
            Err(e) => errors.push(format!("case {n}: {e}")),
        }
    }
    let mut detail = format!("{agree}/20 maps agree and pass substitution; slowest method run {slowest:.2?}");
    if !errors.is_empty() {
        detail += &format!("; {}", errors.join(", "));
    }
    outcome(agree == 20, detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("implicit equation of paper-deltaI", criterion_1),
        ("implicit equation of paper-deltaIII", criterion_2),
        ("class of paper-deltaI", criterion_3),
        ("class of paper-deltaIII", criterion_4),
        ("tangential coordinates of paper-deltaI", criterion_5),
        ("Laplace-Beltrami identities", criterion_6),
        ("TF curvature numerators", criterion_7),
        ("minimal tan family", criterion_8),
        ("method agreement on random maps", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
