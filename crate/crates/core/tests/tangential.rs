use lbsurf::builtins::{self, Builtin};
use lbsurf::exactalg::{parse_poly, MPoly, Rational};
use lbsurf::implicitize::{class_of, implicitize, EliminationConfig, ParametricMap3};

fn fixture(name: &str) -> MPoly {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    parse_poly(text.trim(), &["a", "b", "c"]).unwrap().canonical()
}

fn cfg() -> EliminationConfig {
    EliminationConfig { budget_seconds: 1800.0, ..EliminationConfig::interpolation() }
}

#[test]
fn class_equation_of_delta_iii() {
    let (class, s) = class_of(&Builtin::PaperDeltaIII.patch(), &cfg()).unwrap();
    assert_eq!(class, 9);
    assert_eq!(s.q, fixture("tangential_delta_iii.txt"));
    assert_eq!(s.lower_term_count(), 35);
}

#[test]
fn class_equation_of_delta_i() {
    let (class, s) = class_of(&Builtin::PaperDeltaI.patch(), &cfg()).unwrap();
    assert_eq!(class, 14);
    assert_eq!(s.q, fixture("tangential_delta_i.txt"));
    assert_eq!(s.lower_term_count(), 66);
    assert_eq!(builtins::proportional_on(&s.q, &builtins::LEADING_DELTA_I), None);
}

// The published tangential coordinates of the third image (denominator of
// c read as (u+1)(v+1)) are not those of the surface, but eliminating them
// gives degree 15 and the published top-degree terms up to sign.
#[test]
fn printed_tangential_map_of_delta_iii() {
    let mut printed = builtins::tangential_delta_iii_printed();
    printed[2] = printed[2].replace("2*(v+1)*(v+1)*", "2*(u+1)*(v+1)*");
    let m = ParametricMap3::new(builtins::parse_ratfuns(&printed).unwrap()).unwrap();
    let s = implicitize(&m, ["a", "b", "c"], &cfg()).unwrap();
    assert_eq!(s.total_degree, 15);
    assert_eq!(s.q, fixture("tangential_delta_iii_printed.txt"));
    assert_eq!(builtins::proportional_on(&s.q, &builtins::LEADING_DELTA_III), Some(Rational::from_integer((-1).into())));
    assert_eq!(s.leading_form().num_terms(), 8);
}
