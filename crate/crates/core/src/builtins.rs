//! Named reference surfaces and the published values they are checked
//! against.
//!
//! `paper-S` is the patch `(u, v, u + v + uv)`; `paper-deltaI` and
//! `paper-deltaIII` are the published parametrizations of its first and
//! third Laplace–Beltrami images, taken verbatim. Note that the computed
//! `Δ^I S` equals the published `paper-deltaIII` and the computed
//! `Δ^III S` equals minus the published `paper-deltaI`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::exactalg::{parse_poly, parse_ratfun, MPoly, RatFun, Rational};
use crate::implicitize::ParametricMap3;
use crate::surfcalc::{SurfacePatch, PARAMS};

pub const S: [&str; 3] = ["u", "v", "u + v + u*v"];

pub const DELTA_I: [&str; 3] = [
    "2*(u+1)*((u+1)^2 + (v+1)^2 + 1)",
    "2*(v+1)*((u+1)^2 + (v+1)^2 + 1)",
    "6*(u+1)*(v+1)*((u+1)^2 + (v+1)^2 + 1)",
];

pub const DELTA_III: [&str; 3] = [
    "-2*(u+1)*(v+1)^2/((u+1)^2 + (v+1)^2 + 1)^2",
    "-2*(u+1)^2*(v+1)/((u+1)^2 + (v+1)^2 + 1)^2",
    "2*(u+1)*(v+1)/((u+1)^2 + (v+1)^2 + 1)^2",
];

/// Published implicit equation of `paper-deltaI`.
pub const Q_DELTA_I: &str = "27*x^3*y^3 - 18*x^2*y^2*z - 2*x^2*z^3 - 2*y^2*z^3";
/// Published implicit equation of `paper-deltaIII`.
pub const Q_DELTA_III: &str = "x^4 + 2*x^2*y^2 + 2*x^2*z^2 + y^4 + 2*y^2*z^2 + z^4 - 2*x*y*z";

const ALPHA: &str = "((u+1)^2 + (v+1)^2 + 1)^2";

/// Published tangential coordinates of `paper-deltaI`, with the
/// denominator of `c` as printed, `6(v+1)(v+1)α`.
pub fn tangential_delta_i_printed() -> [String; 3] {
    [
        format!("-(u*(u+2) + 3*v*(v+2) + 5)/(2*(u+1)*{ALPHA})"),
        format!("-(3*u*(u+2) + v*(v+2) + 5)/(2*(v+1)*{ALPHA})"),
        format!("(3*(u^2+v^2) + 6*(u+v) + 7)/(6*(v+1)*(v+1)*{ALPHA})"),
    ]
}

/// The same with the denominator of `c` read as `6(u+1)(v+1)α`.
pub fn tangential_delta_i_corrected() -> [String; 3] {
    let [a, b, _] = tangential_delta_i_printed();
    [a, b, format!("(3*(u^2+v^2) + 6*(u+v) + 7)/(6*(u+1)*(v+1)*{ALPHA})")]
}

/// Published tangential coordinates of `paper-deltaIII`.
pub fn tangential_delta_iii_printed() -> [String; 3] {
    let beta = "(3*u*(u+2) - 5*v*(v+2) + 1)";
    [
        format!("(u^2 + 2*u - 3*v^2 - 6*v - 1)*{ALPHA}/(2*(u+1)*(v+1)^2*{beta})"),
        format!("(3*u^2 + 6*u - v^2 - 2*v + 1)*{ALPHA}/(2*(u+1)^2*(v+1)*{beta})"),
        format!("(u^2 + 2*u + v^2 + 2*v - 1)*{ALPHA}/(2*(v+1)*(v+1)*{beta})"),
    ]
}

/// Published class and top-degree terms of the tangential equation.
pub const CLASS_DELTA_I: u32 = 16;
pub const CLASS_DELTA_III: u32 = 15;
pub const LEADING_DELTA_I: [([u32; 3], i64); 5] =
    [([15, 1, 0], 512), ([13, 3, 0], 3072), ([13, 1, 2], 27648), ([11, 5, 0], 7680), ([11, 3, 2], -110592)];
pub const LEADING_DELTA_III: [([u32; 3], i64); 5] =
    [([9, 3, 3], -54), ([7, 5, 3], 108), ([7, 3, 5], 108), ([5, 7, 3], -54), ([5, 5, 5], -18)];
/// Published counts of the remaining lower-degree terms.
pub const LOWER_TERMS_DELTA_I: usize = 143;
pub const LOWER_TERMS_DELTA_III: usize = 120;

/// The common ratio `coeff(q, m) / c` over the listed monomials, if one
/// nonzero ratio fits all of them.
pub fn proportional_on(q: &MPoly, terms: &[([u32; 3], i64)]) -> Option<Rational> {
    let mut ratio: Option<Rational> = None;
    for (m, c) in terms {
        let r = q.coeff(m) / Rational::from_integer((*c).into());
        if r.is_zero() || ratio.as_ref().is_some_and(|x| *x != r) {
            return None;
        }
        ratio = Some(r);
    }
    ratio
}

pub fn parse_ratfuns(s: &[impl AsRef<str>; 3]) -> Result<[RatFun; 3]> {
    let mut out = Vec::with_capacity(3);
    for c in s {
        out.push(parse_ratfun(c.as_ref(), &PARAMS)?);
    }
    Ok(out.try_into().expect("three"))
}

pub fn implicit(s: &str) -> MPoly {
    parse_poly(s, &["x", "y", "z"]).expect("valid built-in polynomial")
}

/// Surfaces selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    PaperS,
    PaperDeltaI,
    PaperDeltaIII,
    Plane,
    Saddle,
    Paraboloid,
    Sphere,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::PaperS,
        Builtin::PaperDeltaI,
        Builtin::PaperDeltaIII,
        Builtin::Plane,
        Builtin::Saddle,
        Builtin::Paraboloid,
        Builtin::Sphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::PaperS => "paper-S",
            Builtin::PaperDeltaI => "paper-deltaI",
            Builtin::PaperDeltaIII => "paper-deltaIII",
            Builtin::Plane => "plane",
            Builtin::Saddle => "saddle",
            Builtin::Paraboloid => "paraboloid",
            Builtin::Sphere => "sphere",
        }
    }

    pub fn components(self) -> [String; 3] {
        let s = |c: [&str; 3]| c.map(String::from);
        match self {
            Builtin::PaperS => s(S),
            Builtin::PaperDeltaI => s(DELTA_I),
            Builtin::PaperDeltaIII => s(DELTA_III),
            Builtin::Plane => s(["u", "v", "0"]),
            Builtin::Saddle => s(["u", "v", "u*v"]),
            Builtin::Paraboloid => s(["u", "v", "u^2 + v^2"]),
            Builtin::Sphere => s(["2*u/(1+u^2+v^2)", "2*v/(1+u^2+v^2)", "(u^2+v^2-1)/(1+u^2+v^2)"]),
        }
    }

    pub fn patch(self) -> SurfacePatch {
        let c = self.components();
        SurfacePatch::parse([&c[0], &c[1], &c[2]]).expect("valid built-in surface")
    }

    pub fn map(self) -> ParametricMap3 {
        ParametricMap3::new(parse_ratfuns(&self.components()).expect("valid built-in surface")).expect("nonconstant built-in")
    }

    /// The published implicit equation, where there is one.
    pub fn implicit(self) -> Option<MPoly> {
        match self {
            Builtin::PaperDeltaI => Some(implicit(Q_DELTA_I)),
            Builtin::PaperDeltaIII => Some(implicit(Q_DELTA_III)),
            _ => None,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown built-in surface `{s}`")))
    }
}
