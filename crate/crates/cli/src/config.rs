use std::fmt;
use std::path::{Path, PathBuf};

use lbsurf::builtins::Builtin;
use lbsurf::exactalg::{rat_to_f64, Rational};
use lbsurf::implicitize::{EliminationConfig, Method};
use lbsurf::surfcalc::{Domain, SurfacePatch};
use lbsurf::tfsurface::{make_family, make_tf_patch, Analytic, Elementary, FamilyConstants, FamilyId, ScalarFunction, TFSpec};
use serde::Deserialize;

/// Bad configuration; maps to exit code 4.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn bad(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

/// An exact number in a config file: an integer or a string like "-3/4".
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn rational(&self) -> anyhow::Result<Rational> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Str(s) => s.trim().parse::<Rational>().map_err(|_| bad(format!("`{s}` is not a rational number"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFn {
    #[serde(rename = "fn")]
    pub func: String,
    #[serde(default = "one")]
    pub p: f64,
    #[serde(default = "one")]
    pub q: f64,
    #[serde(default)]
    pub r: f64,
    #[serde(default)]
    pub s: f64,
    pub exponent: Option<Num>,
}

fn one() -> f64 {
    1.0
}

/// A profile: polynomial coefficients `[c0, c1, ...]` or a named analytic
/// function `p·F(q·t + r) + s` with `F` in {tan, cos, pow}.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Profile {
    Coeffs(Vec<Num>),
    Named(NamedFn),
}

impl Profile {
    fn function(&self) -> anyhow::Result<ScalarFunction> {
        match self {
            Profile::Coeffs(cs) => {
                let cs = cs.iter().map(Num::rational).collect::<anyhow::Result<Vec<_>>>()?;
                Ok(ScalarFunction::from_coeffs(&cs))
            }
            Profile::Named(n) => {
                let func = match (n.func.as_str(), &n.exponent) {
                    ("tan", None) => Elementary::Tan,
                    ("cos", None) => Elementary::Cos,
                    ("pow", Some(e)) => Elementary::Pow(e.rational()?),
                    ("pow", None) => return Err(bad("pow needs an exponent")),
                    ("tan" | "cos", Some(_)) => return Err(bad(format!("{} takes no exponent", n.func))),
                    (other, _) => return Err(bad(format!("unknown function `{other}`; expected tan, cos or pow"))),
                };
                Ok(ScalarFunction::Analytic(Analytic::new(func, n.p, n.q, n.r, n.s)))
            }
        }
    }
}

/// Flat key-value job configuration. Every key is optional; command-line
/// flags take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub surface: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub z: Option<String>,
    #[serde(rename = "A")]
    pub a: Option<Num>,
    #[serde(rename = "B")]
    pub b: Option<Num>,
    #[serde(rename = "C")]
    pub c: Option<Num>,
    #[serde(rename = "C1")]
    pub c1: Option<Num>,
    #[serde(rename = "C2")]
    pub c2: Option<Num>,
    pub f: Option<Profile>,
    pub g: Option<Profile>,
    pub domain_u: Option<[Num; 2]>,
    pub domain_v: Option<[Num; 2]>,
    pub method: Option<String>,
    pub dmax: Option<u32>,
    pub sample_factor: Option<usize>,
    pub max_primes: Option<usize>,
    pub budget_seconds: Option<f64>,
    pub exact_groebner: Option<bool>,
    pub grid: Option<String>,
    pub out: Option<PathBuf>,
    pub which: Option<String>,
    /// Implicit equation in x, y, z to check against the surface.
    pub implicit: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<FileConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    pub fn elimination(&self) -> anyhow::Result<EliminationConfig> {
        let mut cfg = EliminationConfig::default();
        if let Some(m) = &self.method {
            cfg.method = m.parse::<Method>().map_err(|e| bad(e.to_string()))?;
        }
        if let Some(d) = self.dmax {
            cfg.dmax = d;
        }
        if let Some(s) = self.sample_factor {
            cfg.sample_factor = s;
        }
        if let Some(p) = self.max_primes {
            cfg.max_primes = p;
        }
        if let Some(b) = self.budget_seconds {
            cfg.budget_seconds = b;
        }
        if let Some(e) = self.exact_groebner {
            cfg.exact_groebner = e;
        }
        cfg.validate().map_err(|e| bad(e.to_string()))?;
        Ok(cfg)
    }

    pub fn grid(&self) -> anyhow::Result<(usize, usize)> {
        match &self.grid {
            None => Ok((21, 21)),
            Some(g) => parse_grid(g),
        }
    }

    fn domain(&self) -> anyhow::Result<Domain> {
        let d = Domain::default();
        let pair = |p: &Option<[Num; 2]>, dflt: (Rational, Rational)| -> anyhow::Result<(Rational, Rational)> {
            match p {
                None => Ok(dflt),
                Some([a, b]) => Ok((a.rational()?, b.rational()?)),
            }
        };
        Domain::new(pair(&self.domain_u, d.u)?, pair(&self.domain_v, d.v)?).map_err(|e| bad(e.to_string()))
    }

    fn constants(&self) -> anyhow::Result<FamilyConstants> {
        let mut k = FamilyConstants::default();
        let set = |slot: &mut Rational, n: &Option<Num>| -> anyhow::Result<()> {
            if let Some(n) = n {
                *slot = n.rational()?;
            }
            Ok(())
        };
        set(&mut k.a, &self.a)?;
        set(&mut k.b, &self.b)?;
        set(&mut k.c, &self.c)?;
        set(&mut k.c1, &self.c1)?;
        set(&mut k.c2, &self.c2)?;
        Ok(k)
    }

    /// Resolves the surface: a `--surface` value or the `surface` key names
    /// a built-in, a solution family, or another config file; otherwise
    /// explicit `x`, `y`, `z` components or TF profiles `f`, `g` are used.
    pub fn resolve_surface(&self, name: Option<&str>) -> anyhow::Result<Surface> {
        let domain = self.domain()?;
        if let Some(n) = name.or(self.surface.as_deref()) {
            if let Ok(b) = n.parse::<Builtin>() {
                return Ok(Surface::Patch { name: n.to_string(), patch: b.patch().with_domain(domain) });
            }
            if let Ok(id) = n.parse::<FamilyId>() {
                let fam = make_family(id, self.constants()?).map_err(|e| bad(e.to_string()))?;
                return Ok(Surface::Tf { name: n.to_string(), spec: fam.spec, domain });
            }
            let path = Path::new(n);
            if path.is_file() {
                let inner = FileConfig::load(path)?;
                if inner.surface.is_some() && inner.surface.as_deref() == Some(n) {
                    return Err(bad(format!("{n} refers to itself")));
                }
                return inner.resolve_surface(None);
            }
            return Err(bad(format!("unknown surface `{n}`: not a built-in, a family or a file")));
        }
        match (&self.x, &self.y, &self.z, &self.f, &self.g) {
            (Some(x), Some(y), Some(z), None, None) => {
                let p = SurfacePatch::parse([x, y, z]).map_err(|e| bad(e.to_string()))?;
                Ok(Surface::Patch { name: "custom".into(), patch: p.with_domain(domain) })
            }
            (None, None, None, Some(f), Some(g)) => {
                let k = self.constants()?;
                let spec = TFSpec::new(k.a, k.b, f.function()?, g.function()?).map_err(|e| bad(e.to_string()))?;
                Ok(Surface::Tf { name: "tf".into(), spec, domain })
            }
            (None, None, None, None, None) => Err(bad("no surface given; use --surface or the config keys x, y, z or f, g")),
            _ => Err(bad("give either all of x, y, z or both f and g")),
        }
    }
}

pub fn parse_grid(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| bad(format!("grid `{s}` is not of the form AxB")))?;
    let a: usize = a.trim().parse().map_err(|_| bad(format!("grid `{s}` is not of the form AxB")))?;
    let b: usize = b.trim().parse().map_err(|_| bad(format!("grid `{s}` is not of the form AxB")))?;
    Ok((a, b))
}

pub enum Surface {
    Patch { name: String, patch: SurfacePatch },
    Tf { name: String, spec: TFSpec, domain: Domain },
}

impl Surface {
    pub fn name(&self) -> &str {
        match self {
            Surface::Patch { name, .. } | Surface::Tf { name, .. } => name,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Surface::Patch { patch, .. } => patch.domain().clone(),
            Surface::Tf { domain, .. } => domain.clone(),
        }
    }

    /// The exact patch; fails for analytic profiles.
    pub fn patch(&self) -> lbsurf::Result<SurfacePatch> {
        match self {
            Surface::Patch { patch, .. } => Ok(patch.clone()),
            Surface::Tf { spec, domain, .. } => Ok(make_tf_patch(spec)?.with_domain(domain.clone())),
        }
    }

    pub fn builtin(&self) -> Option<Builtin> {
        match self {
            Surface::Patch { name, .. } => name.parse().ok(),
            Surface::Tf { .. } => None,
        }
    }

    /// Floating-point point of the surface, `None` where undefined.
    pub fn point(&self, u: f64, v: f64) -> Option<[f64; 3]> {
        let p = match self {
            Surface::Patch { patch, .. } => patch.eval_f64(u, v),
            Surface::Tf { spec, .. } => spec.jet(u, v)?.p,
        };
        p.iter().all(|x| x.is_finite()).then_some(p)
    }
}

pub fn domain_corners(d: &Domain) -> [f64; 4] {
    [rat_to_f64(&d.u.0), rat_to_f64(&d.u.1), rat_to_f64(&d.v.0), rat_to_f64(&d.v.1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> FileConfig {
        toml::from_str(s).unwrap()
    }

    #[test]
    fn grid_strings() {
        assert_eq!(parse_grid("21x31").unwrap(), (21, 31));
        assert!(parse_grid("21").is_err());
        assert!(parse_grid("ax2").is_err());
    }

    #[test]
    fn profiles_and_constants() {
        let c = cfg("A = 1\nB = \"1/2\"\nf = [0, 1]\ng = { fn = \"tan\", q = 2.0 }\n");
        let s = c.resolve_surface(None).unwrap();
        assert!(matches!(s, Surface::Tf { .. }));
        assert!(s.patch().is_err());
        let c = cfg("f = [0, 0, 1]\ng = [0, 0, 1]\nA = 1\nB = 0\n");
        assert!(c.resolve_surface(None).unwrap().patch().is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(toml::from_str::<FileConfig>("colour = 3").is_err());
        assert!(cfg("f = { fn = \"sinh\" }\ng = [0, 1]").resolve_surface(None).is_err());
        assert!(cfg("x = \"u\"").resolve_surface(None).is_err());
        assert!(cfg("method = \"magic\"").elimination().is_err());
        assert!(cfg("").resolve_surface(Some("no-such-surface")).is_err());
    }

    #[test]
    fn names_resolve() {
        let c = FileConfig::default();
        assert_eq!(c.resolve_surface(Some("paper-S")).unwrap().builtin(), Some(Builtin::PaperS));
        assert!(matches!(c.resolve_surface(Some("minimal_tan_gv")).unwrap(), Surface::Tf { .. }));
    }
}
