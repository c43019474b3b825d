//! Floating-point point geometry for patches given by value and derivative
//! evaluators rather than exact expressions.

/// Position and first/second partial derivatives at one parameter point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub p: [f64; 3],
    pub pu: [f64; 3],
    pub pv: [f64; 3],
    pub puu: [f64; 3],
    pub puv: [f64; 3],
    pub pvv: [f64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointGeometry {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `|x_u × x_v|²`.
    pub w: f64,
    pub h: f64,
    pub k: f64,
    pub normal: [f64; 3],
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// `None` where the patch is singular or a value is not finite.
pub fn point_geometry(j: &Jet) -> Option<PointGeometry> {
    let n = cross(&j.pu, &j.pv);
    let w = dot(&n, &n);
    if !(w.is_finite() && w > 0.0) {
        return None;
    }
    let s = w.sqrt();
    let normal = [n[0] / s, n[1] / s, n[2] / s];
    let (e, f, g) = (dot(&j.pu, &j.pu), dot(&j.pu, &j.pv), dot(&j.pv, &j.pv));
    let (l, m, nn) = (dot(&j.puu, &normal), dot(&j.puv, &normal), dot(&j.pvv, &normal));
    let det = e * g - f * f;
    let h = (e * nn + g * l - 2.0 * f * m) / (2.0 * det);
    let k = (l * nn - m * m) / det;
    let out = PointGeometry { e, f, g, l, m, n: nn, w, h, k, normal };
    if h.is_finite() && k.is_finite() {
        Some(out)
    } else {
        None
    }
}
