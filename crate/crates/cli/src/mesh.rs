use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{bad, domain_corners, Surface};

pub struct Mesh {
    pub obj: String,
    pub csv: String,
    pub vertices: usize,
    pub faces: usize,
    pub skipped: usize,
}

/// Samples the surface on an `nu × nv` grid and triangulates each grid
/// cell whose corners are all defined.
pub fn build(s: &Surface, nu: usize, nv: usize) -> anyhow::Result<Mesh> {
    if nu < 2 || nv < 2 {
        return Err(bad(format!("mesh grid {nu}x{nv} has no cells; need at least 2x2")));
    }
    let [u0, u1, v0, v1] = domain_corners(&s.domain());
    let mut index = vec![None; nu * nv];
    let mut obj = format!("# {} sampled on a {nu}x{nv} grid\n", s.name());
    let mut csv = String::from("i,j,u,v,x,y,z\n");
    let mut vertices = 0;
    for i in 0..nu {
        let u = u0 + (u1 - u0) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v = v0 + (v1 - v0) * j as f64 / (nv - 1) as f64;
            match s.point(u, v) {
                Some([x, y, z]) => {
                    vertices += 1;
                    index[i * nv + j] = Some(vertices);
                    writeln!(obj, "v {x} {y} {z}")?;
                    writeln!(csv, "{i},{j},{u},{v},{x},{y},{z}")?;
                }
                None => writeln!(csv, "{i},{j},{u},{v},,,")?,
            }
        }
    }
    let mut faces = 0;
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let c = [index[i * nv + j], index[(i + 1) * nv + j], index[(i + 1) * nv + j + 1], index[i * nv + j + 1]];
            for [a, b, d] in [[c[0], c[1], c[2]], [c[0], c[2], c[3]]] {
                if let (Some(a), Some(b), Some(d)) = (a, b, d) {
                    writeln!(obj, "f {a} {b} {d}")?;
                    faces += 1;
                }
            }
        }
    }
    Ok(Mesh { obj, csv, vertices, faces, skipped: nu * nv - vertices })
}

pub fn write(s: &Surface, nu: usize, nv: usize, out: &Path) -> anyhow::Result<Value> {
    let m = build(s, nu, nv)?;
    if m.vertices == 0 {
        return Err(bad("no grid point of the surface is defined"));
    }
    let csv_path: PathBuf = out.with_extension("csv");
    std::fs::write(out, &m.obj)?;
    std::fs::write(&csv_path, &m.csv)?;
    if m.skipped > 0 {
        eprintln!("warning: {} singular grid points skipped", m.skipped);
    }
    Ok(json!({
        "surface": s.name(),
        "grid": [nu, nv],
        "vertices": m.vertices,
        "faces": m.faces,
        "skipped": m.skipped,
        "obj": out.display().to_string(),
        "csv": csv_path.display().to_string(),
    }))
}
