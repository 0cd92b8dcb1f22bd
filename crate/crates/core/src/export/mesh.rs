use std::fmt::Write as _;
use std::ops::Range;

use crate::geom::{Surface3, Vec3};
use crate::io::BuiltScene;

use super::ExportError;

/// Parametric resolution of each surface: `along` cells across the arc (or
/// the face's first direction) and `across` cells along the extrusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshGrid {
    pub along: usize,
    pub across: usize,
}

impl Default for MeshGrid {
    fn default() -> Self {
        Self { along: 32, across: 8 }
    }
}

/// Indexed triangle mesh; `groups` names contiguous triangle ranges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub positions: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
    pub groups: Vec<(String, Range<usize>)>,
}

impl Mesh {
    fn append(&mut self, group: &str, positions: Vec<Vec3>, triangles: Vec<[usize; 3]>) {
        let base = self.positions.len();
        let start = self.triangles.len();
        self.positions.extend(positions);
        self.triangles.extend(triangles.into_iter().map(|t| t.map(|i| i + base)));
        self.groups.push((group.to_string(), start..self.triangles.len()));
    }

    /// Wavefront OBJ text, one `g` block per group. Indices are 1-based.
    pub fn to_obj(&self) -> String {
        let mut out = String::from("# invisibody mesh\n");
        for p in &self.positions {
            let _ = writeln!(out, "v {:.9} {:.9} {:.9}", p.x, p.y, p.z);
        }
        for (name, range) in &self.groups {
            let _ = writeln!(out, "g {}", name.replace(char::is_whitespace, "_"));
            for t in &self.triangles[range.clone()] {
                let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
            }
        }
        out
    }
}

/// Triangulates one surface over a parametric grid. A grid cell is kept
/// when its centre passes the surface's trim test; vertices used by no
/// kept cell are dropped.
pub fn tessellate(surface: &Surface3, grid: MeshGrid) -> Result<(Vec<Vec3>, Vec<[usize; 3]>), ExportError> {
    let (na, nb) = (grid.along, grid.across);
    if na == 0 || nb == 0 {
        return Err(ExportError::EmptyGrid(na, nb));
    }
    let ((a0, a1), (b0, b1)) = match surface {
        Surface3::Patch(p) => ((p.base_arc.t_min, p.base_arc.t_max), p.e_range),
        Surface3::Plane(f) => (f.u_range, f.w_range),
    };
    let at = |a: f64, b: f64| match surface {
        Surface3::Patch(p) => p.point_at(a, b),
        Surface3::Plane(f) => f.point_at(a, b),
    };
    let pa = |i: f64| a0 + (a1 - a0) * i / na as f64;
    let pb = |j: f64| b0 + (b1 - b0) * j / nb as f64;

    let mut remap = vec![usize::MAX; (na + 1) * (nb + 1)];
    let mut positions = Vec::new();
    let mut triangles = Vec::new();
    let mut vertex = |i: usize, j: usize, positions: &mut Vec<Vec3>| {
        let k = i * (nb + 1) + j;
        if remap[k] == usize::MAX {
            remap[k] = positions.len();
            positions.push(at(pa(i as f64), pb(j as f64)));
        }
        remap[k]
    };
    for i in 0..na {
        for j in 0..nb {
            if !surface.accepts(at(pa(i as f64 + 0.5), pb(j as f64 + 0.5))) {
                continue;
            }
            let v00 = vertex(i, j, &mut positions);
            let v10 = vertex(i + 1, j, &mut positions);
            let v11 = vertex(i + 1, j + 1, &mut positions);
            let v01 = vertex(i, j + 1, &mut positions);
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    Ok((positions, triangles))
}

/// Mesh of every surface of a 3D scene, mirrors and walls alike, grouped by
/// the scene's surface groups.
pub fn export_mesh(built: &BuiltScene, grid: MeshGrid) -> Result<Mesh, ExportError> {
    let scene = built.scene3().ok_or(ExportError::Unsupported {
        format: "mesh",
        needed: 3,
        got: built.dimension(),
    })?;
    let mut mesh = Mesh::default();
    for s in &scene.surfaces {
        let (pos, tri) = tessellate(&s.shape, grid)?;
        mesh.append(&s.group, pos, tri);
    }
    Ok(mesh)
}
