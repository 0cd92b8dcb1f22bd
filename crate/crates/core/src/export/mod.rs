//! Drawings of scenes: SVG for planar bodies and OBJ meshes for 3D ones.

mod mesh;
mod svg;

pub use mesh::{export_mesh, tessellate, Mesh, MeshGrid};
pub use svg::{export_svg, SvgOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExportError {
    #[error("{format} export needs a {needed}D scene, got a {got}D one")]
    Unsupported {
        format: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("mesh grid must be at least 1×1, got {0}×{1}")]
    EmptyGrid(usize, usize),
}
