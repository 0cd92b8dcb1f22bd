//! The 3D body: extruded orthogonal planar bodies carved by pyramids, one
//! pair of sub-bodies per invisibility axis.

mod body;
mod solids;

pub use body::{build_body3, Body3D, BodySurface, Cell3, SubBody, SurfaceKind};
pub use solids::{Gallery, Pyramid, PyramidSign};
