//! Versioned text formats for scenes, verification reports and traces.
//!
//! Every document starts with a format line and a `version` line, followed
//! by one `key value…` field per line in a fixed order. Reals carry 17
//! significant digits, so writing and re-reading is lossless.

mod report_file;
mod scene_file;
mod text;

pub use report_file::{DirectionReport, ReportFile, REPORT_FORMAT, REPORT_VERSION};
pub use scene_file::{BuiltScene, CustomSurface, SceneFile, SceneKind, SceneSpec, SCENE_FORMAT, SCENE_VERSION};
pub use text::FormatError;

use crate::geom::Vector;
use crate::tracer::{Primitive, Scene, TraceRecord};

/// Human- and diff-friendly dump of one trajectory.
pub fn format_trace<P: Primitive>(scene: &Scene<P>, record: &TraceRecord<P::V>) -> String {
    let v = |x: P::V| {
        (0..P::V::DIM)
            .map(|i| text::real(x.component(i)))
            .collect::<Vec<_>>()
    };
    let mut w = text::Writer::default();
    w.line("entry", &[v(record.entry.origin), v(record.entry.dir)].concat());
    for r in &record.reflections {
        let mut vals = vec![scene.group_of(r.surface_id).to_string()];
        vals.extend(v(r.point));
        vals.extend(v(r.outgoing));
        w.line("reflection", &vals);
    }
    if let Some(exit) = &record.exit {
        w.line("exit", &[v(exit.origin), v(exit.dir)].concat());
    }
    if let Some(hit) = &record.terminal {
        let mut vals = vec![scene.group_of(hit.surface_id).to_string()];
        vals.extend(v(hit.point));
        w.line("stopped", &vals);
    }
    w.line("status", &[record.status.name().to_string()]);
    w.line("reflections", &[record.reflections.len().to_string()]);
    w.finish()
}
