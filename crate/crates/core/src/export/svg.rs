use std::fmt::Write as _;

use crate::construct2d::Shape2;
use crate::geom::{Aabb, Ray, Vec2};
use crate::io::BuiltScene;
use crate::tracer::{trace, Role, Scene};
use crate::verify::FlowSpec;

use super::ExportError;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Polyline resolution of each arc.
    pub samples_per_arc: usize,
    /// Traced and drawn on top of the body.
    pub rays: Vec<Ray<Vec2>>,
    /// Further rays taken from a flow.
    pub flow: Option<FlowSpec<Vec2>>,
    /// Width of the drawing in user units of the viewer.
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            samples_per_arc: 128,
            rays: Vec::new(),
            flow: None,
            width: 800.0,
        }
    }
}

fn xy(p: Vec2) -> String {
    // SVG's y axis points down.
    format!("{:.6},{:.6}", p.x, -p.y)
}

fn points(pts: &[Vec2]) -> String {
    pts.iter().map(|&p| xy(p)).collect::<Vec<_>>().join(" ")
}

fn path_d(pts: &[Vec2]) -> String {
    let mut d = String::new();
    for (k, &p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{}", if k == 0 { "M" } else { " L" }, xy(p));
    }
    d
}

fn outline(shape: &Shape2, samples: usize) -> Vec<Vec2> {
    match shape {
        Shape2::Arc(a) => a.sample(samples),
        Shape2::Segment(s) => vec![s.a, s.b],
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG 1.1 drawing of a planar scene: one `<path>` per mirror, a filled
/// `<polygon>` per solid piece or corner block, a `<line>` per free-standing
/// wall and a `<polyline>` per traced ray.
pub fn export_svg(built: &BuiltScene, opts: &SvgOptions) -> Result<String, ExportError> {
    let scene: Scene<Shape2> = built.scene2().ok_or(ExportError::Unsupported {
        format: "SVG",
        needed: 2,
        got: built.dimension(),
    })?;
    let n = opts.samples_per_arc.max(2);
    let mut mirrors: Vec<(String, Vec<Vec2>)> = Vec::new();
    let mut solids: Vec<(&str, Vec<Vec2>)> = Vec::new();
    let mut walls: Vec<(String, Vec2, Vec2)> = Vec::new();
    match built {
        BuiltScene::Body2(body) => {
            mirrors.extend(body.mirrors.iter().map(|m| (m.group.clone(), outline(&m.shape, n))));
            solids.extend(body.pieces.iter().map(|p| ("piece", p.outline(n))));
            solids.extend(body.blocks.iter().map(|b| ("block", b.outline(n))));
        }
        _ => {
            for s in &scene.surfaces {
                match (s.role, &s.shape) {
                    (Role::Mirror, shape) => mirrors.push((s.group.clone(), outline(shape, n))),
                    (Role::Wall, Shape2::Segment(g)) => walls.push((s.group.clone(), g.a, g.b)),
                    (Role::Wall, shape) => solids.push(("wall", outline(shape, n))),
                }
            }
        }
    }
    let mut rays = opts.rays.clone();
    if let Some(flow) = &opts.flow {
        rays.extend(flow.rays(&scene).1);
    }
    let traced: Vec<Vec<Vec2>> = rays.iter().map(|r| trace(&scene, r).path(&scene)).collect();

    let mut view: Aabb<Vec2> = scene.bounds;
    for p in traced.iter().flatten() {
        view = view.including(*p);
    }
    let view = view.padded(0.02 * view.extent());
    let (w, h) = (view.max.x - view.min.x, view.max.y - view.min.y);
    let stroke = 1e-3 * view.extent();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        opts.width,
        opts.width * h / w,
        view.min.x,
        -view.max.y,
        w,
        h
    );
    let _ = writeln!(
        out,
        r#"<style>.mirror{{fill:none;stroke:#1f4e9c;stroke-width:{stroke:.6}}} .piece,.block,.wall{{fill:#b8b8b8;stroke:#555;stroke-width:{half:.6}}} .ray{{fill:none;stroke:#c0392b;stroke-width:{half:.6}}}</style>"#,
        half = 0.5 * stroke
    );
    for (kind, pts) in &solids {
        let _ = writeln!(out, r#"<polygon class="{kind}" points="{}"/>"#, points(pts));
    }
    for (group, a, b) in &walls {
        let (a, b) = (xy(*a), xy(*b));
        let (a, b) = (a.split_once(',').unwrap(), b.split_once(',').unwrap());
        let _ = writeln!(
            out,
            r#"<line class="wall" data-group="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            escape(group),
            a.0,
            a.1,
            b.0,
            b.1
        );
    }
    for (group, pts) in &mirrors {
        let _ = writeln!(out, r#"<path class="mirror" data-group="{}" d="{}"/>"#, escape(group), path_d(pts));
    }
    for pts in &traced {
        let _ = writeln!(out, r#"<polyline class="ray" points="{}"/>"#, points(pts));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
