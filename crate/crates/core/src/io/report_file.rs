use std::collections::BTreeMap;

use crate::geom::Vector;
use crate::verify::{Sampling, VerificationReport, REPORT_TOLERANCE};

use super::text::{real, FormatError, Line, Reader, Writer};

pub const REPORT_FORMAT: &str = "invisibody-report";
pub const REPORT_VERSION: u64 = 1;

/// Dimension-free copy of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionReport {
    pub direction: Vec<f64>,
    pub scene_diameter: f64,
    pub rays_total: usize,
    pub rays_excluded: usize,
    pub rays_untreated: usize,
    pub rays_singular: usize,
    pub reflection_histogram: BTreeMap<usize, usize>,
    pub untreated_histogram: BTreeMap<usize, usize>,
    pub max_velocity_dev: f64,
    pub max_lateral_dev: f64,
    pub resistance: Vec<f64>,
    pub resistance_per_area: Vec<f64>,
    pub cross_section_area: f64,
    pub untreated_measure: f64,
    pub excluded_bound: f64,
    pub surface_hits: BTreeMap<String, usize>,
    pub invisible: bool,
    pub zero_resistance: bool,
    pub invisible_at_report_tolerance: bool,
}

fn comps<V: Vector>(v: V) -> Vec<f64> {
    (0..V::DIM).map(|i| v.component(i)).collect()
}

impl<V: Vector> From<&VerificationReport<V>> for DirectionReport {
    fn from(r: &VerificationReport<V>) -> Self {
        Self {
            direction: comps(r.direction),
            scene_diameter: r.scene_diameter,
            rays_total: r.rays_total,
            rays_excluded: r.rays_excluded,
            rays_untreated: r.rays_untreated,
            rays_singular: r.rays_singular,
            reflection_histogram: r.reflection_histogram.clone(),
            untreated_histogram: r.untreated_histogram.clone(),
            max_velocity_dev: r.max_velocity_dev,
            max_lateral_dev: r.max_lateral_dev,
            resistance: comps(r.resistance),
            resistance_per_area: comps(r.resistance_per_area),
            cross_section_area: r.cross_section_area,
            untreated_measure: r.untreated_measure,
            excluded_bound: r.excluded_bound,
            surface_hits: r.surface_hits.clone(),
            invisible: r.invisible,
            zero_resistance: r.zero_resistance,
            invisible_at_report_tolerance: r.invisible_at_report_tolerance,
        }
    }
}

/// Verification run as written to disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportFile {
    pub tool_version: String,
    pub scene_hash: String,
    pub scene_kind: String,
    pub sampling: Sampling,
    pub tolerance: f64,
    pub exclusion_margin: f64,
    pub directions: Vec<DirectionReport>,
    /// Wall-clock time, only recorded on request so reports stay reproducible.
    pub timing_ms: Option<f64>,
}

impl ReportFile {
    /// Every direction invisible at the run's tolerance.
    pub fn passed(&self) -> bool {
        !self.directions.is_empty() && self.directions.iter().all(|d| d.invisible)
    }

    pub fn to_text(&self) -> String {
        let mut w = Writer::default();
        w.line(REPORT_FORMAT, &[]);
        w.line("version", &[REPORT_VERSION.to_string()]);
        w.line("tool-version", std::slice::from_ref(&self.tool_version));
        w.line("scene-hash", std::slice::from_ref(&self.scene_hash));
        w.line("scene-kind", std::slice::from_ref(&self.scene_kind));
        match self.sampling {
            Sampling::UniformGrid(n) => w.line("sampling", &["grid".into(), n.to_string()]),
            Sampling::MonteCarlo { n, seed } => {
                w.line("sampling", &["monte-carlo".into(), n.to_string(), seed.to_string()])
            }
        }
        w.reals("tolerance", &[self.tolerance]);
        w.reals("report-tolerance", &[REPORT_TOLERANCE]);
        w.reals("exclusion-margin", &[self.exclusion_margin]);
        w.line("directions", &[self.directions.len().to_string()]);
        for d in &self.directions {
            write_direction(&mut w, d);
        }
        w.line("verdict", &[if self.passed() { "pass" } else { "fail" }.into()]);
        if let Some(t) = self.timing_ms {
            w.reals("timing-ms", &[t]);
        }
        w.finish()
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "report");
        r.header(REPORT_FORMAT, REPORT_VERSION)?;
        let tool_version = r.expect("tool-version")?.word()?.to_string();
        let scene_hash = r.expect("scene-hash")?.word()?.to_string();
        let scene_kind = r.expect("scene-kind")?.word()?.to_string();
        let sl = r.expect("sampling")?;
        let sampling = match sl.values.first().copied() {
            Some("grid") => {
                sl.arity(2)?;
                Sampling::UniformGrid(sl.uint_at(1)? as usize)
            }
            Some("monte-carlo") => {
                sl.arity(3)?;
                Sampling::MonteCarlo {
                    n: sl.uint_at(1)? as usize,
                    seed: sl.uint_at(2)?,
                }
            }
            _ => return Err(sl.invalid("expected `grid N` or `monte-carlo N SEED`")),
        };
        let tolerance = r.expect("tolerance")?.real()?;
        let rt = r.expect("report-tolerance")?;
        if rt.real()? != REPORT_TOLERANCE {
            return Err(rt.invalid(format!("report tolerance must be {}", real(REPORT_TOLERANCE))));
        }
        let exclusion_margin = r.expect("exclusion-margin")?.real()?;
        let n = r.expect("directions")?.uint()? as usize;
        let mut directions = Vec::with_capacity(n);
        for k in 0..n {
            let root = r.root.clone();
            r.root = format!("{root}.direction[{k}]");
            directions.push(read_direction(&mut r)?);
            r.root = root;
        }
        let report = Self {
            tool_version,
            scene_hash,
            scene_kind,
            sampling,
            tolerance,
            exclusion_margin,
            directions,
            timing_ms: None,
        };
        let vl = r.expect("verdict")?;
        let expected = if report.passed() { "pass" } else { "fail" };
        if vl.word()? != expected {
            return Err(vl.invalid(format!("verdict disagrees with the direction records (expected {expected})")));
        }
        let timing_ms = match r.optional("timing-ms") {
            Some(l) => Some(l.real()?),
            None => None,
        };
        r.finish()?;
        Ok(Self { timing_ms, ..report })
    }
}

fn histogram<K: ToString>(h: &BTreeMap<K, usize>) -> Vec<String> {
    h.iter().map(|(k, v)| format!("{}:{v}", k.to_string())).collect()
}

fn write_direction(w: &mut Writer, d: &DirectionReport) {
    w.reals("direction", &d.direction);
    w.reals("scene-diameter", &[d.scene_diameter]);
    w.line("rays-total", &[d.rays_total.to_string()]);
    w.line("rays-excluded", &[d.rays_excluded.to_string()]);
    w.line("rays-untreated", &[d.rays_untreated.to_string()]);
    w.line("rays-singular", &[d.rays_singular.to_string()]);
    w.line("reflection-histogram", &histogram(&d.reflection_histogram));
    w.line("untreated-histogram", &histogram(&d.untreated_histogram));
    w.reals("max-velocity-dev", &[d.max_velocity_dev]);
    w.reals("max-lateral-dev", &[d.max_lateral_dev]);
    w.reals("resistance", &d.resistance);
    w.reals("resistance-per-area", &d.resistance_per_area);
    w.reals("cross-section-area", &[d.cross_section_area]);
    w.reals("untreated-measure", &[d.untreated_measure]);
    w.reals("excluded-bound", &[d.excluded_bound]);
    w.line("surface-hits", &histogram(&d.surface_hits));
    w.line("invisible", &[d.invisible.to_string()]);
    w.line("zero-resistance", &[d.zero_resistance.to_string()]);
    w.line("invisible-at-report-tolerance", &[d.invisible_at_report_tolerance.to_string()]);
}

fn read_pairs(l: &Line) -> Result<Vec<(String, usize)>, FormatError> {
    l.values
        .iter()
        .map(|tok| {
            let (k, v) = tok
                .rsplit_once(':')
                .ok_or_else(|| l.invalid(format!("expected `key:count`, found `{tok}`")))?;
            let v = v
                .parse::<usize>()
                .map_err(|_| l.invalid(format!("bad count in `{tok}`")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn read_histogram(l: &Line) -> Result<BTreeMap<usize, usize>, FormatError> {
    read_pairs(l)?
        .into_iter()
        .map(|(k, v)| {
            k.parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| l.invalid(format!("bad reflection count `{k}`")))
        })
        .collect()
}

fn read_direction(r: &mut Reader) -> Result<DirectionReport, FormatError> {
    let dl = r.expect("direction")?;
    let direction = dl.reals()?;
    if !(2..=3).contains(&direction.len()) {
        return Err(dl.invalid("expected 2 or 3 components"));
    }
    let dim = direction.len();
    let vector = |l: Line| -> Result<Vec<f64>, FormatError> {
        l.arity(dim)?;
        l.reals()
    };
    Ok(DirectionReport {
        direction,
        scene_diameter: r.expect("scene-diameter")?.real()?,
        rays_total: r.expect("rays-total")?.uint()? as usize,
        rays_excluded: r.expect("rays-excluded")?.uint()? as usize,
        rays_untreated: r.expect("rays-untreated")?.uint()? as usize,
        rays_singular: r.expect("rays-singular")?.uint()? as usize,
        reflection_histogram: read_histogram(&r.expect("reflection-histogram")?)?,
        untreated_histogram: read_histogram(&r.expect("untreated-histogram")?)?,
        max_velocity_dev: r.expect("max-velocity-dev")?.real()?,
        max_lateral_dev: r.expect("max-lateral-dev")?.real()?,
        resistance: vector(r.expect("resistance")?)?,
        resistance_per_area: vector(r.expect("resistance-per-area")?)?,
        cross_section_area: r.expect("cross-section-area")?.real()?,
        untreated_measure: r.expect("untreated-measure")?.real()?,
        excluded_bound: r.expect("excluded-bound")?.real()?,
        surface_hits: read_pairs(&r.expect("surface-hits")?)?.into_iter().collect(),
        invisible: r.expect("invisible")?.flag()?,
        zero_resistance: r.expect("zero-resistance")?.flag()?,
        invisible_at_report_tolerance: r.expect("invisible-at-report-tolerance")?.flag()?,
    })
}
