//! SVG rendering of opinions inside the opinion triangle.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{to_cartesian, CartesianPoint};
use crate::opinion::Opinion;

pub const MIN_WIDTH_PX: u32 = 100;

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("width must be at least {MIN_WIDTH_PX} px, got {0}")]
    WidthTooSmall(u32),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub label: String,
    pub opinion: Opinion,
    #[serde(default = "default_color")]
    pub color: String,
}

fn default_color() -> String {
    "black".to_string()
}

fn default_width() -> u32 {
    600
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    #[serde(default)]
    pub points: Vec<PlotPoint>,
    #[serde(default)]
    pub segments: Vec<(Opinion, Opinion)>,
    #[serde(default = "default_width")]
    pub width_px: u32,
    #[serde(default)]
    pub output_path: PathBuf,
}

impl PlotSpec {
    pub fn validate(&self) -> Result<(), PlotError> {
        if self.width_px < MIN_WIDTH_PX {
            return Err(PlotError::WidthTooSmall(self.width_px));
        }
        let mut seen = HashSet::new();
        for p in &self.points {
            if !seen.insert(p.label.as_str()) {
                return Err(PlotError::DuplicateLabel(p.label.clone()));
            }
        }
        Ok(())
    }
}

/// Maps plane coordinates to pixels: B sits at the lower left, U at the top.
#[derive(Debug, Clone, Copy)]
pub struct PixelMap {
    margin: f64,
    scale: f64,
}

impl PixelMap {
    pub fn new(width_px: u32) -> Self {
        let width = f64::from(width_px);
        let margin = width * 0.1;
        PixelMap {
            margin,
            scale: (width - 2.0 * margin) / CartesianPoint::D.x,
        }
    }

    pub fn height(&self) -> f64 {
        self.scale + 2.0 * self.margin
    }

    pub fn pixel(&self, p: &CartesianPoint) -> (f64, f64) {
        (self.margin + p.x * self.scale, self.margin + (1.0 - p.y) * self.scale)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render_svg(spec: &PlotSpec) -> Result<String, PlotError> {
    spec.validate()?;
    let map = PixelMap::new(spec.width_px);
    let (w, h) = (f64::from(spec.width_px), map.height());
    let font = (w / 40.0).max(8.0);
    let (bx, by) = map.pixel(&CartesianPoint::B);
    let (dx, dy) = map.pixel(&CartesianPoint::D);
    let (ux, uy) = map.pixel(&CartesianPoint::U);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(
        svg,
        r#"  <polygon points="{bx:.3},{by:.3} {dx:.3},{dy:.3} {ux:.3},{uy:.3}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{bx:.3}" y="{:.3}" font-size="{font:.1}" text-anchor="middle">belief</text>"#,
        by + font * 1.5
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{dx:.3}" y="{:.3}" font-size="{font:.1}" text-anchor="middle">disbelief</text>"#,
        dy + font * 1.5
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{ux:.3}" y="{:.3}" font-size="{font:.1}" text-anchor="middle">uncertainty</text>"#,
        uy - font * 0.8
    );
    for (from, to) in &spec.segments {
        let (x1, y1) = map.pixel(&to_cartesian(from));
        let (x2, y2) = map.pixel(&to_cartesian(to));
        let _ = writeln!(
            svg,
            r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="gray" stroke-width="1.5"/>"#
        );
    }
    let radius = (w / 150.0).max(2.0);
    for p in &spec.points {
        let (cx, cy) = map.pixel(&to_cartesian(&p.opinion));
        let color = escape(&p.color);
        let _ = writeln!(
            svg,
            r#"  <circle cx="{cx:.3}" cy="{cy:.3}" r="{radius:.2}" fill="{color}"/>"#
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" font-size="{font:.1}" fill="{color}">{}</text>"#,
            cx + radius * 1.5,
            cy - radius * 1.5,
            escape(&p.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders `spec` and writes it to `spec.output_path`.
pub fn write_plot(spec: &PlotSpec) -> Result<(), PlotError> {
    let svg = render_svg(spec)?;
    std::fs::write(&spec.output_path, svg).map_err(|source| PlotError::Io {
        path: spec.output_path.clone(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(points: Vec<PlotPoint>, width_px: u32) -> PlotSpec {
        PlotSpec {
            points,
            segments: vec![],
            width_px,
            output_path: PathBuf::from("unused.svg"),
        }
    }

    fn point(label: &str, o: Opinion) -> PlotPoint {
        PlotPoint {
            label: label.into(),
            opinion: o,
            color: "red".into(),
        }
    }

    #[test]
    fn pure_belief_sits_on_vertex_b() {
        let svg = render_svg(&spec(vec![point("B", Opinion::PURE_BELIEF)], 600)).unwrap();
        let (x, y) = PixelMap::new(600).pixel(&CartesianPoint::B);
        assert!(svg.contains(&format!(r#"<circle cx="{x:.3}" cy="{y:.3}""#)), "{svg}");
        assert!(svg.contains(&format!(r#"points="{x:.3},{y:.3} "#)));
        for label in ["belief", "disbelief", "uncertainty"] {
            assert!(svg.contains(&format!(">{label}</text>")));
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(
            render_svg(&spec(vec![], 50)),
            Err(PlotError::WidthTooSmall(50))
        ));
        let dup = vec![point("x", Opinion::VACUOUS), point("x", Opinion::PURE_BELIEF)];
        assert!(matches!(render_svg(&spec(dup, 200)), Err(PlotError::DuplicateLabel(_))));
    }

    #[test]
    fn labels_are_escaped_and_output_is_stable() {
        let s = spec(vec![point("<T&C>", Opinion::VACUOUS)], 300);
        let a = render_svg(&s).unwrap();
        assert!(a.contains("&lt;T&amp;C&gt;"));
        assert_eq!(a, render_svg(&s).unwrap());
    }
}
