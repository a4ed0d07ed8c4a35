//! SVG 1.1 drawings of plane subdivisions and, when coefficients are given,
//! of the dual tropical curve next to them.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::geometry::PolygonClass;
use crate::subdivision::{dual_complex, Subdivision, TropicalPolynomial};
use crate::{Error, Rational, Result};

const PANEL: f64 = 360.0;
const MARGIN: f64 = 30.0;

fn class_name(c: Option<PolygonClass>) -> &'static str {
    match c {
        Some(PolygonClass::Triangle) => "triangle",
        Some(PolygonClass::Parallelogram) => "parallelogram",
        Some(_) => "nontrivial",
        None => "invalid",
    }
}

fn fill(c: Option<PolygonClass>) -> &'static str {
    match c {
        Some(PolygonClass::Triangle) => "#dce6f2",
        Some(PolygonClass::Parallelogram) => "#f2d16b",
        Some(_) => "#e07a6a",
        None => "#999999",
    }
}

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Maps a bounding box onto a panel with the y axis pointing up.
struct Frame {
    min: [f64; 2],
    scale: f64,
    left: f64,
}

impl Frame {
    fn new(points: &[[f64; 2]], left: f64) -> Frame {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        Frame { min, scale: (PANEL - 2.0 * MARGIN) / span, left }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (self.left + MARGIN + (p[0] - self.min[0]) * self.scale, PANEL - MARGIN - (p[1] - self.min[1]) * self.scale)
    }
}

/// Renders `s`, and the dual curve of `coefficients` when given.
pub fn render(s: &Subdivision, coefficients: Option<&TropicalPolynomial>) -> Result<String> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    let dual = coefficients.map(|c| dual_complex(s, c)).transpose()?;
    let width = if dual.is_some() { 2.0 * PANEL } else { PANEL };
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{width:.0}" height="{PANEL:.0}" fill="white"/>"#).unwrap();
    let pts: Vec<[f64; 2]> = s.vertices().iter().map(|p| [p.coords()[0] as f64, p.coords()[1] as f64]).collect();
    let frame = Frame::new(&pts, 0.0);
    writeln!(out, r#"<g id="subdivision" stroke="black" stroke-width="1.5">"#).unwrap();
    for (i, cell) in s.cells().iter().enumerate() {
        let coords: Vec<String> = cell
            .ring()
            .iter()
            .map(|&v| {
                let (x, y) = frame.map(pts[v]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r#"<polygon class="cell {}" data-cell="{i}" points="{}" fill="{}"/>"#,
            class_name(cell.class()),
            coords.join(" "),
            fill(cell.class())
        )
        .unwrap();
    }
    for p in &pts {
        let (x, y) = frame.map(*p);
        writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if let Some(dual) = dual {
        let nodes: Vec<[f64; 2]> = dual.positions.iter().map(|p| [f(&p[0]), f(&p[1])]).collect();
        let mut extent = nodes.clone();
        let spread = {
            let fr = Frame::new(&nodes, 0.0);
            ((PANEL - 2.0 * MARGIN) / fr.scale).max(1.0)
        };
        let ray_len = 0.35 * spread;
        let ray_end = |cell: usize, d: &[i64]| {
            let n = ((d[0] * d[0] + d[1] * d[1]) as f64).sqrt();
            [nodes[cell][0] + ray_len * d[0] as f64 / n, nodes[cell][1] + ray_len * d[1] as f64 / n]
        };
        for r in &dual.rays {
            extent.push(ray_end(r.cell, &r.direction));
        }
        let frame = Frame::new(&extent, PANEL);
        writeln!(out, r#"<g id="curve" stroke="black" stroke-width="1.5" fill="none">"#).unwrap();
        for e in &dual.edges {
            let (x1, y1) = frame.map(nodes[e.cells.0]);
            let (x2, y2) = frame.map(nodes[e.cells.1]);
            let w = f(&e.weight);
            writeln!(
                out,
                r#"<line class="edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{:.1}"/>"#,
                1.5 * w
            )
            .unwrap();
        }
        for r in &dual.rays {
            let (x1, y1) = frame.map(nodes[r.cell]);
            let (x2, y2) = frame.map(ray_end(r.cell, &r.direction));
            writeln!(
                out,
                r#"<line class="ray" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{:.1}"/>"#,
                1.5 * f(&r.weight)
            )
            .unwrap();
        }
        for (i, p) in nodes.iter().enumerate() {
            let (x, y) = frame.map(*p);
            let c = s.cells()[i].class();
            writeln!(
                out,
                r#"<circle class="node {}" cx="{x:.2}" cy="{y:.2}" r="4" fill="{}"/>"#,
                class_name(c),
                fill(c)
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{witness, witness_coefficients};

    #[test]
    fn triangle_with_three_rays() {
        let s = crate::gen::simplex(2);
        let svg = render(&s, Some(&TropicalPolynomial::from_integers(&[0, 0, 0]))).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches(r#"class="ray""#).count(), 3);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn witness_highlights_three_quadrangles() {
        let svg = render(&witness(), Some(&witness_coefficients())).unwrap();
        assert_eq!(svg.matches(r#"class="cell nontrivial""#).count(), 3);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 6);
        let plain = render(&witness(), None).unwrap();
        assert!(!plain.contains("curve"));
        assert!(render(&crate::gen::simplex(3), None).is_err());
    }
}
