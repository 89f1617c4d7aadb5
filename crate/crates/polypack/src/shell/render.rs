use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lorentz::{geometry_from_ball, Ball, BallGeometry, LVector, Orientation};

use super::document::{Num, PackingDocument};
use super::ShellError;

/// Drawing parameters; `viewport` is `[x, y, w, h]` in model units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderSpec {
    pub viewport: [f64; 4],
    pub stroke_width: f64,
    pub palette: Vec<String>,
    /// Disks with a larger radius are left out.
    pub max_radius: Option<f64>,
    /// Half-spaces and disk complements are filled this far past the
    /// viewport, as a fraction of its size.
    pub halfspace_margin: f64,
    pub width_px: f64,
    pub background: String,
}

pub const DEFAULT_PALETTE: [&str; 8] =
    ["#e6550d", "#3182bd", "#31a354", "#756bb1", "#d6a100", "#de2d26", "#17becf", "#8c6d31"];

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            viewport: [-1.5, -1.5, 3.0, 3.0],
            stroke_width: 0.75,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            max_radius: None,
            halfspace_margin: 0.1,
            width_px: 800.0,
            background: "#ffffff".into(),
        }
    }
}

impl RenderSpec {
    /// A square viewport around the complement disk if there is one,
    /// otherwise around the bounded disks of the seed.
    pub fn fit(doc: &PackingDocument) -> Result<RenderSpec, ShellError> {
        let geo = geometries(doc)?;
        let mut boxes = Vec::new();
        for (g, e) in geo.iter().zip(&doc.entries) {
            if let BallGeometry::Disk { center, radius, orientation } = g {
                match orientation {
                    Orientation::Exterior => {
                        boxes = vec![(center[0] - radius, center[1] - radius, center[0] + radius, center[1] + radius)];
                        break;
                    }
                    Orientation::Interior if e.depth == 0 => {
                        boxes.push((center[0] - radius, center[1] - radius, center[0] + radius, center[1] + radius))
                    }
                    _ => {}
                }
            }
        }
        let mut spec = RenderSpec::default();
        if let Some(&first) = boxes.first() {
            let (x0, y0, x1, y1) = boxes.iter().fold(first, |a, b| (a.0.min(b.0), a.1.min(b.1), a.2.max(b.2), a.3.max(b.3)));
            let side = (x1 - x0).max(y1 - y0) * 1.1;
            let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
            spec.viewport = [cx - side / 2.0, cy - side / 2.0, side, side];
        }
        Ok(spec)
    }

    fn validate(&self) -> Result<(), ShellError> {
        let [x, y, w, h] = self.viewport;
        if !(w > 0.0 && h > 0.0 && x.is_finite() && y.is_finite() && self.width_px > 0.0) {
            return Err(ShellError::Input("viewport must be positive".into()));
        }
        if self.palette.is_empty() {
            return Err(ShellError::Input("palette is empty".into()));
        }
        Ok(())
    }
}

fn geometries(doc: &PackingDocument) -> Result<Vec<BallGeometry<f64>>, ShellError> {
    if doc.dimension != 2 {
        return Err(ShellError::Input(format!("cannot draw a {}-dimensional packing", doc.dimension)));
    }
    doc.entries
        .iter()
        .map(|e| {
            let v = e.inversive.iter().map(Num::to_f64).collect::<Result<Vec<_>, _>>()?;
            if v.len() != 4 {
                return Err(ShellError::Input("entry has the wrong length".into()));
            }
            Ok(geometry_from_ball(&Ball::new_unchecked(LVector::new(v))))
        })
        .collect()
}

/// Clips the rectangle `[x0,x1]×[y0,y1]` to `{p : p·n ≥ δ}`.
fn clip_halfplane(rect: [f64; 4], n: &[f64], delta: f64) -> Vec<(f64, f64)> {
    let [x0, y0, x1, y1] = rect;
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let f = |p: (f64, f64)| p.0 * n[0] + p.1 * n[1] - delta;
    let mut out = Vec::new();
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let (fa, fb) = (f(a), f(b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa >= 0.0) != (fb >= 0.0) {
            let t = fa / (fa - fb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

/// SVG 1.1 text: one element per entry in document order, except disks
/// over `max_radius` and half-spaces that miss the viewport.
pub fn render_svg(doc: &PackingDocument, spec: &RenderSpec) -> Result<String, ShellError> {
    spec.validate()?;
    let geo = geometries(doc)?;
    let [vx, vy, vw, vh] = spec.viewport;
    let s = spec.width_px / vw;
    let (wpx, hpx) = (spec.width_px, vh * s);
    let tx = |x: f64| (x - vx) * s;
    let ty = |y: f64| (vy + vh - y) * s;
    let m = spec.halfspace_margin;
    let outer = [vx - m * vw, vy - m * vh, vx + vw * (1.0 + m), vy + vh * (1.0 + m)];

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{wpx:.0}" height="{hpx:.0}" viewBox="0 0 {wpx:.4} {hpx:.4}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{wpx:.4}" height="{hpx:.4}" fill="{}"/>"#, spec.background);
    let _ = writeln!(svg, r##"<g stroke="#000000" stroke-width="{:.4}">"##, spec.stroke_width);
    for (g, e) in geo.iter().zip(&doc.entries) {
        let fill = &spec.palette[e.orbit % spec.palette.len()];
        match g {
            BallGeometry::Disk { center, radius, orientation: Orientation::Interior } => {
                if spec.max_radius.is_some_and(|r| *radius > r) {
                    continue;
                }
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.4}" cy="{:.4}" r="{:.4}" fill="{fill}"/>"#,
                    tx(center[0]),
                    ty(center[1]),
                    radius * s
                );
            }
            BallGeometry::Disk { center, radius, orientation: Orientation::Exterior } => {
                let (cx, cy, r) = (tx(center[0]), ty(center[1]), radius * s);
                let _ = writeln!(
                    svg,
                    r#"<path fill-rule="evenodd" fill="{fill}" d="M {:.4} {:.4} H {:.4} V {:.4} H {:.4} Z M {:.4} {cy:.4} A {r:.4} {r:.4} 0 1 0 {:.4} {cy:.4} A {r:.4} {r:.4} 0 1 0 {:.4} {cy:.4} Z"/>"#,
                    tx(outer[0]),
                    ty(outer[1]),
                    tx(outer[2]),
                    ty(outer[3]),
                    tx(outer[0]),
                    cx - r,
                    cx + r,
                    cx - r
                );
            }
            BallGeometry::HalfSpace { normal, offset } => {
                let poly = clip_halfplane(outer, normal, *offset);
                if poly.len() < 3 {
                    continue;
                }
                let pts: Vec<String> = poly.iter().map(|p| format!("{:.4},{:.4}", tx(p.0), ty(p.1))).collect();
                let _ = writeln!(svg, r#"<polygon points="{}" fill="{fill}"/>"#, pts.join(" "));
            }
        }
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::ball_from_center;
    use crate::packing::BallArrangement;
    use crate::shell::document::SeedDoc;

    fn doc(balls: Vec<Ball<f64>>) -> PackingDocument {
        let seed = SeedDoc { kind: "projection".into(), centering: None, initial: None, depth: None };
        PackingDocument::from_arrangement(&BallArrangement::new(balls), seed)
    }

    #[test]
    fn unit_disk_at_viewport_center() {
        let d = doc(vec![ball_from_center(&[0.0, 0.0], &1.0).unwrap()]);
        let spec = RenderSpec { viewport: [-2.0, -2.0, 4.0, 4.0], width_px: 400.0, ..RenderSpec::default() };
        let svg = render_svg(&d, &spec).unwrap();
        assert!(svg.contains(r#"<circle cx="200.0000" cy="200.0000" r="100.0000""#), "{svg}");
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn standard_quadruple_has_two_bands_and_two_circles() {
        let balls = vec![
            Ball::from_i64(&[0, 1, 1, 1]).unwrap(),
            Ball::from_i64(&[0, -1, 1, 1]).unwrap(),
            ball_from_center(&[1.0, 0.0], &1.0).unwrap(),
            ball_from_center(&[-1.0, 0.0], &1.0).unwrap(),
        ];
        let svg = render_svg(&doc(balls), &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn complement_disk_uses_even_odd_fill() {
        let d = doc(vec![ball_from_center(&[0.0, 0.0], &-1.0).unwrap()]);
        let spec = RenderSpec::fit(&d).unwrap();
        assert!((spec.viewport[2] - 2.2).abs() < 1e-12);
        let svg = render_svg(&d, &spec).unwrap();
        assert_eq!(svg.matches(r#"fill-rule="evenodd""#).count(), 1);
    }

    #[test]
    fn halfplane_clipping() {
        let p = clip_halfplane([0.0, 0.0, 2.0, 2.0], &[0.0, 1.0], 1.0);
        assert_eq!(p, vec![(2.0, 1.0), (2.0, 2.0), (0.0, 2.0), (0.0, 1.0)]);
        assert!(clip_halfplane([0.0, 0.0, 2.0, 2.0], &[0.0, 1.0], 3.0).is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let d = doc(vec![ball_from_center(&[0.0, 0.0], &1.0).unwrap()]);
        let spec = RenderSpec { viewport: [0.0, 0.0, 0.0, 1.0], ..RenderSpec::default() };
        assert!(render_svg(&d, &spec).is_err());
        let d3 = doc(vec![ball_from_center(&[0.0, 0.0, 0.0], &1.0).unwrap()]);
        assert!(render_svg(&d3, &RenderSpec::default()).is_err());
    }
}
