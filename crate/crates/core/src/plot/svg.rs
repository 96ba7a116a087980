use std::collections::HashMap;
use std::fmt::Write;

use super::{check_color, region_geometry, guide_lines, Canvas, PlanePoint, PlotError, PlotSpec, Polygon};
use crate::reliance::{envelope, Fraction};
use crate::TOLERANCE;

const POINT_RADIUS: f64 = 6.0;
const NEUTRAL: &str = "#7f7f7f";
const AXIS: &str = "#333333";

/// Element id for a point label: `pt-` followed by the label with every character
/// outside `[A-Za-z0-9_.-]` replaced by `_`.
pub fn point_id(label: &str) -> String {
    let body: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-') { c } else { '_' })
        .collect();
    format!("pt-{body}")
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn validate(spec: &PlotSpec) -> Result<(), PlotError> {
    let Canvas { width, height } = spec.canvas;
    if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
        return Err(PlotError::InvalidCanvas { width, height });
    }
    let pal = &spec.palette;
    for color in [&pal.region_below, &pal.region_above, &pal.line, &pal.matched, &pal.marker] {
        check_color(color)?;
    }
    let mut ids: HashMap<String, &str> = HashMap::new();
    for p in &spec.points {
        let outside = || PlotError::PointOutsideEnvelope {
            label: p.label.clone(),
            adherence: p.adherence,
            final_accuracy: p.final_accuracy,
        };
        let a = Fraction::new(p.adherence).map_err(|_| outside())?;
        let x = Fraction::new(p.final_accuracy).map_err(|_| outside())?;
        if !envelope(spec.acc, a).contains(x, TOLERANCE) {
            return Err(outside());
        }
        if let Some(fill) = &p.fill {
            check_color(fill)?;
        }
        if let Some(prev) = ids.insert(point_id(&p.label), &p.label) {
            return Err(PlotError::DuplicateLabel(prev.to_string(), p.label.clone()));
        }
    }
    for (index, arrow) in spec.arrows.iter().enumerate() {
        for point in [arrow.from, arrow.to] {
            if point >= spec.points.len() {
                return Err(PlotError::ArrowOutOfRange {
                    index,
                    point,
                    count: spec.points.len(),
                });
            }
        }
    }
    Ok(())
}

fn polygon_points(canvas: &Canvas, polygon: &Polygon) -> String {
    polygon
        .vertices
        .iter()
        .map(|v| format!("{:.2},{:.2}", canvas.x(v.adherence), canvas.y(v.accuracy)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the plane as an SVG 1.1 document. Identical specs give identical bytes.
///
/// Element order: background, axes, region polygons, guide lines, points, labels, arrows.
pub fn render(spec: &PlotSpec) -> Result<String, PlotError> {
    validate(spec)?;
    let c = &spec.canvas;
    let pal = &spec.palette;
    let acc = spec.acc.value();
    let region = region_geometry(spec.acc);
    let guides = guide_lines(spec.acc);

    let mut s = String::new();
    // fmt::Write into a String cannot fail
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = c.width,
        h = c.height
    );
    let _ = writeln!(
        s,
        "  <title>Attainable decision-making accuracy at AI accuracy {:.1}%</title>",
        acc * 100.0
    );
    let _ = writeln!(
        s,
        r#"  <defs><marker id="arrowhead" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="{AXIS}"/></marker></defs>"#
    );
    let _ = writeln!(
        s,
        r##"  <rect id="background" x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        c.width, c.height
    );

    // axes with ticks every 10%
    let (x0, x1, y0, y1) = (c.x(0.0), c.x(1.0), c.y(0.0), c.y(1.0));
    let _ = writeln!(s, r#"  <g id="axes" stroke="{AXIS}" stroke-width="1">"#);
    let _ = writeln!(s, r#"    <line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/>"#);
    let _ = writeln!(s, r#"    <line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>"#);
    for i in 0..=10 {
        let t = i as f64 / 10.0;
        let (x, y) = (c.x(t), c.y(t));
        let _ = writeln!(
            s,
            r#"    <line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            s,
            r#"    <line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"    <text x="{x:.2}" y="{:.2}" stroke="none" fill="{AXIS}" text-anchor="middle">{}%</text>"#,
            y0 + 18.0,
            i * 10
        );
        let _ = writeln!(
            s,
            r#"    <text x="{:.2}" y="{:.2}" stroke="none" fill="{AXIS}" text-anchor="end">{}%</text>"#,
            x0 - 8.0,
            y + 4.0,
            i * 10
        );
    }
    let _ = writeln!(
        s,
        r#"    <text x="{:.2}" y="{:.2}" stroke="none" fill="{AXIS}" text-anchor="middle">Adherence to AI recommendations</text>"#,
        (x0 + x1) / 2.0,
        c.height - 0.025 * c.height
    );
    let (lx, ly) = (0.025 * c.width + 6.0, (y0 + y1) / 2.0);
    let _ = writeln!(
        s,
        r#"    <text x="{lx:.2}" y="{ly:.2}" stroke="none" fill="{AXIS}" text-anchor="middle" transform="rotate(-90 {lx:.2} {ly:.2})">Decision-making accuracy</text>"#
    );
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(
        s,
        r#"  <polygon id="region-below" points="{}" fill="{}" fill-opacity="0.35" stroke="none"/>"#,
        polygon_points(c, &region.below),
        pal.region_below
    );
    let _ = writeln!(
        s,
        r#"  <polygon id="region-above" points="{}" fill="{}" fill-opacity="0.35" stroke="none"/>"#,
        polygon_points(c, &region.above),
        pal.region_above
    );
    let seg = guides.nondiscern;
    let _ = writeln!(
        s,
        r#"  <line id="line-nondiscern" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"/>"#,
        c.x(seg.from.adherence),
        c.y(seg.from.accuracy),
        c.x(seg.to.adherence),
        c.y(seg.to.accuracy),
        pal.line
    );
    let seg = guides.matched;
    let _ = writeln!(
        s,
        r#"  <line id="line-matched" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2" stroke-dasharray="6 4"/>"#,
        c.x(seg.from.adherence),
        c.y(seg.from.accuracy),
        c.x(seg.to.adherence),
        c.y(seg.to.accuracy),
        pal.matched
    );

    let _ = writeln!(s, r#"  <g id="points">"#);
    for p in &spec.points {
        let diff = p.final_accuracy - acc;
        // Points on the split line neither complement nor impair.
        let (class, stroke) = if diff.abs() <= TOLERANCE {
            ("point-neutral", NEUTRAL)
        } else if diff > 0.0 {
            ("point-complementing", pal.region_above.as_str())
        } else {
            ("point-impairing", pal.region_below.as_str())
        };
        let _ = writeln!(
            s,
            r#"    <circle id="{}" class="{class}" cx="{:.2}" cy="{:.2}" r="{POINT_RADIUS}" fill="{}" stroke="{stroke}" stroke-width="2"/>"#,
            point_id(&p.label),
            c.x(p.adherence),
            c.y(p.final_accuracy),
            p.fill.as_deref().unwrap_or(&pal.marker)
        );
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(s, r#"  <g id="labels" fill="{AXIS}">"#);
    for p in &spec.points {
        let _ = writeln!(
            s,
            r#"    <text x="{:.2}" y="{:.2}">{}</text>"#,
            c.x(p.adherence) + POINT_RADIUS + 3.0,
            c.y(p.final_accuracy) - POINT_RADIUS - 3.0,
            escape(&p.label)
        );
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(s, r#"  <g id="arrows" stroke="{AXIS}" stroke-width="1.5">"#);
    for (i, arrow) in spec.arrows.iter().enumerate() {
        let from = &spec.points[arrow.from];
        let to = &spec.points[arrow.to];
        let (a, b) = shorten(
            c,
            PlanePoint::new(from.adherence, from.final_accuracy),
            PlanePoint::new(to.adherence, to.final_accuracy),
        );
        let _ = writeln!(
            s,
            r#"    <line id="arrow-{i}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" marker-end="url(#arrowhead)"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// Canvas endpoints of an arrow, pulled back so they start and end at circle edges.
fn shorten(c: &Canvas, from: PlanePoint, to: PlanePoint) -> ((f64, f64), (f64, f64)) {
    let (ax, ay) = (c.x(from.adherence), c.y(from.accuracy));
    let (bx, by) = (c.x(to.adherence), c.y(to.accuracy));
    let (dx, dy) = (bx - ax, by - ay);
    let len = (dx * dx + dy * dy).sqrt();
    let gap = POINT_RADIUS + 2.0;
    if len <= 2.0 * gap {
        return ((ax, ay), (bx, by));
    }
    let (ux, uy) = (dx / len, dy / len);
    ((ax + ux * gap, ay + uy * gap), (bx - ux * gap, by - uy * gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plot::{Arrow, PlotPoint};
    use crate::reliance::AiAccuracy;

    fn spec() -> PlotSpec {
        PlotSpec::new(AiAccuracy::new(0.7).unwrap())
    }

    #[test]
    fn ids_are_sanitized() {
        assert_eq!(point_id("ctrl"), "pt-ctrl");
        assert_eq!(point_id("with space/x"), "pt-with_space_x");
    }

    #[test]
    fn empty_overlay_has_region_and_guides_only() {
        let svg = render(&spec()).unwrap();
        for id in ["region-below", "region-above", "line-nondiscern", "line-matched"] {
            assert!(svg.contains(&format!("id=\"{id}\"")), "missing {id}");
        }
        assert!(!svg.contains("<circle"));
        assert!(!svg.contains("id=\"arrow-"));
    }

    #[test]
    fn point_outside_region_rejected() {
        let mut s = spec();
        s.points.push(PlotPoint::new("bad", 0.2, 0.9));
        assert_eq!(
            render(&s),
            Err(PlotError::PointOutsideEnvelope {
                label: "bad".into(),
                adherence: 0.2,
                final_accuracy: 0.9
            })
        );
    }

    #[test]
    fn arrows_must_reference_points() {
        let mut s = spec();
        s.points.push(PlotPoint::new("a", 0.5, 0.5));
        s.arrows.push(Arrow { from: 0, to: 1 });
        assert!(matches!(render(&s), Err(PlotError::ArrowOutOfRange { point: 1, .. })));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut s = spec();
        s.points.push(PlotPoint::new("a b", 0.5, 0.5));
        s.points.push(PlotPoint::new("a_b", 0.5, 0.5));
        assert!(matches!(render(&s), Err(PlotError::DuplicateLabel(..))));
    }

    #[test]
    fn boundary_points_are_neutral() {
        let mut s = spec();
        s.points.push(PlotPoint::new("on", 0.8, 0.7));
        s.points.push(PlotPoint::new("up", 0.7, 0.9));
        s.points.push(PlotPoint::new("down", 0.5, 0.5));
        let svg = render(&s).unwrap();
        assert!(svg.contains(r#"id="pt-on" class="point-neutral""#));
        assert!(svg.contains(r#"id="pt-up" class="point-complementing""#));
        assert!(svg.contains(r#"id="pt-down" class="point-impairing""#));
    }

    #[test]
    fn labels_are_escaped() {
        let mut s = spec();
        s.points.push(PlotPoint::new("a<b&c", 0.5, 0.5));
        let svg = render(&s).unwrap();
        assert!(svg.contains(">a&lt;b&amp;c</text>"));
    }
}
