use serde::Serialize;

use crate::reliance::{envelope, AiAccuracy};

/// A point in the adherence/accuracy plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanePoint {
    pub adherence: f64,
    pub accuracy: f64,
}

impl PlanePoint {
    pub const fn new(adherence: f64, accuracy: f64) -> Self {
        PlanePoint {
            adherence,
            accuracy,
        }
    }
}

/// Convex polygon, vertices in order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon {
    pub vertices: Vec<PlanePoint>,
}

impl Polygon {
    /// Inclusive point-in-convex-polygon test; `tolerance` widens every edge outward.
    pub fn contains(&self, p: PlanePoint, tolerance: f64) -> bool {
        let n = self.vertices.len();
        let mut sign = 0.0_f64;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (ex, ey) = (b.adherence - a.adherence, b.accuracy - a.accuracy);
            let len = (ex * ex + ey * ey).sqrt();
            if len == 0.0 {
                continue;
            }
            // signed distance from the edge line
            let d = (ex * (p.accuracy - a.accuracy) - ey * (p.adherence - a.adherence)) / len;
            if d.abs() <= tolerance {
                continue;
            }
            if sign == 0.0 {
                sign = d.signum();
            } else if d.signum() != sign {
                return false;
            }
        }
        true
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let twice: f64 = (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a.adherence * b.accuracy - b.adherence * a.accuracy
            })
            .sum();
        twice.abs() / 2.0
    }

    pub fn min_adherence(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.adherence)
            .fold(f64::INFINITY, f64::min)
    }
}

/// The attainable region and its split at `accuracy = acc`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionGeometry {
    pub full: Polygon,
    /// Final accuracy below the AI's (impairment).
    pub below: Polygon,
    /// Final accuracy above the AI's (complementarity).
    pub above: Polygon,
}

pub fn region_geometry(acc: AiAccuracy) -> RegionGeometry {
    let p = acc.value();
    let left = PlanePoint::new(0.0, 1.0 - p);
    let top = PlanePoint::new(p, 1.0);
    let right = PlanePoint::new(1.0, p);
    let bottom = PlanePoint::new(1.0 - p, 0.0);
    let split = PlanePoint::new(2.0 * p - 1.0, p);
    RegionGeometry {
        full: Polygon {
            vertices: vec![left, top, right, bottom],
        },
        below: Polygon {
            vertices: vec![left, split, right, bottom],
        },
        above: Polygon {
            vertices: vec![split, top, right],
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub from: PlanePoint,
    pub to: PlanePoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuideLines {
    /// Expected accuracy of non-discerning reliance.
    pub nondiscern: Segment,
    /// Vertical at `A = acc`, the only adherence where every decision can be right.
    pub matched: Segment,
}

pub fn guide_lines(acc: AiAccuracy) -> GuideLines {
    let p = acc.value();
    let env = envelope(acc, acc.fraction());
    GuideLines {
        nondiscern: Segment {
            from: PlanePoint::new(0.0, 1.0 - p),
            to: PlanePoint::new(1.0, p),
        },
        matched: Segment {
            from: PlanePoint::new(p, env.lo().value()),
            to: PlanePoint::new(p, env.hi().value()),
        },
    }
}
