//! SVG rendering of the adherence/accuracy plane.
//!
//! Coordinate mapping: the unit square maps onto the canvas with a 10% margin on each
//! side, x to the right and y inverted, so `(A, acc)` lands at
//! `(0.1w + A * 0.8w, 0.9h - acc * 0.8h)`. Coordinates are written with two decimals.
//!
//! Element ids: `region-below`, `region-above`, `line-nondiscern`, `line-matched`,
//! `pt-<label>`, `arrow-<i>`.

mod geometry;
mod svg;

pub use geometry::{guide_lines, region_geometry, GuideLines, PlanePoint, Polygon, RegionGeometry, Segment};
pub use svg::{point_id, render};

use serde::Serialize;
use thiserror::Error;

use crate::reliance::AiAccuracy;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    #[error("point {label:?} at ({adherence}, {final_accuracy}) lies outside the attainable region")]
    PointOutsideEnvelope {
        label: String,
        adherence: f64,
        final_accuracy: f64,
    },

    #[error("arrow {index} references point {point}, but only {count} points exist")]
    ArrowOutOfRange {
        index: usize,
        point: usize,
        count: usize,
    },

    #[error("point labels {0:?} and {1:?} map to the same element id")]
    DuplicateLabel(String, String),

    #[error("invalid color {0:?}")]
    InvalidColor(String),

    #[error("invalid palette entry {0:?}; expected key=color with key one of region-below, region-above, line, matched, marker")]
    InvalidPalette(String),

    #[error("canvas must have positive finite size, got {width} x {height}")]
    InvalidCanvas { width: f64, height: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Canvas {
    pub width: f64,
    pub height: f64,
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas {
            width: 600.0,
            height: 600.0,
        }
    }
}

impl Canvas {
    pub const MARGIN: f64 = 0.1;

    pub fn x(&self, adherence: f64) -> f64 {
        self.width * Self::MARGIN + adherence * self.width * (1.0 - 2.0 * Self::MARGIN)
    }

    pub fn y(&self, accuracy: f64) -> f64 {
        self.height * (1.0 - Self::MARGIN) - accuracy * self.height * (1.0 - 2.0 * Self::MARGIN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Palette {
    pub region_below: String,
    pub region_above: String,
    pub line: String,
    pub matched: String,
    pub marker: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            region_below: "#d62728".into(),
            region_above: "#2ca02c".into(),
            line: "#000000".into(),
            matched: "#2ca02c".into(),
            marker: "#000000".into(),
        }
    }
}

fn check_color(color: &str) -> Result<(), PlotError> {
    let ok = !color.is_empty()
        && color
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '#' | '(' | ')' | ',' | '.' | ' ' | '%'));
    if ok {
        Ok(())
    } else {
        Err(PlotError::InvalidColor(color.to_string()))
    }
}

impl Palette {
    pub fn set(&mut self, key: &str, color: &str) -> Result<(), PlotError> {
        let color = color.trim();
        check_color(color)?;
        let slot = match key.trim() {
            "region-below" => &mut self.region_below,
            "region-above" => &mut self.region_above,
            "line" => &mut self.line,
            "matched" => &mut self.matched,
            "marker" | "markers" => &mut self.marker,
            other => return Err(PlotError::InvalidPalette(other.to_string())),
        };
        *slot = color.to_string();
        Ok(())
    }

    /// Applies overrides of the form `region-below=#aa0000,marker=black`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, PlotError> {
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (key, color) = entry
                .split_once('=')
                .ok_or_else(|| PlotError::InvalidPalette(entry.to_string()))?;
            self.set(key, color)?;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotPoint {
    pub label: String,
    pub adherence: f64,
    pub final_accuracy: f64,
    /// Fill color; the palette marker color when `None`.
    pub fill: Option<String>,
}

impl PlotPoint {
    pub fn new(label: impl Into<String>, adherence: f64, final_accuracy: f64) -> Self {
        PlotPoint {
            label: label.into(),
            adherence,
            final_accuracy,
            fill: None,
        }
    }

    pub fn with_fill(mut self, color: impl Into<String>) -> Self {
        self.fill = Some(color.into());
        self
    }
}

/// An arrow between two points, by index into [`PlotSpec::points`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSpec {
    pub acc: AiAccuracy,
    pub points: Vec<PlotPoint>,
    pub arrows: Vec<Arrow>,
    pub canvas: Canvas,
    pub palette: Palette,
}

impl PlotSpec {
    pub fn new(acc: AiAccuracy) -> Self {
        PlotSpec {
            acc,
            points: Vec::new(),
            arrows: Vec::new(),
            canvas: Canvas::default(),
            palette: Palette::default(),
        }
    }
}
