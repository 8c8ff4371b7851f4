//! SVG line charts of an SSE curve with the elbow marked.
//!
//! Two framings of the same data:
//!
//! * [`PlotMode::Raw`] stretches k and SSE independently over a wide plot
//!   area, which is how most tools draw the curve and tends to exaggerate
//!   early bends.
//! * [`PlotMode::EqualAxis`] maps k and SSE each onto `[0, 1]` and draws
//!   the unit square with equal pixel scale on both axes.
//!
//! The data polyline carries its `(k, SSE)` to pixel transform in `data-*`
//! attributes so vertices can be decoded back into curve values.

use std::fmt::Write as _;
use std::path::Path;

use crate::elbow::SseCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMode {
    Raw,
    EqualAxis,
}

impl PlotMode {
    pub fn file_stem(self) -> &'static str {
        match self {
            PlotMode::Raw => "sse_raw",
            PlotMode::EqualAxis => "sse_equal_axis",
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const RIGHT: f64 = 30.0;

/// Affine map from curve space to pixels: `px = x0 + sx * k`, `py = y0 + sy * sse`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub sx: f64,
    pub y0: f64,
    pub sy: f64,
}

impl Viewport {
    pub fn for_curve(curve: &SseCurve, mode: PlotMode) -> Self {
        let k_max = curve.k_max() as f64;
        let (lo, hi) = curve
            .values()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let k_span = k_max - 1.0;
        let y_span = if hi > lo { hi - lo } else { 1.0 };

        let plot_h = HEIGHT - TOP - BOTTOM;
        let plot_w = match mode {
            PlotMode::Raw => WIDTH - LEFT - RIGHT,
            PlotMode::EqualAxis => plot_h,
        };
        let sx = plot_w / k_span;
        let sy = -plot_h / y_span;
        Self {
            x0: LEFT - sx * 1.0,
            sx,
            y0: TOP + plot_h - sy * lo,
            sy,
        }
    }

    pub fn to_pixel(&self, k: f64, sse: f64) -> (f64, f64) {
        (self.x0 + self.sx * k, self.y0 + self.sy * sse)
    }

    pub fn from_pixel(&self, px: f64, py: f64) -> (f64, f64) {
        ((px - self.x0) / self.sx, (py - self.y0) / self.sy)
    }
}

/// Renders the chart as an SVG 1.1 document.
pub fn render_sse_plot(curve: &SseCurve, elbow_k: usize, mode: PlotMode) -> Result<String> {
    if !(1..=curve.k_max()).contains(&elbow_k) {
        return Err(Error::Usage(format!(
            "elbow k = {elbow_k} outside 1..={}",
            curve.k_max()
        )));
    }
    let vp = Viewport::for_curve(curve, mode);
    let values = curve.values();
    let k_max = curve.k_max();
    let plot_h = HEIGHT - TOP - BOTTOM;
    let (x_left, _) = vp.to_pixel(1.0, 0.0);
    let (x_right, _) = vp.to_pixel(k_max as f64, 0.0);
    let y_bottom = TOP + plot_h;

    let mut s = String::new();
    let title = match mode {
        PlotMode::Raw => "SSE by number of clusters",
        PlotMode::EqualAxis => "SSE by number of clusters (equal-axis)",
    };
    // writing into a String cannot fail
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{title}</text>"#,
        (x_left + x_right) / 2.0
    );

    // axes
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{x_left}" y1="{y_bottom}" x2="{x_right}" y2="{y_bottom}"/><line x1="{x_left}" y1="{TOP}" x2="{x_left}" y2="{y_bottom}"/></g>"#
    );
    let step = k_max.div_ceil(12).max(1);
    let _ = writeln!(s, r#"<g class="ticks" font-family="sans-serif" font-size="11">"#);
    for k in (1..=k_max).step_by(step) {
        let (x, _) = vp.to_pixel(k as f64, 0.0);
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{y_bottom}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" text-anchor="middle">{k}</text>"#,
            y_bottom + 5.0,
            y_bottom + 18.0
        );
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    for v in [lo, hi] {
        let (_, y) = vp.to_pixel(1.0, v);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{x_left}" y2="{y}" stroke="black"/><text x="{}" y="{}" text-anchor="end">{}</text>"#,
            x_left - 5.0,
            x_left - 8.0,
            y + 4.0,
            format_tick(v)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">number of clusters k</text>"#,
        (x_left + x_right) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{0}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {0})">SSE</text>"#,
        TOP + plot_h / 2.0
    );

    let points: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (x, y) = vp.to_pixel((i + 1) as f64, v);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline class="sse-curve" fill="none" stroke="#1f77b4" stroke-width="2" data-x0="{}" data-sx="{}" data-y0="{}" data-sy="{}" points="{}"/>"##,
        vp.x0,
        vp.sx,
        vp.y0,
        vp.sy,
        points.join(" ")
    );

    let (ex, ey) = vp.to_pixel(elbow_k as f64, values[elbow_k - 1]);
    let _ = writeln!(
        s,
        r##"<circle class="elbow-marker" cx="{ex}" cy="{ey}" r="6" fill="none" stroke="#d62728" stroke-width="2"/>"##
    );
    let _ = writeln!(
        s,
        r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="#d62728">k = {elbow_k}</text>"##,
        ex + 9.0,
        ey - 9.0
    );
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn emit_sse_plot(
    curve: &SseCurve,
    elbow_k: usize,
    mode: PlotMode,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let svg = render_sse_plot(curve, elbow_k, mode)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

fn format_tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.3e}")
    }
}
