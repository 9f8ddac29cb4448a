//! Standalone SVG charts: predicted performance against observations, and
//! daily load as bars.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::io::PredictionTable;
use crate::model::LoadSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct ChartOptions {
    pub width: f64,
    pub height: f64,
    pub title: String,
    pub y_label: String,
}

impl Default for ChartOptions {
    fn default() -> Self {
        Self { width: 900.0, height: 600.0, title: String::new(), y_label: "performance".into() }
    }
}

/// Margins around the plot area, in document units.
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// Placement of the plot area inside the document.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotArea {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl PlotArea {
    pub fn for_options(options: &ChartOptions) -> Self {
        Self {
            left: LEFT,
            top: TOP,
            width: (options.width - LEFT - RIGHT).max(1.0),
            height: (options.height - TOP - BOTTOM).max(1.0),
        }
    }

    pub fn bottom(&self) -> f64 {
        self.top + self.height
    }
}

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64) -> Self {
        if hi > lo {
            Self { lo, hi }
        } else {
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.05 };
            Self { lo: lo - pad, hi: hi + pad }
        }
    }

    fn fraction(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn open_document(options: &ChartOptions, area: &PlotArea, x_axis: &Axis, y_axis: &Axis) -> String {
    let (w, h) = (options.width, options.height);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r#"<rect class="background" x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    if !options.title.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text class="title" x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
            w / 2.0,
            escape(&options.title)
        );
    }
    let (l, b, r) = (area.left, area.bottom(), area.left + area.width);
    let _ = writeln!(svg, r#"<line class="axis" x1="{l}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line class="axis" x1="{l}" y1="{}" x2="{l}" y2="{b}" stroke="black"/>"#, area.top);
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let x = l + t * area.width;
        let y = b - t * area.height;
        let xv = x_axis.lo + t * (x_axis.hi - x_axis.lo);
        let yv = y_axis.lo + t * (y_axis.hi - y_axis.lo);
        let _ = writeln!(
            svg,
            r#"<text class="tick" x="{x}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
            b + 16.0,
            format_tick(xv)
        );
        let _ = writeln!(
            svg,
            r#"<text class="tick" x="{}" y="{}" text-anchor="end" font-size="11">{}</text>"#,
            l - 6.0,
            y + 4.0,
            format_tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle" font-size="13">day</text>"#,
        l + area.width / 2.0,
        options.height - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="y-label" x="16" y="{}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
        area.top + area.height / 2.0,
        area.top + area.height / 2.0,
        escape(&options.y_label)
    );
    svg
}

fn format_tick(v: f64) -> String {
    if v.abs() >= 100.0 || v == v.round() {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Predicted trajectory as a blue polyline, observations as red circles.
pub fn render_fit_chart(table: &PredictionTable, options: &ChartOptions) -> Result<String> {
    if table.is_empty() {
        return Err(Error::input("cannot chart an empty prediction table"));
    }
    let area = PlotArea::for_options(options);
    let values = table.rows().iter().flat_map(|r| std::iter::once(r.predicted).chain(r.observed));
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let y_axis = Axis::new(lo, hi);
    let x_axis = Axis::new(0.0, (table.len() - 1) as f64);
    let x = |day: usize| area.left + x_axis.fraction(day as f64) * area.width;
    let y = |v: f64| area.bottom() - y_axis.fraction(v) * area.height;

    let mut svg = open_document(options, &area, &x_axis, &y_axis);
    let points: Vec<String> =
        table.rows().iter().map(|r| format!("{:.3},{:.3}", x(r.day), y(r.predicted))).collect();
    let _ = writeln!(
        svg,
        r#"<polyline class="prediction" fill="none" stroke="blue" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    for r in table.rows() {
        if let Some(o) = r.observed {
            let _ = writeln!(
                svg,
                r#"<circle class="observation" cx="{:.3}" cy="{:.3}" r="4" fill="red"/>"#,
                x(r.day),
                y(o)
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One bar per day, height proportional to the load.
pub fn render_load_chart(w: &LoadSeries, options: &ChartOptions) -> Result<String> {
    if w.is_empty() {
        return Err(Error::input("cannot chart an empty load series"));
    }
    let area = PlotArea::for_options(options);
    let max = w.values().iter().copied().fold(0.0, f64::max);
    let y_axis = Axis::new(0.0, max);
    let x_axis = Axis::new(0.0, (w.len() - 1) as f64);
    let slot = area.width / w.len() as f64;

    let mut svg = open_document(options, &area, &x_axis, &y_axis);
    for (day, &load) in w.values().iter().enumerate() {
        let height = y_axis.fraction(load) * area.height;
        let _ = writeln!(
            svg,
            r#"<rect class="bar" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="steelblue"/>"#,
            area.left + day as f64 * slot + 0.1 * slot,
            area.bottom() - height,
            0.8 * slot,
            height
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Load chart options with the y label set for load.
pub fn load_chart_options(width: f64, height: f64, title: &str) -> ChartOptions {
    ChartOptions { width, height, title: title.to_string(), y_label: "load".into() }
}
