//! Deterministic JSON / CSV / SVG output.
//!
//! All floats are written in scientific notation with 12 significant digits,
//! so identical results give byte-identical files on every platform.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::error::Result;

pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "NA".to_string()
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), fmt_real)
}

fn fmt_flag(x: Option<bool>) -> String {
    x.map_or_else(|| "NA".to_string(), |b| b.to_string())
}

struct FixedFloats;

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn write_null<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        CompactFormatter.write_null(writer)
    }
}

/// Compact JSON with fixed float formatting and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// One row per k (or per step) for CSV output.
pub trait CsvTable {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn to_csv(table: &dyn CsvTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(table.header())?;
    for row in table.rows() {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn emit_report<T: Serialize + CsvTable>(result: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(result),
        Format::Csv => to_csv(result),
    }
}

pub(crate) fn csv_cells_real(values: &[Option<f64>]) -> Vec<String> {
    values.iter().map(|v| fmt_opt(*v)).collect()
}

pub(crate) fn csv_cells_flag(values: &[Option<bool>]) -> Vec<String> {
    values.iter().map(|v| fmt_flag(*v)).collect()
}

/// A line chart: one data polyline and one horizontal reference line.
pub struct LinePlot<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub points: &'a [(f64, f64)],
    pub reference: f64,
    pub reference_label: &'a str,
    pub log_x: bool,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 60.0;

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

pub fn emit_svg(plot: &LinePlot<'_>) -> String {
    let tx = |x: f64| if plot.log_x { x.log2() } else { x };
    let xs: Vec<f64> = plot.points.iter().map(|p| tx(p.0)).collect();
    let ys: Vec<f64> = plot.points.iter().map(|p| p.1).chain([plot.reference]).collect();
    let (x0, x1) = bounds_of(&xs);
    let (y0, y1) = bounds_of(&ys);
    let pad = 0.08 * (y1 - y0).max(1e-12);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0).max(1e-12) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = WIDTH,
        h = HEIGHT
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
        coord(WIDTH / 2.0),
        escape(plot.title)
    ));
    // axes
    s.push_str(&format!(
        "<g stroke=\"black\" stroke-width=\"1\"><line class=\"axis\" x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\"/><line class=\"axis\" x1=\"{m}\" y1=\"{b}\" x2=\"{m}\" y2=\"{t}\"/></g>\n",
        m = coord(MARGIN),
        b = coord(HEIGHT - MARGIN),
        r = coord(WIDTH - MARGIN),
        t = coord(MARGIN)
    ));
    for (i, p) in plot.points.iter().enumerate() {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            coord(sx(xs[i])),
            coord(HEIGHT - MARGIN + 16.0),
            p.0
        ));
    }
    for y in [y0 + pad, plot.reference, y1 - pad] {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{:.4}</text>\n",
            coord(MARGIN - 6.0),
            coord(sy(y) + 4.0),
            y
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
        coord(WIDTH / 2.0),
        coord(HEIGHT - 16.0),
        escape(plot.x_label)
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{y}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 {y})\">{}</text>\n",
        escape(plot.y_label),
        y = coord(HEIGHT / 2.0)
    ));
    // reference line
    let ry = coord(sy(plot.reference));
    s.push_str(&format!(
        "<line class=\"reference\" x1=\"{}\" y1=\"{ry}\" x2=\"{}\" y2=\"{ry}\" stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n",
        coord(MARGIN),
        coord(WIDTH - MARGIN)
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"firebrick\">{}</text>\n",
        coord(WIDTH - MARGIN),
        coord(sy(plot.reference) - 6.0),
        escape(plot.reference_label)
    ));
    let pts: Vec<String> =
        xs.iter().zip(plot.points).map(|(&x, p)| format!("{},{}", coord(sx(x)), coord(sy(p.1)))).collect();
    s.push_str(&format!(
        "<polyline class=\"data\" points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));
    for p in &pts {
        let (cx, cy) = p.split_once(',').unwrap();
        s.push_str(&format!("<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"steelblue\"/>\n"));
    }
    s.push_str("</svg>\n");
    s
}

fn bounds_of(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
