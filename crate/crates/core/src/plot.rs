//! Plot emission for the CSV files this crate writes: a gnuplot script that
//! reads the CSV directly, plus a small self-rendered SVG for growth and
//! ratio data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::io::atomic_write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    /// `vertex,r,ball_size`; log-scale y.
    Growth,
    /// `n,min_boundary,method,witness`.
    Profile,
    /// Bound report rows; `eii_ratio` per set.
    Ratio,
}

impl PlotKind {
    pub fn from_header(header: &csv::StringRecord) -> Result<Self> {
        let cols: Vec<&str> = header.iter().collect();
        match cols.as_slice() {
            ["vertex", "r", "ball_size"] => Ok(PlotKind::Growth),
            ["n", "min_boundary", "method", "witness"] => Ok(PlotKind::Profile),
            ["set_id", "size", "boundary", "eii_ratio", ..] => Ok(PlotKind::Ratio),
            _ => Err(Error::Schema(format!("unrecognized CSV header: {}", cols.join(",")))),
        }
    }
}

/// One named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub kind: PlotKind,
    pub series: Vec<Series>,
    /// x tick labels for categorical axes.
    pub labels: Vec<String>,
}

fn field(rec: &csv::StringRecord, i: usize, line: usize) -> Result<f64> {
    rec.get(i)
        .and_then(|s| s.parse::<f64>().ok())
        .ok_or_else(|| Error::Schema(format!("row {line}: column {} is not a number", i + 1)))
}

pub fn read_plot_data(csv_path: &Path) -> Result<PlotData> {
    let mut rdr = csv::Reader::from_path(csv_path)?;
    let kind = PlotKind::from_header(rdr.headers()?)?;
    let mut series: Vec<Series> = Vec::new();
    let mut labels = Vec::new();
    let mut rows = 0usize;
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        rows += 1;
        let (name, point) = match kind {
            PlotKind::Growth => (rec[0].to_string(), (field(&rec, 1, line)?, field(&rec, 2, line)?)),
            PlotKind::Profile => (rec[2].to_string(), (field(&rec, 0, line)?, field(&rec, 1, line)?)),
            PlotKind::Ratio => {
                labels.push(rec[0].to_string());
                if rec[3].is_empty() {
                    continue;
                }
                ("eii_ratio".to_string(), (i as f64, field(&rec, 3, line)?))
            }
        };
        match series.iter_mut().find(|s| s.name == name) {
            Some(s) => s.points.push(point),
            None => series.push(Series { name, points: vec![point] }),
        }
    }
    if rows == 0 {
        return Err(Error::Schema(format!("{} has no data rows", csv_path.display())));
    }
    Ok(PlotData { kind, series, labels })
}

fn gp_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Gnuplot script reproducing the figure from `csv_name` (as referenced
/// from the script's directory).
pub fn gnuplot_script(data: &PlotData, csv_name: &str, svg_name: &str) -> String {
    let mut s = String::new();
    let file = gp_quote(csv_name);
    let _ = writeln!(s, "set terminal svg size 640,400");
    let _ = writeln!(s, "set output {}", gp_quote(svg_name));
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key top left");
    match data.kind {
        PlotKind::Growth => {
            let _ = writeln!(s, "set logscale y");
            let _ = writeln!(s, "set xlabel 'r'");
            let _ = writeln!(s, "set ylabel '|B(v,r)|'");
            let clauses: Vec<String> = data
                .series
                .iter()
                .map(|se| {
                    format!(
                        "{file} skip 1 using 2:(strcol(1) eq \"{}\" ? $3 : NaN) with linespoints title {}",
                        se.name.replace('"', "\\\""),
                        gp_quote(&se.name)
                    )
                })
                .collect();
            let _ = writeln!(s, "plot {}", clauses.join(", \\\n     "));
        }
        PlotKind::Profile => {
            let _ = writeln!(s, "set xlabel 'n'");
            let _ = writeln!(s, "set ylabel 'min |boundary|'");
            let _ = writeln!(s, "plot {file} skip 1 using 1:2 with linespoints title 'min boundary'");
        }
        PlotKind::Ratio => {
            let _ = writeln!(s, "set xlabel 'set'");
            let _ = writeln!(s, "set ylabel 'eii ratio'");
            let _ = writeln!(s, "set yrange [0:*]");
            let _ = writeln!(s, "plot {file} skip 1 using 0:4:xtic(1) with linespoints title 'eii ratio'");
        }
    }
    s
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const M: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Minimal SVG line chart; y is log10-scaled for growth data.
pub fn render_svg(data: &PlotData) -> String {
    let log_y = data.kind == PlotKind::Growth;
    let ty = |y: f64| if log_y { y.max(1e-300).log10() } else { y };
    let pts = data.series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(ty(y));
        y1 = y1.max(ty(y));
    }
    if !log_y {
        y0 = y0.min(0.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let px = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (ty(y) - y0) / (y1 - y0) * (H - 2.0 * M);
    let untransform = |v: f64| if log_y { 10f64.powf(v) } else { v };

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{M} {} L{M} {M} M{M} {} L{} {}" stroke="black" fill="none"/>"#,
        H - M,
        H - M,
        W - M,
        H - M
    );
    for (frac, anchor) in [(0.0, "start"), (1.0, "end")] {
        let xv = x0 + frac * (x1 - x0);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="{anchor}">{}</text>"#,
            px(xv),
            H - M + 18.0,
            tick(xv)
        );
        let yv = y0 + frac * (y1 - y0);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end">{}</text>"#,
            M - 6.0,
            H - M - frac * (H - 2.0 * M) + 4.0,
            tick(untransform(yv))
        );
    }
    let (xl, yl) = match data.kind {
        PlotKind::Growth => ("r", "|B(v,r)| (log scale)"),
        PlotKind::Profile => ("n", "min |boundary|"),
        PlotKind::Ratio => ("set", "eii ratio"),
    };
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{xl}</text>"#, W / 2.0, H - 12.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{yl}</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (i, se) in data.series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = se.points.iter().map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"><title>{}</title></polyline>"#,
            path.join(" "),
            xml_escape(&se.name)
        );
    }
    if data.kind == PlotKind::Ratio {
        for (i, label) in data.labels.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"#,
                px(i as f64),
                H - M + 32.0,
                xml_escape(label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e5 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotOutput {
    pub kind: PlotKind,
    pub script: PathBuf,
    pub svg: Option<PathBuf>,
}

/// Writes the gnuplot script to `script` (default: the CSV path with a
/// `.gp` extension) and, for growth and ratio data, the rendered SVG next to
/// it. Nothing is written if the CSV does not parse.
pub fn emit_plot(csv_path: &Path, script: Option<&Path>) -> Result<PlotOutput> {
    let data = read_plot_data(csv_path)?;
    let script = script.map(Path::to_path_buf).unwrap_or_else(|| csv_path.with_extension("gp"));
    let svg = script.with_extension("svg");
    let csv_ref = relative_to(csv_path, script.parent());
    let svg_name = svg.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let text = gnuplot_script(&data, &csv_ref, &svg_name);
    let rendered = matches!(data.kind, PlotKind::Growth | PlotKind::Ratio).then(|| render_svg(&data));
    atomic_write(&script, text.as_bytes())?;
    if let Some(r) = &rendered {
        atomic_write(&svg, r.as_bytes())?;
    }
    Ok(PlotOutput { kind: data.kind, script, svg: rendered.map(|_| svg) })
}

/// `csv_path` as seen from `dir` when it lies inside it, else as given.
fn relative_to(csv_path: &Path, dir: Option<&Path>) -> String {
    match (csv_path.parent(), dir) {
        (Some(a), Some(b)) if a == b => csv_path.file_name().unwrap().to_string_lossy().into_owned(),
        _ => csv_path.to_string_lossy().into_owned(),
    }
}
