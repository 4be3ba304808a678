//! Deterministic SVG rendering of sweep results: SNR and SJR per target
//! against range, with a labelled detection-threshold line.

use crate::error::{Error, Result};
use crate::scenario::SweepRow;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 210.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Axis scaling and threshold annotation for a sweep chart.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    /// Logarithmic range axis (the default); linear otherwise.
    pub log_x: bool,
    /// Horizontal detection-threshold line, in dB.
    pub threshold_db: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            log_x: true,
            threshold_db: 0.0,
        }
    }
}

struct Series {
    label: String,
    color: &'static str,
    dashed: bool,
    points: Vec<(f64, f64)>,
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Render sweep rows to a self-contained SVG document. Identical input
/// produces identical bytes.
pub fn render_plot(rows: &[SweepRow], spec: &PlotSpec) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::usage("cannot plot an empty sweep"));
    }

    let mut series: Vec<Series> = Vec::new();
    let n_targets = rows[0].targets.len();
    for t in 0..n_targets {
        let name = &rows[0].targets[t].name;
        let rcs = rows[0].targets[t].rcs_m2;
        let color = PALETTE[t % PALETTE.len()];
        let snr_points: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r.range_km, r.targets[t].snr_db))
            .collect();
        series.push(Series {
            label: format!("SNR {name} (sigma={rcs} m2)"),
            color,
            dashed: false,
            points: snr_points,
        });
        if rows[0].targets[t].sjr_db.is_some() {
            let sjr_points: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| (r.range_km, r.targets[t].sjr_db.unwrap()))
                .collect();
            series.push(Series {
                label: format!("SJR {name} (sigma={rcs} m2)"),
                color,
                dashed: true,
                points: sjr_points,
            });
        }
    }

    let x_min = rows.first().unwrap().range_km;
    let x_max = rows.last().unwrap().range_km;
    if spec.log_x && !(x_min > 0.0) {
        return Err(Error::domain("log axis requires positive ranges"));
    }
    let mut y_min = spec.threshold_db;
    let mut y_max = spec.threshold_db;
    for s in &series {
        for &(_, y) in &s.points {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    // pad to the next 10 dB grid line
    let y_min = (y_min / 10.0).floor() * 10.0 - 10.0;
    let y_max = (y_max / 10.0).ceil() * 10.0 + 10.0;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |x: f64| -> f64 {
        let t = if spec.log_x {
            if x_max == x_min {
                0.5
            } else {
                (x.log10() - x_min.log10()) / (x_max.log10() - x_min.log10())
            }
        } else if x_max == x_min {
            0.5
        } else {
            (x - x_min) / (x_max - x_min)
        };
        MARGIN_LEFT + t * plot_w
    };
    let y_of = |y: f64| -> f64 {
        MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">SNR and SJR vs range</text>\n",
        fmt(MARGIN_LEFT + plot_w / 2.0)
    ));

    // y grid every 10 dB
    let mut y_tick = y_min;
    while y_tick <= y_max + 1e-9 {
        let py = y_of(y_tick);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            fmt(MARGIN_LEFT),
            fmt(py),
            fmt(MARGIN_LEFT + plot_w),
            fmt(py)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            fmt(MARGIN_LEFT - 6.0),
            fmt(py + 4.0),
            y_tick
        ));
        y_tick += 10.0;
    }

    // x ticks at each data range
    for row in rows {
        let px = x_of(row.range_km);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n",
            fmt(px),
            fmt(MARGIN_TOP),
            fmt(px),
            fmt(MARGIN_TOP + plot_h)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            fmt(px),
            fmt(MARGIN_TOP + plot_h + 16.0),
            row.range_km
        ));
    }

    // axes
    svg.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        fmt(MARGIN_LEFT),
        fmt(MARGIN_TOP),
        fmt(plot_w),
        fmt(plot_h)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">range (km{})</text>\n",
        fmt(MARGIN_LEFT + plot_w / 2.0),
        fmt(HEIGHT - 16.0),
        if spec.log_x { ", log scale" } else { "" }
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">dB</text>\n",
        fmt(MARGIN_TOP + plot_h / 2.0),
        fmt(MARGIN_TOP + plot_h / 2.0)
    ));

    // threshold line
    let ty = y_of(spec.threshold_db);
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"2,3\"/>\n",
        fmt(MARGIN_LEFT),
        fmt(ty),
        fmt(MARGIN_LEFT + plot_w),
        fmt(ty)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">threshold {} dB</text>\n",
        fmt(MARGIN_LEFT + 6.0),
        fmt(ty - 5.0),
        spec.threshold_db
    ));

    // data series
    for s in &series {
        let points = s
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(x_of(x)), fmt(y_of(y))))
            .collect::<Vec<_>>()
            .join(" ");
        let dash = if s.dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        svg.push_str(&format!(
            "<polyline points=\"{points}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"{dash}/>\n",
            s.color
        ));
    }

    // legend
    let legend_x = MARGIN_LEFT + plot_w + 14.0;
    for (i, s) in series.iter().enumerate() {
        let ly = MARGIN_TOP + 14.0 + i as f64 * 18.0;
        let dash = if s.dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.8\"{dash}/>\n",
            fmt(legend_x),
            fmt(ly - 4.0),
            fmt(legend_x + 24.0),
            fmt(ly - 4.0),
            s.color
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            fmt(legend_x + 30.0),
            fmt(ly),
            s.label
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
