//! SVG strength plot: one polyline per level of mean level value vs step.
//!
//! Output is a plain string built in a fixed order with fixed number
//! formatting, so identical traces render byte-identical documents.

use thiserror::Error;

use crate::dynamics::Trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("trace contains no rows")]
    EmptyTrace,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 110.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 48.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

pub fn render_strength_plot(trace: &Trace) -> Result<String, PlotError> {
    if trace.rows.is_empty() {
        return Err(PlotError::EmptyTrace);
    }
    let levels = trace.config.levels;
    let max_step = trace.max_step();

    // Mean value per level per step.
    let series: Vec<Vec<f64>> = (1..=levels)
        .map(|level| {
            (0..=max_step)
                .map(|step| trace.mean_level_value(step, level).unwrap_or(0.0))
                .collect()
        })
        .collect();

    let max_value = series
        .iter()
        .flatten()
        .copied()
        .fold(0.0f64, f64::max)
        .max(1e-12);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |step: u64| {
        if max_step == 0 {
            MARGIN_LEFT + plot_w / 2.0
        } else {
            MARGIN_LEFT + plot_w * step as f64 / max_step as f64
        }
    };
    let y_of = |v: f64| MARGIN_TOP + plot_h * (1.0 - v / max_value);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));

    // Axes.
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h;
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0),
        fmt(y0),
        fmt(MARGIN_LEFT + plot_w),
        fmt(y0)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0),
        fmt(MARGIN_TOP),
        fmt(x0),
        fmt(y0)
    ));

    // X ticks at integer steps, thinned to at most 13 labels.
    let stride = (max_step / 12).max(1);
    let mut step = 0;
    while step <= max_step {
        let x = x_of(step);
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
            fmt(x),
            fmt(y0),
            fmt(y0 + 4.0)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            fmt(x),
            fmt(y0 + 18.0),
            step
        ));
        if max_step == 0 {
            break;
        }
        step += stride;
    }

    // Y ticks.
    for i in 0..=4 {
        let v = max_value * i as f64 / 4.0;
        let y = y_of(v);
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"black\"/>\n",
            fmt(x0 - 4.0),
            fmt(x0),
            fmt(y)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.1}</text>\n",
            fmt(x0 - 8.0),
            fmt(y + 4.0),
            v
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">step</text>\n",
        fmt(MARGIN_LEFT + plot_w / 2.0),
        fmt(HEIGHT - 8.0)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">mean signal</text>\n",
        14.0,
        fmt(MARGIN_TOP + plot_h / 2.0),
        fmt(MARGIN_TOP + plot_h / 2.0)
    ));

    // One polyline per level; single-step traces degenerate to markers.
    for (i, values) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if max_step == 0 {
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\"/>\n",
                fmt(x_of(0)),
                fmt(y_of(values[0])),
                color
            ));
        } else {
            let points: Vec<String> = values
                .iter()
                .enumerate()
                .map(|(step, v)| format!("{},{}", fmt(x_of(step as u64)), fmt(y_of(*v))))
                .collect();
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                color,
                points.join(" ")
            ));
        }
        // Legend entry.
        let ly = MARGIN_TOP + 16.0 * i as f64;
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n",
            fmt(WIDTH - MARGIN_RIGHT + 16.0),
            fmt(ly),
            color
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">level {}</text>\n",
            fmt(WIDTH - MARGIN_RIGHT + 32.0),
            fmt(ly + 9.0),
            i + 1
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
