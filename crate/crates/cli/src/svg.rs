//! Minimal self-contained SVG plotting: log-log scatter/line plots for
//! scaling studies and a linear plot for time series. Output is plain
//! deterministic text with no external dependencies.

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
    pub dashed: bool,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

pub const PALETTE: [&str; 6] = ["#1b6ca8", "#c0392b", "#1e8449", "#7d3c98", "#b7950b", "#34495e"];

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log: bool,
}

impl Frame {
    fn x_px(&self, x: f64) -> f64 {
        let t = if self.log { x.log10() } else { x };
        MARGIN_L + (t - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn y_px(&self, y: f64) -> f64 {
        let t = if self.log { y.log10() } else { y };
        HEIGHT - MARGIN_B - (t - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn bounds(series: &[Series], log: bool) -> Frame {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            let (tx, ty) = if log { (x.log10(), y.log10()) } else { (x, y) };
            x_min = x_min.min(tx);
            x_max = x_max.max(tx);
            y_min = y_min.min(ty);
            y_max = y_max.max(ty);
        }
    }
    let pad = |lo: &mut f64, hi: &mut f64| {
        let span = (*hi - *lo).max(1e-12);
        *lo -= 0.05 * span;
        *hi += 0.05 * span;
    };
    pad(&mut x_min, &mut x_max);
    pad(&mut y_min, &mut y_max);
    Frame {
        x0: x_min,
        x1: x_max,
        y0: y_min,
        y1: y_max,
        log,
    }
}

fn axes(out: &mut String, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    let left = MARGIN_L;
    let right = WIDTH - MARGIN_R;
    let top = MARGIN_T;
    let bottom = HEIGHT - MARGIN_B;
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
        fmt(left),
        fmt(top),
        fmt(right - left),
        fmt(bottom - top)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        fmt((left + right) / 2.0),
        title
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
        fmt((left + right) / 2.0),
        fmt(HEIGHT - 14.0),
        x_label
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        fmt((top + bottom) / 2.0),
        fmt((top + bottom) / 2.0),
        y_label
    ));

    // Ticks: decades in log mode, five uniform ticks otherwise.
    let ticks = |lo: f64, hi: f64, log: bool| -> Vec<(f64, String)> {
        if log {
            let mut t = Vec::new();
            let mut k = lo.ceil() as i64;
            while (k as f64) <= hi {
                t.push((k as f64, format!("1e{k}")));
                k += 1;
            }
            if t.len() < 2 {
                t = (0..=4)
                    .map(|i| {
                        let v = lo + (hi - lo) * i as f64 / 4.0;
                        (v, format!("{:.2}", 10f64.powf(v)))
                    })
                    .collect();
            }
            t
        } else {
            (0..=4)
                .map(|i| {
                    let v = lo + (hi - lo) * i as f64 / 4.0;
                    (v, format!("{v:.3}"))
                })
                .collect()
        }
    };
    for (v, label) in ticks(frame.x0, frame.x1, frame.log) {
        let x = MARGIN_L + (v - frame.x0) / (frame.x1 - frame.x0) * (WIDTH - MARGIN_L - MARGIN_R);
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#444\"/>\n",
            fmt(x),
            fmt(bottom),
            fmt(bottom + 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
            fmt(x),
            fmt(bottom + 18.0),
            label
        ));
    }
    for (v, label) in ticks(frame.y0, frame.y1, frame.log) {
        let y = bottom - (v - frame.y0) / (frame.y1 - frame.y0) * (bottom - top);
        out.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#444\"/>\n",
            fmt(y),
            fmt(left - 5.0),
            fmt(left)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
            fmt(left - 8.0),
            fmt(y + 4.0),
            label
        ));
    }
}

fn draw(series: &[Series], frame: &Frame, title: &str, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    axes(&mut out, frame, title, x_label, y_label);
    for s in series {
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(frame.x_px(x)), fmt(frame.y_px(y))))
            .collect();
        let dash = if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.7\"{}/>\n",
            path.join(" "),
            s.color,
            dash
        ));
        if !s.dashed {
            for &(x, y) in &s.points {
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n",
                    fmt(frame.x_px(x)),
                    fmt(frame.y_px(y)),
                    s.color
                ));
            }
        }
    }
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_T + 16.0 + 16.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"{4}/>\n",
            fmt(MARGIN_L + 10.0),
            fmt(y - 4.0),
            fmt(MARGIN_L + 34.0),
            s.color,
            if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" }
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            fmt(MARGIN_L + 40.0),
            fmt(y),
            s.label
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Log-log plot; every coordinate must be strictly positive.
pub fn log_log_plot(series: &[Series], title: &str, x_label: &str, y_label: &str) -> String {
    let frame = bounds(series, true);
    draw(series, &frame, title, x_label, y_label)
}

/// Linear-axis plot for time series.
pub fn linear_plot(series: &[Series], title: &str, x_label: &str, y_label: &str) -> String {
    let frame = bounds(series, false);
    draw(series, &frame, title, x_label, y_label)
}
