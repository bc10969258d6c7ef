use std::fmt::Write as _;

use super::csv::format_float;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 7] = ["#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"];

/// Line plot of `series` against `xs`: one polyline per series plus axes.
pub fn render_svg(title: &str, xs: &[f64], series: &[(String, Vec<f64>)]) -> String {
    let (x_lo, x_hi) = range(xs.iter().copied());
    let (mut y_lo, mut y_hi) = range(series.iter().flat_map(|(_, v)| v.iter().copied()));
    if y_lo == y_hi {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo).max(f64::MIN_POSITIVE) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-size="16" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(s, r#"<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>"#);
    if y_lo < 0.0 && y_hi > 0.0 {
        let y0 = py(0.0);
        let _ = writeln!(s, r#"<line x1="{left}" y1="{y0:.2}" x2="{right}" y2="{y0:.2}" stroke="gray" stroke-dasharray="4 4"/>"#);
    }
    for (v, x, y, anchor) in [
        (x_lo, left, bottom + 18.0, "start"),
        (x_hi, right, bottom + 18.0, "end"),
        (y_lo, left - 6.0, bottom, "end"),
        (y_hi, left - 6.0, top + 4.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" font-size="11" text-anchor="{anchor}">{}</text>"#, short(v));
    }
    for (i, (name, ys)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = xs
            .iter()
            .zip(ys)
            .filter(|(_, y)| y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#, points.join(" "));
        let ly = top + 16.0 * (i as f64 + 1.0);
        let _ = writeln!(s, r#"<text x="{}" y="{ly}" font-size="12" fill="{color}">{}</text>"#, right - 150.0, escape(name));
    }
    s.push_str("</svg>\n");
    s
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn short(v: f64) -> String {
    format_float(format!("{v:.3e}").parse().unwrap_or(v))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
