// SPDX-License-Identifier: MIT OR Apache-2.0

//! SVG plot: one panel per channel with dashed breakpoint markers.

use std::fmt::Write as _;

use apts_core::MultiSeries;

const WIDTH: f64 = 800.0;
const PANEL: f64 = 140.0;
const MARGIN: f64 = 20.0;

/// Renders every channel as a polyline in its own panel and draws a dashed
/// vertical line at each breakpoint in every panel.
pub fn render(series: &MultiSeries, breakpoints: &[usize], title: &str) -> String {
    let n = series.n_channels();
    let height = n as f64 * PANEL + MARGIN;
    let horizon = series.horizon().max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let x_of = |t: f64| MARGIN + plot_w * t / horizon;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    for (i, ch) in series.channels().iter().enumerate() {
        let top = MARGIN + i as f64 * PANEL;
        let inner = PANEL - MARGIN;
        let lo = ch.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ch.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = if hi > lo { hi - lo } else { 1.0 };
        let y_of = |v: f64| top + inner * (1.0 - (v - lo) / span);

        let _ = writeln!(out, r#"<g class="panel" id="channel-{i}">"#);
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN}" y="{top}" width="{plot_w}" height="{inner}" fill="none" stroke="#999" stroke-width="0.5"/>"##
        );
        let points: Vec<String> = ch
            .iter()
            .enumerate()
            .map(|(t, &v)| format!("{:.2},{:.2}", x_of(t as f64), y_of(v)))
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1.2" points="{}"/>"##,
            points.join(" ")
        );
        for &b in breakpoints {
            let x = x_of(b as f64);
            let _ = writeln!(
                out,
                r##"<line class="breakpoint" x1="{x:.2}" y1="{top}" x2="{x:.2}" y2="{:.2}" stroke="#d62728" stroke-width="1" stroke-dasharray="4 3"/>"##,
                top + inner
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
