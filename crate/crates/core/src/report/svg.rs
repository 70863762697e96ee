//! Static SVG heatmaps. Output depends only on the artifact.

use std::fmt::Write;

use crate::advantage::{RegimeGrid, Strategy};
use crate::centering::CenteringMap;

use super::artifact::{GridArtifact, Provenance};

/// Colour stops at 0, 0.25, 0.5, 0.75 and 1.
pub const RAMP: [&str; 5] = ["#440154", "#3b528b", "#21918c", "#5ec962", "#fde725"];
pub const PEC_COLOR: &str = "#1f77b4";
pub const RAW_COLOR: &str = "#d62728";
pub const NONE_COLOR: &str = "#bdbdbd";
pub const UNDEFINED_COLOR: &str = "#ffffff";

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 300.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 60.0;
const GAP: f64 = 110.0;

fn hex_rgb(c: &str) -> [f64; 3] {
    let v = u32::from_str_radix(&c[1..], 16).expect("static colour");
    [(v >> 16) as f64, ((v >> 8) & 0xff) as f64, (v & 0xff) as f64]
}

/// Linear interpolation on [`RAMP`]; inputs are clamped to `[0, 1]`.
pub fn ramp(x: f64) -> String {
    let x = if x.is_nan() { 0.0 } else { x.clamp(0.0, 1.0) };
    let pos = x * (RAMP.len() - 1) as f64;
    let k = (pos.floor() as usize).min(RAMP.len() - 2);
    let f = pos - k as f64;
    let (a, b) = (hex_rgb(RAMP[k]), hex_rgb(RAMP[k + 1]));
    let c: Vec<u8> = (0..3).map(|i| (a[i] + (b[i] - a[i]) * f).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

pub fn strategy_color(s: Strategy) -> &'static str {
    match s {
        Strategy::Pec => PEC_COLOR,
        Strategy::Raw => RAW_COLOR,
        Strategy::None => NONE_COLOR,
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, width: f64, height: f64, prov: &Provenance, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        "<metadata>config_hash={} version={} seed={} command={}</metadata>",
        escape(&prov.config_hash),
        escape(&prov.version),
        prov.seed,
        escape(&prov.command)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn tick_label(v: f64) -> String {
    let e = v.log10();
    if v > 0.0 && (e - e.round()).abs() < 1e-9 {
        format!("1e{}", e.round() as i64)
    } else {
        format!("{v:.3}")
    }
}

/// Tick positions: both ends plus every exact decade.
fn ticks(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0 && (v.log10() - v.log10().round()).abs() < 1e-9)
        .map(|(i, _)| i)
        .collect();
    idx.push(0);
    idx.push(values.len() - 1);
    idx.sort_unstable();
    idx.dedup();
    idx
}

struct Panel<'a> {
    x0: f64,
    title: &'a str,
    x_label: &'a str,
    y_label: &'a str,
    x_values: Vec<f64>,
    y_values: Vec<f64>,
}

impl Panel<'_> {
    fn cell_size(&self) -> (f64, f64) {
        (PANEL_W / self.x_values.len() as f64, PANEL_H / self.y_values.len() as f64)
    }

    /// Draws one cell; `iy = 0` is the bottom row.
    fn cell(&self, out: &mut String, ix: usize, iy: usize, fill: &str) {
        let (cw, ch) = self.cell_size();
        let x = self.x0 + ix as f64 * cw;
        let y = MARGIN_T + PANEL_H - (iy + 1) as f64 * ch;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
            cw + 0.05,
            ch + 0.05
        );
    }

    fn frame(&self, out: &mut String) {
        let (cw, ch) = self.cell_size();
        let bottom = MARGIN_T + PANEL_H;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{MARGIN_T:.2}" width="{PANEL_W:.2}" height="{PANEL_H:.2}" fill="none" stroke="black"/>"#,
            self.x0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
            self.x0 + PANEL_W / 2.0,
            MARGIN_T - 12.0,
            escape(self.title)
        );
        for i in ticks(&self.x_values) {
            let x = self.x0 + (i as f64 + 0.5) * cw;
            let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, bottom + 4.0);
            let _ = writeln!(
                out,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                bottom + 16.0,
                tick_label(self.x_values[i])
            );
        }
        for i in ticks(&self.y_values) {
            let y = bottom - (i as f64 + 0.5) * ch;
            let _ = writeln!(out, r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#, self.x0 - 4.0, self.x0);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                self.x0 - 6.0,
                y + 4.0,
                tick_label(self.y_values[i])
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            self.x0 + PANEL_W / 2.0,
            bottom + 36.0,
            escape(self.x_label)
        );
        let yc = MARGIN_T + PANEL_H / 2.0;
        let xl = self.x0 - 52.0;
        let _ = writeln!(
            out,
            r#"<text x="{xl:.2}" y="{yc:.2}" text-anchor="middle" transform="rotate(-90 {xl:.2} {yc:.2})">{}</text>"#,
            escape(self.y_label)
        );
    }
}

fn ramp_legend(out: &mut String, x: f64, label: &str) {
    let steps = 50;
    let h = PANEL_H / steps as f64;
    for k in 0..steps {
        let v = (k as f64 + 0.5) / steps as f64;
        let y = MARGIN_T + PANEL_H - (k + 1) as f64 * h;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{y:.2}" width="12" height="{:.2}" fill="{}"/>"#,
            h + 0.05,
            ramp(v)
        );
    }
    for (v, text) in [(0.0, "0"), (0.5, "0.5"), (1.0, label)] {
        let y = MARGIN_T + PANEL_H * (1.0 - v) + 4.0;
        let _ = writeln!(out, r#"<text x="{:.2}" y="{y:.2}">{}</text>"#, x + 16.0, escape(text));
    }
}

/// Regime map plus both success-probability heatmaps. Noise on the x axis,
/// shot count on the y axis.
pub fn phase_svg(artifact: &GridArtifact<RegimeGrid>) -> String {
    let g = &artifact.grid;
    let width = MARGIN_L + 3.0 * PANEL_W + 2.0 * GAP + 40.0;
    let height = MARGIN_T + PANEL_H + MARGIN_B + 30.0;
    let mut out = String::new();
    header(&mut out, width, height, &artifact.provenance, "Winning strategy and success probabilities");

    let panel = |k: usize, title: &'static str| Panel {
        x0: MARGIN_L + k as f64 * (PANEL_W + GAP),
        title,
        x_label: "layer depolarizing probability P",
        y_label: "shots N",
        x_values: g.p_values.clone(),
        y_values: g.shot_values.iter().map(|&n| n as f64).collect(),
    };
    let regimes = panel(0, "winning strategy");
    let pec = panel(1, "PEC success probability");
    let raw = panel(2, "raw success probability");
    for i in 0..g.p_values.len() {
        for j in 0..g.shot_values.len() {
            regimes.cell(&mut out, i, j, strategy_color(g.label[i][j]));
            pec.cell(&mut out, i, j, &ramp(g.pec_success[i][j]));
            raw.cell(&mut out, i, j, &ramp(g.raw_success[i][j]));
        }
    }
    for p in [&regimes, &pec, &raw] {
        p.frame(&mut out);
    }
    ramp_legend(&mut out, raw.x0 + PANEL_W + 10.0, "1");

    let legend_y = MARGIN_T + PANEL_H + MARGIN_B;
    for (k, s) in [Strategy::Pec, Strategy::Raw, Strategy::None].into_iter().enumerate() {
        let x = MARGIN_L + k as f64 * 80.0;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{:.2}" width="12" height="12" fill="{}"/>"#,
            legend_y - 10.0,
            strategy_color(s)
        );
        let _ = writeln!(out, r#"<text x="{:.2}" y="{legend_y:.2}">{s}</text>"#, x + 16.0);
    }
    out.push_str("</svg>\n");
    out
}

/// Relative error of the centred proxy; width on the x axis, shift on y.
/// Values are clamped to `[0, 1]` on the colour ramp.
pub fn centering_svg(artifact: &GridArtifact<CenteringMap>) -> String {
    let g = &artifact.grid;
    let width = MARGIN_L + PANEL_W + 90.0;
    let height = MARGIN_T + PANEL_H + MARGIN_B;
    let mut out = String::new();
    header(&mut out, width, height, &artifact.provenance, "Relative error of the centred success proxy");
    let panel = Panel {
        x0: MARGIN_L,
        title: "relative error (proxy - true) / true",
        x_label: "relative width sigma / Delta",
        y_label: "relative shift E0 / (Delta/2)",
        x_values: g.width_values.clone(),
        y_values: g.shift_values.clone(),
    };
    for (i, row) in g.relative_error.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let fill = v.map(ramp).unwrap_or_else(|| UNDEFINED_COLOR.to_string());
            panel.cell(&mut out, j, i, &fill);
        }
    }
    panel.frame(&mut out);
    ramp_legend(&mut out, MARGIN_L + PANEL_W + 10.0, ">= 1");
    out.push_str("</svg>\n");
    out
}
