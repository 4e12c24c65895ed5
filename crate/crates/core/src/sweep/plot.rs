//! Static SVG 1.1 line charts of a sweep.

use std::fmt::Write as _;
use std::path::Path;

use crate::correlations::CorrelationRecord;
use crate::error::Result;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dash {
    Solid,
    Dashed,
    Dotted,
}

impl Dash {
    fn attribute(self) -> &'static str {
        match self {
            Dash::Solid => "",
            Dash::Dashed => r#" stroke-dasharray="9 5""#,
            Dash::Dotted => r#" stroke-dasharray="2 4""#,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub dash: Dash,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Tick spacing of 1, 2 or 5 times a power of ten giving about `target` ticks.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let nice = if f <= 1.0 {
        1.0
    } else if f <= 2.0 {
        2.0
    } else if f <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    format!("{:.*}", decimals, if v.abs() < step * 1e-9 { 0.0 } else { v })
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

impl Chart {
    pub fn to_svg(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter().copied());
        let (x0, x1) = range(all().map(|p| p.0));
        let (y_min, y_max) = range(all().map(|p| p.1));
        let (x0, x1) = if x0.is_finite() && x1 > x0 { (x0, x1) } else { (0.0, 1.0) };
        let y_min = y_min.min(0.0);
        let y_max = if y_max.is_finite() && y_max > y_min { y_max } else { y_min + 1.0 };
        let y_ticks = tick_step(y_max - y_min, 5.0);
        let (y0, y1) = ((y_min / y_ticks).floor() * y_ticks, (y_max / y_ticks).ceil() * y_ticks);
        let x_ticks = tick_step(x1 - x0, 6.0);

        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="13">
<rect width="100%" height="100%" fill="white"/>
<text x="{:.1}" y="26" text-anchor="middle" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        // grid and ticks
        let mut y = y0;
        while y <= y1 + 1e-9 * y_ticks {
            let py = sy(y);
            let _ = writeln!(
                svg,
                r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#dddddd"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"##,
                LEFT + plot_w,
                LEFT - 8.0,
                py + 4.0,
                tick_label(y, y_ticks)
            );
            y += y_ticks;
        }
        let mut x = (x0 / x_ticks).ceil() * x_ticks;
        while x <= x1 + 1e-9 * x_ticks {
            let px = sx(x);
            let _ = writeln!(
                svg,
                r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + plot_h,
                TOP + plot_h + 5.0,
                TOP + plot_h + 20.0,
                tick_label(x, x_ticks)
            );
            x += x_ticks;
        }
        let _ = writeln!(
            svg,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>
<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>
<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 18.0,
            escape(&self.x_label),
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        for s in &self.series {
            let points: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{}" stroke-width="2"{} points="{}"/>"#,
                s.color,
                s.dash.attribute(),
                points.join(" ")
            );
        }

        let lx = LEFT + plot_w - 170.0;
        let ly = TOP + 12.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{:.1}" y="{:.1}" width="162" height="{:.1}" fill="white" fill-opacity="0.85" stroke="gray"/>"#,
            lx - 6.0,
            ly - 6.0,
            20.0 * self.series.len() as f64 + 4.0
        );
        for (i, s) in self.series.iter().enumerate() {
            let yy = ly + 8.0 + 20.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx:.1}" y1="{yy:.1}" x2="{:.1}" y2="{yy:.1}" stroke="{}" stroke-width="2"{}/><text x="{:.1}" y="{:.1}">{}</text>"#,
                lx + 34.0,
                s.color,
                s.dash.attribute(),
                lx + 42.0,
                yy + 4.5,
                escape(&s.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// The six standard figures of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Entropies,
    MutualInformation,
    CorrelationsAR,
    CorrelationsAAntiR,
    Compared,
    EntanglementOfFormation,
}

const BLUE: &str = "#1f4fd1";
const RED: &str = "#d12b1f";
const BLACK: &str = "#000000";

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Entropies,
        Figure::MutualInformation,
        Figure::CorrelationsAR,
        Figure::CorrelationsAAntiR,
        Figure::Compared,
        Figure::EntanglementOfFormation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Entropies => "entropies",
            Figure::MutualInformation => "mutual_information",
            Figure::CorrelationsAR => "correlations_AR",
            Figure::CorrelationsAAntiR => "correlations_AAntiR",
            Figure::Compared => "correlations_compared",
            Figure::EntanglementOfFormation => "entanglement_of_formation",
        }
    }

    pub fn from_name(name: &str) -> Option<Figure> {
        Figure::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn chart(self, records: &[CorrelationRecord]) -> Chart {
        let curve = |label: &str, color, dash, f: fn(&CorrelationRecord) -> f64| Series {
            label: label.to_string(),
            color,
            dash,
            points: records.iter().map(|r| (r.alpha, f(r))).collect(),
        };
        let (title, y_label, series) = match self {
            Figure::Entropies => (
                "Von Neumann entropies",
                "entropy (bits)",
                vec![
                    curve("S(A)", BLACK, Dash::Dotted, |r| r.s_a),
                    curve("S(R)", BLUE, Dash::Solid, |r| r.s_r),
                    curve("S(AntiR)", RED, Dash::Dashed, |r| r.s_antir),
                ],
            ),
            Figure::MutualInformation => (
                "Mutual information",
                "mutual information (bits)",
                vec![
                    curve("I(A:R)", BLUE, Dash::Solid, |r| r.i_ar),
                    curve("I(A:AntiR)", RED, Dash::Dashed, |r| r.i_aantir),
                    curve("I(R:AntiR)", BLACK, Dash::Dotted, |r| r.i_rantir),
                ],
            ),
            Figure::CorrelationsAR => (
                "Alice-Rob correlations, Alice measures",
                "correlation (bits)",
                vec![
                    curve("J(A:R)", BLUE, Dash::Solid, |r| r.j_ar),
                    curve("I(A:R)", RED, Dash::Dashed, |r| r.i_ar),
                    curve("D(A:R)", BLACK, Dash::Dotted, |r| r.d_ar),
                ],
            ),
            Figure::CorrelationsAAntiR => (
                "Alice-AntiRob correlations, Alice measures",
                "correlation (bits)",
                vec![
                    curve("J(A:AntiR)", BLUE, Dash::Solid, |r| r.j_aantir),
                    curve("I(A:AntiR)", RED, Dash::Dashed, |r| r.i_aantir),
                    curve("D(A:AntiR)", BLACK, Dash::Dotted, |r| r.d_aantir),
                ],
            ),
            Figure::Compared => (
                "Both bipartitions compared",
                "correlation (bits)",
                vec![
                    curve("J(A:R)", BLUE, Dash::Solid, |r| r.j_ar),
                    curve("I(A:R)", BLUE, Dash::Dashed, |r| r.i_ar),
                    curve("D(A:R)", BLUE, Dash::Dotted, |r| r.d_ar),
                    curve("J(A:AntiR)", RED, Dash::Solid, |r| r.j_aantir),
                    curve("I(A:AntiR)", RED, Dash::Dashed, |r| r.i_aantir),
                    curve("D(A:AntiR)", RED, Dash::Dotted, |r| r.d_aantir),
                ],
            ),
            Figure::EntanglementOfFormation => (
                "Entanglement of formation between the wedges",
                "E_F (bits)",
                vec![curve("E_F(R:AntiR)", BLUE, Dash::Solid, |r| r.ef_rantir)],
            ),
        };
        Chart { title: title.into(), x_label: "squeezing parameter α".into(), y_label: y_label.into(), series }
    }
}

pub fn render_figure(figure: Figure, records: &[CorrelationRecord]) -> String {
    figure.chart(records).to_svg()
}

/// Writes `<name>.svg` for every figure into `dir`.
pub fn emit_plots(records: &[CorrelationRecord], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for f in Figure::ALL {
        std::fs::write(dir.join(format!("{}.svg", f.name())), render_figure(f, records))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nice_steps() {
        assert_eq!(tick_step(3.0, 6.0), 0.5);
        assert_eq!(tick_step(2.0, 5.0), 0.5);
        assert_eq!(tick_step(16.3, 5.0), 5.0);
        assert_eq!(tick_label(0.5, 0.5), "0.5");
        assert_eq!(tick_label(10.0, 5.0), "10");
    }

    #[test]
    fn labels_are_escaped() {
        let c = Chart { title: "a<b & c".into(), x_label: "x".into(), y_label: "y".into(), series: vec![] }.to_svg();
        assert!(c.contains("a&lt;b &amp; c"));
    }
}
