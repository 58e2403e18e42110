//! Static SVG figures written by hand: one `<path>` per curve, one `<circle>`
//! per eigenvalue.

use std::fmt::Write;

use spectral_ce::kinetic::SpectrumResult;
use spectral_ce::truncation::ComparisonReport;
use spectral_ce::SQRT_HALF_PI;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }

    fn path_data(&self, points: &[(f64, f64)]) -> String {
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            // keep far-off values finite so the clip path does the cropping
            let yy = y.clamp(self.y.0 - 10.0 * (self.y.1 - self.y.0), self.y.1 + 10.0 * (self.y.1 - self.y.0));
            write!(d, "{cmd}{:.2},{:.2} ", self.px(x), self.py(yy)).unwrap();
        }
        d.trim_end().to_string()
    }

    fn vline(&self, out: &mut String, x: f64, class: &str, dash: &str) {
        writeln!(
            out,
            r##"  <line class="{class}" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#555" stroke-dasharray="{dash}"/>"##,
            self.py(self.y.0),
            self.py(self.y.1),
            x = self.px(x),
        )
        .unwrap();
    }

    fn hline(&self, out: &mut String, y: f64, class: &str, dash: &str) {
        writeln!(
            out,
            r##"  <line class="{class}" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#555" stroke-dasharray="{dash}"/>"##,
            self.px(self.x.0),
            self.px(self.x.1),
            y = self.py(y),
        )
        .unwrap();
    }

    fn axes(&self, out: &mut String, xlabel: &str, ylabel: &str) {
        let (x0, x1) = (self.px(self.x.0), self.px(self.x.1));
        let (y0, y1) = (self.py(self.y.0), self.py(self.y.1));
        writeln!(
            out,
            r##"  <rect class="frame" x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#000"/>"##,
            x1 - x0,
            y0 - y1
        )
        .unwrap();
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let xv = self.x.0 + t * (self.x.1 - self.x.0);
            let yv = self.y.0 + t * (self.y.1 - self.y.0);
            writeln!(
                out,
                r##"  <text class="tick" x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{xv:.2}</text>"##,
                self.px(xv),
                y0 + 16.0
            )
            .unwrap();
            writeln!(
                out,
                r##"  <text class="tick" x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{yv:.2}</text>"##,
                x0 - 6.0,
                self.py(yv) + 4.0
            )
            .unwrap();
        }
        writeln!(
            out,
            r##"  <text class="label" x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{xlabel}</text>"##,
            0.5 * (x0 + x1),
            HEIGHT - 12.0
        )
        .unwrap();
        writeln!(
            out,
            r##"  <text class="label" x="14" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 14 {:.2})">{ylabel}</text>"##,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1)
        )
        .unwrap();
    }

    fn clip(&self, out: &mut String) {
        writeln!(
            out,
            r##"  <defs><clipPath id="plot-area"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"##,
            self.px(self.x.0),
            self.py(self.y.1),
            self.px(self.x.1) - self.px(self.x.0),
            self.py(self.y.0) - self.py(self.y.1)
        )
        .unwrap();
    }
}

fn open(out: &mut String, title: &str) {
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    )
    .unwrap();
    writeln!(out, "  <title>{title}</title>").unwrap();
    writeln!(out, r##"  <rect width="100%" height="100%" fill="#fff"/>"##).unwrap();
}

fn legend(out: &mut String, row: usize, color: &str, dash: &str, text: &str) {
    let y = MARGIN + 14.0 + 16.0 * row as f64;
    let x = WIDTH - MARGIN - 120.0;
    writeln!(
        out,
        r##"  <line class="legend" x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2" stroke-dasharray="{dash}"/>"##,
        x + 24.0
    )
    .unwrap();
    writeln!(
        out,
        r##"  <text class="legend" x="{:.2}" y="{:.2}" font-size="11">{text}</text>"##,
        x + 30.0,
        y + 4.0
    )
    .unwrap();
}

/// Exact scaled rate against the truncations, in the variables `τk`, `τλ`.
pub fn compare_svg(report: &ComparisonReport) -> String {
    let x_max = report
        .rows
        .iter()
        .map(|r| r.x)
        .fold(SQRT_HALF_PI, f64::max)
        * 1.05;
    let frame = Frame {
        x: (0.0, x_max),
        y: (-1.5, 0.25),
    };
    let mut out = String::new();
    open(&mut out, "Diffusion branch and Chapman-Enskog truncations");
    frame.clip(&mut out);
    frame.axes(&mut out, "τk", "τλ");
    frame.hline(&mut out, 0.0, "zero", "2,3");
    frame.hline(&mut out, -1.0, "essential", "6,3");
    frame.vline(&mut out, SQRT_HALF_PI, "critical", "4,4");

    let exact: Vec<(f64, f64)> = report
        .rows
        .iter()
        .filter_map(|r| r.exact.map(|e| (r.x, e)))
        .collect();
    writeln!(
        out,
        r##"  <path class="exact" d="{}" fill="none" stroke="#000" stroke-width="2" clip-path="url(#plot-area)"/>"##,
        frame.path_data(&exact)
    )
    .unwrap();
    legend(&mut out, 0, "#000", "none", "exact");

    for (i, &order) in report.orders.iter().enumerate() {
        let pts: Vec<(f64, f64)> = report
            .rows
            .iter()
            .map(|r| (r.x, r.truncations[i]))
            .collect();
        let color = PALETTE[i % PALETTE.len()];
        writeln!(
            out,
            r##"  <path class="truncation" data-order="{order}" d="{}" fill="none" stroke="{color}" stroke-width="1.5" stroke-dasharray="6,4" clip-path="url(#plot-area)"/>"##,
            frame.path_data(&pts)
        )
        .unwrap();
        legend(&mut out, i + 1, color, "6,4", &format!("N = {order}"));
    }
    out.push_str("</svg>\n");
    out
}

/// Eigenvalue scatter in the complex plane with the essential line.
pub fn spectrum_svg(spectrum: &SpectrumResult, tau: f64) -> String {
    let line = spectrum.essential_line;
    let re_min = spectrum
        .eigenvalues
        .iter()
        .map(|l| l.re)
        .fold(line, f64::min);
    let im_max = spectrum
        .eigenvalues
        .iter()
        .map(|l| l.im.abs())
        .fold(0.0, f64::max)
        .max(0.5 / tau);
    let frame = Frame {
        x: (re_min - 0.2 / tau, 0.2 / tau),
        y: (-1.1 * im_max, 1.1 * im_max),
    };
    let mut out = String::new();
    open(&mut out, "Spectrum of the discrete kinetic operator");
    frame.axes(&mut out, "Re λ", "Im λ");
    frame.vline(&mut out, 0.0, "imaginary-axis", "2,3");
    frame.vline(&mut out, line, "essential", "6,3");
    for l in &spectrum.eigenvalues {
        let hydro = spectrum.hydrodynamic == Some(*l);
        let (class, fill, r) = if hydro {
            ("hydrodynamic", "#d62728", 5.0)
        } else {
            ("eigenvalue", "#1f77b4", 2.5)
        };
        writeln!(
            out,
            r##"  <circle class="{class}" cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"##,
            frame.px(l.re),
            frame.py(l.im)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
