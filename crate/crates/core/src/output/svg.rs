//! Minimal SVG figures: decimated step paths, rasterised clouds, polygons.

use std::fmt::Write as _;

use crate::ifs::Parallelogram;

const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A plotting area mapping data ranges onto a `width × height` picture.
#[derive(Debug, Clone)]
pub struct Canvas {
    width: u32,
    height: u32,
    x: (f64, f64),
    y: (f64, f64),
    body: String,
}

impl Canvas {
    pub fn new(width: u32, height: u32, x: (f64, f64), y: (f64, f64)) -> Self {
        let widen = |(lo, hi): (f64, f64)| if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Canvas {
            width,
            height,
            x: widen(x),
            y: widen(y),
            body: String::new(),
        }
    }

    /// Canvas whose ranges cover `points`, padded by 2%.
    pub fn fitting(width: u32, height: u32, points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut x = (f64::INFINITY, f64::NEG_INFINITY);
        let mut y = x;
        for (px, py) in points {
            x = (x.0.min(px), x.1.max(px));
            y = (y.0.min(py), y.1.max(py));
        }
        if !x.0.is_finite() {
            return Canvas::new(width, height, (0.0, 1.0), (0.0, 1.0));
        }
        let pad = |(lo, hi): (f64, f64)| {
            let d = 0.02 * (hi - lo);
            (lo - d, hi + d)
        };
        Canvas::new(width, height, pad(x), pad(y))
    }

    fn plot_width(&self) -> f64 {
        self.width as f64 - 2.0 * MARGIN
    }

    fn plot_height(&self) -> f64 {
        self.height as f64 - 2.0 * MARGIN
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let u = MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * self.plot_width();
        let v = MARGIN + (self.y.1 - y) / (self.y.1 - self.y.0) * self.plot_height();
        (u, v)
    }

    /// Draws a path in time order. Points sharing a pixel column are reduced
    /// to first, minimum, maximum and last, so jumps show as vertical strokes.
    pub fn step_path(&mut self, points: &[(f64, f64)], series: usize) {
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut column: Vec<(f64, f64)> = Vec::new();
        let mut current = None;
        let flush = |column: &mut Vec<(f64, f64)>, out: &mut Vec<(f64, f64)>| {
            if let (Some(&first), Some(&last)) = (column.first(), column.last()) {
                let lo = column.iter().copied().fold(first, |a, b| if b.1 < a.1 { b } else { a });
                let hi = column.iter().copied().fold(first, |a, b| if b.1 > a.1 { b } else { a });
                out.push(first);
                let (a, b) = if lo.0 <= hi.0 { (lo, hi) } else { (hi, lo) };
                out.extend([a, b]);
                out.push(last);
            }
            column.clear();
        };
        for &(x, y) in points {
            let col = self.px(x, y).0.floor() as i64;
            if current != Some(col) {
                flush(&mut column, &mut out);
                current = Some(col);
            }
            column.push((x, y));
        }
        flush(&mut column, &mut out);
        out.dedup();
        self.polyline(&out, PALETTE[series % PALETTE.len()], 1.0);
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        if points.is_empty() {
            return;
        }
        let coords = self.coordinate_list(points.iter().copied());
        let _ = writeln!(
            self.body,
            r#"<polyline fill="none" stroke="{stroke}" stroke-width="{width}" points="{coords}"/>"#
        );
    }

    pub fn polygon(&mut self, vertices: &[[f64; 2]], stroke: &str, fill: &str) {
        let coords = self.coordinate_list(vertices.iter().map(|v| (v[0], v[1])));
        let _ = writeln!(
            self.body,
            r#"<polygon fill="{fill}" fill-opacity="0.35" stroke="{stroke}" stroke-width="1" points="{coords}"/>"#
        );
    }

    /// One filled pixel per occupied pixel cell.
    pub fn pixels(&mut self, points: &[[f64; 2]], fill: &str) {
        let mut cells: Vec<(i64, i64)> = points
            .iter()
            .map(|p| {
                let (u, v) = self.px(p[0], p[1]);
                (u.floor() as i64, v.floor() as i64)
            })
            .collect();
        cells.sort_unstable();
        cells.dedup();
        let _ = writeln!(self.body, r#"<g fill="{fill}">"#);
        for (u, v) in cells {
            let _ = writeln!(self.body, r#"<rect x="{u}" y="{v}" width="1" height="1"/>"#);
        }
        self.body.push_str("</g>\n");
    }

    fn coordinate_list(&self, points: impl Iterator<Item = (f64, f64)>) -> String {
        let mut s = String::new();
        for (x, y) in points {
            let (u, v) = self.px(x, y);
            if !s.is_empty() {
                s.push(' ');
            }
            let _ = write!(s, "{u:.2},{v:.2}");
        }
        s
    }

    /// The finished document, with a frame, range labels and a title.
    pub fn finish(self, title: &str) -> String {
        let (w, h) = (self.width, self.height);
        let (pw, ph) = (self.plot_width(), self.plot_height());
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            w / 2,
            escape(title)
        );
        let label = |x: f64| format!("{x:.4}");
        let bottom = MARGIN + ph + 16.0;
        let right = MARGIN + pw;
        let _ = writeln!(
            s,
            r#"<g font-family="sans-serif" font-size="11"><text x="{MARGIN}" y="{bottom}">{}</text><text x="{right}" y="{bottom}" text-anchor="end">{}</text><text x="{}" y="{}" text-anchor="end">{}</text><text x="{}" y="{MARGIN}" text-anchor="end">{}</text></g>"#,
            label(self.x.0),
            label(self.x.1),
            MARGIN - 4.0,
            MARGIN + ph,
            label(self.y.0),
            MARGIN - 4.0,
            label(self.y.1)
        );
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Several step paths on shared axes.
pub fn paths_figure(paths: &[&[(f64, f64)]], title: &str) -> String {
    let mut canvas = Canvas::fitting(900, 600, paths.iter().flat_map(|p| p.iter().copied()));
    for (i, p) in paths.iter().enumerate() {
        canvas.step_path(p, i);
    }
    canvas.finish(title)
}

/// A cloud drawn as occupied pixels.
pub fn cloud_figure(points: &[[f64; 2]], title: &str) -> String {
    let mut canvas = Canvas::fitting(700, 700, points.iter().map(|p| (p[0], p[1])));
    canvas.pixels(points, "black");
    canvas.finish(title)
}

/// Parallelograms, one colour per generation, on the seed rectangle's axes.
pub fn parallelograms_figure(generations: &[Vec<Parallelogram>], title: &str) -> String {
    let mut canvas = Canvas::new(700, 700, (0.48, 1.02), (-0.02, 0.52));
    canvas.polygon(&crate::ifs::SEED_RECTANGLE, "black", "none");
    for (g, shapes) in generations.iter().enumerate() {
        let colour = PALETTE[g % PALETTE.len()];
        for p in shapes {
            canvas.polygon(&p.vertices, colour, colour);
        }
    }
    canvas.finish(title)
}
