//! Minimal deterministic SVG output: fixed viewBox, elements sorted by layer
//! and key before rendering, coordinates printed with three decimals.

use num_traits::ToPrimitive;
use staircase_core::geometry::{RatPoint, RatPolygon};
use staircase_core::linalg::Rat;

pub const PANEL: f64 = 240.0;
const MARGIN: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Frame,
    Region,
    Body,
    Exact,
    Points,
    Label,
}

pub struct Figure {
    panels: usize,
    /// Data window shared by all panels: (xmin, ymin, xmax, ymax).
    window: (f64, f64, f64, f64),
    elements: Vec<(usize, Layer, String, String)>,
}

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

impl Figure {
    pub fn new(panels: usize, window: (f64, f64, f64, f64)) -> Self {
        let (x0, y0, mut x1, mut y1) = window;
        if x1 - x0 < 1e-9 {
            x1 = x0 + 1.0;
        }
        if y1 - y0 < 1e-9 {
            y1 = y0 + 1.0;
        }
        Self {
            panels: panels.max(1),
            window: (x0, y0, x1, y1),
            elements: Vec::new(),
        }
    }

    fn map(&self, panel: usize, x: f64, y: f64) -> (f64, f64) {
        let (x0, y0, x1, y1) = self.window;
        let s = (PANEL - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
        let px = panel as f64 * PANEL + MARGIN + (x - x0) * s;
        let py = PANEL - MARGIN - (y - y0) * s;
        (px, py)
    }

    pub fn point(&mut self, panel: usize, layer: Layer, p: &RatPoint, radius: f64) {
        let (x, y) = self.map(panel, f(&p.x), f(&p.y));
        let key = format!("{:>20.6}{:>20.6}", f(&p.y), f(&p.x));
        self.elements.push((
            panel,
            layer,
            key,
            format!(r#"<circle cx="{x:.3}" cy="{y:.3}" r="{radius:.3}" class="{}"/>"#, class(layer)),
        ));
    }

    pub fn polygon(&mut self, panel: usize, layer: Layer, poly: &RatPolygon) {
        let pts: Vec<String> = poly
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = self.map(panel, f(&v.x), f(&v.y));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let pts = pts.join(" ");
        self.elements.push((
            panel,
            layer,
            pts.clone(),
            format!(
                r#"<polygon points="{pts}" class="{}" clip-path="url(#panel{panel})"/>"#,
                class(layer)
            ),
        ));
    }

    pub fn label(&mut self, panel: usize, text: &str) {
        let x = panel as f64 * PANEL + MARGIN;
        self.elements.push((
            panel,
            Layer::Label,
            text.to_string(),
            format!(r#"<text x="{x:.3}" y="{:.3}">{}</text>"#, MARGIN * 0.75, escape(text)),
        ));
    }

    pub fn render(mut self) -> String {
        for p in 0..self.panels {
            let x = p as f64 * PANEL;
            self.elements.push((
                p,
                Layer::Frame,
                String::new(),
                format!(
                    r#"<rect x="{:.3}" y="0.000" width="{:.3}" height="{PANEL:.3}" class="frame"/>"#,
                    x + 1.0,
                    PANEL - 2.0
                ),
            ));
            let (ox, oy) = self.map(p, 0.0, 0.0);
            let (ex, _) = self.map(p, self.window.2, 0.0);
            let (_, ey) = self.map(p, 0.0, self.window.3);
            self.elements.push((
                p,
                Layer::Frame,
                "axes".into(),
                format!(
                    r#"<path d="M{ox:.3},{oy:.3} H{ex:.3} M{ox:.3},{oy:.3} V{ey:.3}" class="axis"/>"#
                ),
            ));
        }
        self.elements.sort_by(|a, b| (a.0, a.1, &a.2, &a.3).cmp(&(b.0, b.1, &b.2, &b.3)));
        let width = self.panels as f64 * PANEL;
        let mut out = String::new();
        out.push_str(&format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {PANEL:.0}" width="{width:.0}" height="{PANEL:.0}">"#
        ));
        out.push('\n');
        out.push_str("<style>.frame{fill:#fff;stroke:#ccc}.axis{stroke:#888;fill:none}.region{fill:none;stroke:#999;stroke-dasharray:4 3}.body{fill:#cfe0f5;stroke:#3a6ea5}.exact{fill:none;stroke:#c0392b;stroke-width:1.5}.pts{fill:#222}text{font:11px sans-serif}</style>\n");
        out.push_str("<defs>");
        for p in 0..self.panels {
            out.push_str(&format!(
                r#"<clipPath id="panel{p}"><rect x="{:.3}" y="0.000" width="{PANEL:.3}" height="{PANEL:.3}"/></clipPath>"#,
                p as f64 * PANEL
            ));
        }
        out.push_str("</defs>\n");
        for (_, _, _, el) in &self.elements {
            out.push_str(el);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        out
    }
}

fn class(layer: Layer) -> &'static str {
    match layer {
        Layer::Frame => "frame",
        Layer::Region => "region",
        Layer::Body => "body",
        Layer::Exact => "exact",
        Layer::Points => "pts",
        Layer::Label => "label",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Bounding window of a set of rational points, starting at the origin.
pub fn window_of<'a>(pts: impl IntoIterator<Item = &'a RatPoint>) -> (f64, f64, f64, f64) {
    let (mut x1, mut y1) = (0.0f64, 0.0f64);
    let (mut x0, mut y0) = (0.0f64, 0.0f64);
    for p in pts {
        x0 = x0.min(f(&p.x));
        y0 = y0.min(f(&p.y));
        x1 = x1.max(f(&p.x));
        y1 = y1.max(f(&p.y));
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use staircase_core::geometry::{LatticePolygon, Point};
    use staircase_core::linalg::rat_int;

    #[test]
    fn order_of_insertion_does_not_matter() {
        let pts: Vec<RatPoint> = (0..4).map(|i| Point::new(rat_int(i), rat_int(3 - i))).collect();
        let poly = LatticePolygon::from_pairs(&[(0, 0), (3, 0), (0, 3)]).unwrap().to_rat();
        let build = |rev: bool| {
            let mut fig = Figure::new(1, window_of(&pts));
            fig.polygon(0, Layer::Body, &poly);
            let mut order: Vec<&RatPoint> = pts.iter().collect();
            if rev {
                order.reverse();
            }
            for p in order {
                fig.point(0, Layer::Points, p, 2.0);
            }
            fig.render()
        };
        assert_eq!(build(false), build(true));
        assert!(build(false).contains(r#"viewBox="0 0 240 240""#));
    }
}
