//! SVG drawings of wiring diagrams and line arrangements.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::complex::{CellComplex, Face};
use crate::embedding::{rational, Coord, GridEmbedding};
use crate::lines::{lines_to_diagram, LineArrangement, Rational};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Fill color of a bounded face with `sides` sides.
pub fn face_color(sides: usize) -> &'static str {
    match sides {
        3 => "#f4a582",
        4 => "#92c5de",
        5 => "#b2df8a",
        _ => "#cab2d6",
    }
}

const WIRE_COLORS: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

/// Crossing steps around a bounded face, clockwise from the step that
/// opened it.
fn face_steps(c: &CellComplex, f: &Face) -> Vec<usize> {
    let mut out = vec![f.open.expect("bounded")];
    out.extend(f.upper.iter().map(|&e| c.edge(e).end.expect("bounded")));
    let lower: Vec<usize> = f.lower.iter().rev().map(|&e| c.edge(e).start.expect("bounded")).collect();
    out.extend(&lower[..lower.len() - 1]);
    out
}

struct Canvas {
    min_x: f64,
    max_y: f64,
    sx: f64,
    sy: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    /// Canvas for the box `[x0, x1] x [y0, y1]` in model coordinates.
    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Canvas {
        Canvas::fit(x0, x1, y0, y1, (x1 - x0) * SCALE, (y1 - y0) * SCALE)
    }

    /// Canvas mapping the box onto `width x height` pixels.
    fn fit(x0: f64, x1: f64, y0: f64, y1: f64, width: f64, height: f64) -> Canvas {
        Canvas {
            min_x: x0,
            max_y: y1,
            sx: width / (x1 - x0),
            sy: height / (y1 - y0),
            width: width + 2.0 * MARGIN,
            height: height + 2.0 * MARGIN,
            body: String::new(),
        }
    }

    fn point(&self, x: f64, y: f64) -> String {
        format!("{:.2},{:.2}", (x - self.min_x) * self.sx + MARGIN, (self.max_y - y) * self.sy + MARGIN)
    }

    fn polygon(&mut self, pts: &[(f64, f64)], sides: usize) {
        let p: Vec<String> = pts.iter().map(|&(x, y)| self.point(x, y)).collect();
        writeln!(self.body, r#"  <polygon class="face-{sides}" points="{}" fill="{}"/>"#, p.join(" "), face_color(sides)).unwrap();
    }

    fn polyline(&mut self, pts: &[(f64, f64)], wire: usize) {
        let p: Vec<String> = pts.iter().map(|&(x, y)| self.point(x, y)).collect();
        writeln!(
            self.body,
            r#"  <polyline class="wire" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            p.join(" "),
            WIRE_COLORS[wire % WIRE_COLORS.len()]
        )
        .unwrap();
    }

    fn label(&mut self, x: f64, y: f64, text: &str) {
        let (px, py) = self.point(x, y).split_once(',').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
        writeln!(self.body, r#"  <text x="{px}" y="{py}" font-family="sans-serif" font-size="12">{text}</text>"#).unwrap();
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn f(c: Coord) -> f64 {
    c.to_f64().expect("finite")
}

fn fr(c: &Rational) -> f64 {
    c.to_f64().expect("finite")
}

/// Draws the grid embedding: wires as x-monotone polylines, bounded faces
/// filled by side count.
pub fn render_diagram(c: &CellComplex) -> String {
    let emb = GridEmbedding::new(c);
    let n = c.n();
    let steps = c.diagram().len();
    let mut canvas = Canvas::new(-0.5, steps as f64 + 1.5, -(n as f64), -1.0);
    for face in c.bounded_faces() {
        let vertices = face_steps(c, face);
        let mut pts = Vec::new();
        // Walk each boundary edge, keeping the wire's bends.
        for (i, e) in face.boundary().into_iter().enumerate() {
            let wire = c.edge(e).wire;
            let a = vertices[i] as i64 + 1;
            let b = vertices[(i + 1) % vertices.len()] as i64 + 1;
            pts.push((a as f64, f(emb.y_at(wire, Coord::from_integer(a)))));
            let bends: Vec<i64> = if a < b { (a..b).collect() } else { (b..a).rev().collect() };
            for k in bends {
                let x = rational(2 * k + 1, 2);
                pts.push((f(x), f(emb.y_at(wire, x))));
            }
        }
        canvas.polygon(&pts, face.side_count().expect("bounded"));
    }
    for w in 0..n {
        let mut pts: Vec<(f64, f64)> = emb.polyline(w).iter().map(|p| (f(p.x), f(p.y))).collect();
        pts[0].0 = -0.5;
        pts.last_mut().unwrap().0 = steps as f64 + 1.5;
        canvas.polyline(&pts, w);
        let y = pts[0].1;
        canvas.label(-0.45, y + 0.1, &(w + 1).to_string());
    }
    canvas.finish()
}

/// Draws straight lines around the box holding every crossing, stretched
/// onto a fixed canvas, bounded faces filled by side count. Labels are the
/// 1-based line indices.
pub fn render_lines(la: &LineArrangement) -> String {
    let ld = lines_to_diagram(la);
    let c = CellComplex::build(&ld.diagram);
    let sweep = la.sweep();
    let xs: Vec<f64> = sweep.iter().map(|p| fr(&p.x)).collect();
    let ys: Vec<f64> = sweep.iter().map(|p| fr(&p.y)).collect();
    let (x0, x1) = padded(&xs);
    let (y0, y1) = padded(&ys);
    let mut canvas = Canvas::fit(x0, x1, y0, y1, 800.0, 600.0);
    for face in c.bounded_faces() {
        let pts: Vec<(f64, f64)> = face_steps(&c, face).iter().map(|&s| (xs[s], ys[s])).collect();
        canvas.polygon(&pts, face.side_count().expect("bounded"));
    }
    for (i, l) in la.lines().iter().enumerate() {
        let (m, b) = (fr(&l.slope), fr(&l.intercept));
        // Clip to the box so labels stay visible.
        let (mut lo, mut hi) = (x0, x1);
        if m != 0.0 {
            let (ya, yb) = ((y0 - b) / m, (y1 - b) / m);
            lo = lo.max(ya.min(yb));
            hi = hi.min(ya.max(yb));
        }
        if lo >= hi {
            continue;
        }
        canvas.polyline(&[(lo, m * lo + b), (hi, m * hi + b)], ld.line_wire(i));
        canvas.label(lo, m * lo + b, &(i + 1).to_string());
    }
    canvas.finish()
}

/// Range of `v` widened by a tenth on each side, never empty.
fn padded(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let pad = ((hi - lo) / 10.0).max(0.5);
    (lo - pad, hi + pad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{big, Line};
    use crate::wiring::validate_wiring;

    #[test]
    fn one_polygon_per_bounded_face() {
        let d = validate_wiring(4, &[2, 1, 3, 2, 1, 3]).unwrap();
        let svg = render_diagram(&CellComplex::build(&d));
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert_eq!(svg.matches("class=\"face-3\"").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 4);
    }

    #[test]
    fn triangle_of_lines() {
        let la = LineArrangement::new(vec![
            Line::new(big(0, 1), big(0, 1)),
            Line::new(big(1, 1), big(0, 1)),
            Line::new(big(-1, 1), big(1, 1)),
        ])
        .unwrap();
        let svg = render_lines(&la);
        assert_eq!(svg.matches("class=\"face-3\"").count(), 1);
        assert_eq!(svg, render_lines(&la));
    }

    #[test]
    fn face_steps_are_corners() {
        let d = validate_wiring(3, &[1, 2, 1]).unwrap();
        let c = CellComplex::build(&d);
        let f = c.bounded_faces().next().unwrap();
        let mut s = face_steps(&c, f);
        s.sort_unstable();
        assert_eq!(s, vec![0, 1, 2]);
    }
}
