//! Exact piecewise-linear drawing of a wiring diagram.
//!
//! The wire at 0-based position `p` is drawn at height `-(p + 1)`. Swap `s`
//! (0-based) happens over `x in [s + 1/2, s + 3/2]` and its crossing sits at
//! `x = s + 1`, so crossing `k` in 1-based numbering has x-coordinate `k`.
//! Outside `[1/2, N + 1/2]` every wire is a horizontal ray.

use num_rational::Rational64;

use crate::complex::{CellComplex, FaceId};
use crate::error::EmbeddingError;
use crate::wiring::{InducedSubarrangement, WireId, WiringDiagram};

pub type Coord = Rational64;

/// An exact point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Point {
        Point { x, y }
    }
}

use self::rational as q;

/// Heights of every wire after each prefix of swaps, plus one witness point
/// per face.
#[derive(Debug, Clone)]
pub struct GridEmbedding {
    n: usize,
    steps: usize,
    /// `levels[k][w]`: height of wire `w` once `k` swaps are done.
    levels: Vec<Vec<i64>>,
    witnesses: Vec<Point>,
}

impl GridEmbedding {
    pub fn new(complex: &CellComplex) -> GridEmbedding {
        let d = complex.diagram();
        let n = d.n();
        let mut pos: Vec<WireId> = (0..n).collect();
        let mut levels = Vec::with_capacity(d.len() + 1);
        let heights = |pos: &[WireId]| {
            let mut h = vec![0i64; n];
            for (p, &w) in pos.iter().enumerate() {
                h[w] = -(p as i64 + 1);
            }
            h
        };
        levels.push(heights(&pos));
        for &t in d.tracks() {
            pos.swap(t, t + 1);
            levels.push(heights(&pos));
        }
        let witnesses = complex
            .faces()
            .iter()
            .map(|f| {
                let x = match (f.open, f.close) {
                    (Some(s), _) => q(2 * s as i64 + 3, 2),
                    (None, Some(s)) => q(2 * s as i64 + 1, 2),
                    (None, None) => q(0, 1),
                };
                Point::new(x, q(-(2 * f.gap as i64) - 1, 2))
            })
            .collect();
        GridEmbedding { n, steps: d.len(), levels, witnesses }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Height of `wire` above abscissa `x`.
    pub fn y_at(&self, wire: WireId, x: Coord) -> Coord {
        let half = q(1, 2);
        if x <= half {
            return Coord::from_integer(self.levels[0][wire]);
        }
        let last = Coord::from_integer(self.steps as i64) + half;
        if x >= last {
            return Coord::from_integer(self.levels[self.steps][wire]);
        }
        let k = (x - half).floor().to_integer();
        let (y0, y1) = (self.levels[k as usize][wire], self.levels[k as usize + 1][wire]);
        let t = x - half - Coord::from_integer(k);
        Coord::from_integer(y0) + Coord::from_integer(y1 - y0) * t
    }

    /// Vertices of the polyline of `wire`, from `x = 0` to `x = N + 1`. The
    /// first and last segments continue as horizontal rays.
    pub fn polyline(&self, wire: WireId) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.steps + 3);
        pts.push(Point::new(q(0, 1), Coord::from_integer(self.levels[0][wire])));
        for k in 0..=self.steps {
            pts.push(Point::new(q(2 * k as i64 + 1, 2), Coord::from_integer(self.levels[k][wire])));
        }
        pts.push(Point::new(
            Coord::from_integer(self.steps as i64 + 1),
            Coord::from_integer(self.levels[self.steps][wire]),
        ));
        pts
    }

    /// Interior point of face `f`.
    pub fn witness(&self, f: FaceId) -> Point {
        self.witnesses[f]
    }

    pub fn witnesses(&self) -> &[Point] {
        &self.witnesses
    }

    /// Number of wires among `wires` strictly above `p`, or the wire `p`
    /// lies on.
    fn wires_above(&self, wires: impl Iterator<Item = WireId>, p: Point) -> Result<usize, EmbeddingError> {
        let mut above = 0;
        for w in wires {
            let y = self.y_at(w, p.x);
            if y == p.y {
                return Err(EmbeddingError::OnBoundary { wire: w });
            }
            if y > p.y {
                above += 1;
            }
        }
        Ok(above)
    }

    /// Face of `complex` whose region contains `p`.
    pub fn face_containing(&self, complex: &CellComplex, p: Point) -> Result<FaceId, EmbeddingError> {
        let gap = self.wires_above(0..self.n, p)?;
        Ok(face_in_gap(complex, gap, p.x, |s| s))
    }

    /// Face of an induced subarrangement containing `p`, where the
    /// subarrangement is drawn with this embedding's polylines of its kept
    /// wires.
    pub fn face_containing_in(
        &self,
        sub: &InducedSubarrangement,
        sub_complex: &CellComplex,
        p: Point,
    ) -> Result<FaceId, EmbeddingError> {
        let gap = self.wires_above(sub.wires.iter().copied(), p)?;
        Ok(face_in_gap(sub_complex, gap, p.x, |s| sub.steps[s]))
    }

    /// Recovers the wiring diagram from the polylines alone: pairwise
    /// segment intersections sorted by abscissa, then replayed as swaps.
    pub fn extract_diagram(&self) -> WiringDiagram {
        let polys: Vec<Vec<Point>> = (0..self.n).map(|w| self.polyline(w)).collect();
        let mut events: Vec<(Coord, Coord, WireId, WireId)> = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                for k in 0..polys[a].len() - 1 {
                    let (p0, p1) = (polys[a][k], polys[a][k + 1]);
                    let (r0, r1) = (polys[b][k], polys[b][k + 1]);
                    let d0 = p0.y - r0.y;
                    let d1 = p1.y - r1.y;
                    if d0 * d1 < Coord::from_integer(0) {
                        let t = d0 / (d0 - d1);
                        let x = p0.x + (p1.x - p0.x) * t;
                        let y = p0.y + (p1.y - p0.y) * t;
                        events.push((x, -y, a, b));
                    }
                }
            }
        }
        events.sort();
        let mut order: Vec<WireId> = (0..self.n).collect();
        order.sort_by_key(|&w| std::cmp::Reverse(self.levels[0][w]));
        let mut tracks = Vec::with_capacity(events.len());
        for (_, _, a, b) in events {
            let pa = order.iter().position(|&w| w == a).expect("wire present");
            let pb = order.iter().position(|&w| w == b).expect("wire present");
            let t = pa.min(pb);
            assert_eq!(pa.abs_diff(pb), 1, "crossing wires must be adjacent");
            order.swap(t, t + 1);
            tracks.push(t);
        }
        WiringDiagram::from_tracks(self.n, tracks).expect("polylines of a simple diagram")
    }
}

/// Face of `complex` in `gap` whose x-range contains `x`; `step_x` maps a
/// step of `complex` to the step of the drawing it lives in.
fn face_in_gap(complex: &CellComplex, gap: usize, x: Coord, step_x: impl Fn(usize) -> usize) -> FaceId {
    let crossing_x = |s: usize| Coord::from_integer(step_x(s) as i64 + 1);
    complex
        .faces()
        .iter()
        .find(|f| {
            f.gap == gap
                && f.open.is_none_or(|s| crossing_x(s) < x)
                && f.close.is_none_or(|s| x < crossing_x(s))
        })
        .map(|f| f.id)
        .expect("faces of a gap partition the line")
}

/// Shorthand for `num / den`.
pub fn rational(num: i64, den: i64) -> Coord {
    Rational64::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::validate_wiring;

    fn setup(n: usize, swaps: &[usize]) -> (CellComplex, GridEmbedding) {
        let c = CellComplex::build(&validate_wiring(n, swaps).unwrap());
        let e = GridEmbedding::new(&c);
        (c, e)
    }

    #[test]
    fn two_wires_cross_once() {
        let (c, e) = setup(2, &[1]);
        assert_eq!(c.bounded_faces().count(), 0);
        assert_eq!(e.y_at(0, rational(1, 1)), e.y_at(1, rational(1, 1)));
        assert_eq!(e.extract_diagram(), *c.diagram());
    }

    #[test]
    fn witnesses_locate_their_faces() {
        for (n, swaps) in [(3, vec![1, 2, 1]), (4, vec![2, 1, 3, 2, 1, 3]), (1, vec![])] {
            let (c, e) = setup(n, &swaps);
            for f in c.faces() {
                assert_eq!(e.face_containing(&c, e.witness(f.id)), Ok(f.id));
            }
            assert_eq!(e.extract_diagram(), *c.diagram());
        }
    }

    #[test]
    fn triangle_witness_is_inside() {
        let (c, e) = setup(3, &[1, 2, 1]);
        let tri = c.bounded_faces().next().unwrap();
        let w = e.witness(tri.id);
        // Inside means strictly below the upper chain and above the lower one.
        let above = (0..3).filter(|&wire| e.y_at(wire, w.x) > w.y).count();
        assert_eq!(above, tri.gap);
    }

    #[test]
    fn far_above_is_top_face() {
        let (c, e) = setup(4, &[2, 1, 3, 2, 1, 3]);
        let p = Point::new(rational(7, 2), rational(100, 1));
        assert_eq!(e.face_containing(&c, p), Ok(0));
    }

    #[test]
    fn edge_midpoint_offset_is_upper_face() {
        let (c, e) = setup(4, &[2, 1, 3, 2, 1, 3]);
        for edge in c.edges().iter().filter(|ed| !ed.is_ray()) {
            let (s1, s2) = (edge.start.unwrap() as i64 + 1, edge.end.unwrap() as i64 + 1);
            let x = rational(s1 + s2, 2);
            let y = e.y_at(edge.wire, x);
            assert_eq!(e.face_containing(&c, Point::new(x, y + rational(1, 4))), Ok(edge.left_face));
            assert_eq!(e.face_containing(&c, Point::new(x, y - rational(1, 4))), Ok(edge.right_face));
            assert_eq!(
                e.face_containing(&c, Point::new(x, y)),
                Err(EmbeddingError::OnBoundary { wire: edge.wire })
            );
        }
    }
}
