//! Exact arrangements of non-vertical straight lines.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LineError;
use crate::wiring::WiringDiagram;

pub type Rational = BigRational;

/// Shorthand for the big rational `num / den`.
pub fn big(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p/q`, keeping `/1` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, LineError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let bad = || LineError::Malformed(format!("`{s}` is not a rational"));
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// The line `y = slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Line {
    pub fn new(slope: Rational, intercept: Rational) -> Line {
        Line { slope, intercept }
    }

    /// Line with the given slope through `(x, y)`.
    pub fn through(slope: Rational, x: &Rational, y: &Rational) -> Line {
        let intercept = y - &slope * x;
        Line { slope, intercept }
    }

    pub fn y_at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    /// Intersection point with a non-parallel line.
    pub fn meet(&self, other: &Line) -> Option<(Rational, Rational)> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            return None;
        }
        let x = (&other.intercept - &self.intercept) / ds;
        let y = self.y_at(&x);
        Some((x, y))
    }

    /// Sign of `p.y - line(p.x)`: positive above the line.
    pub fn side(&self, x: &Rational, y: &Rational) -> i32 {
        let d = y - self.y_at(x);
        if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            slope: String,
            intercept: String,
        }
        Raw { slope: format_rational(&self.slope), intercept: format_rational(&self.intercept) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Line, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            slope: String,
            intercept: String,
        }
        let raw = Raw::deserialize(d)?;
        let slope = parse_rational(&raw.slope).map_err(D::Error::custom)?;
        let intercept = parse_rational(&raw.intercept).map_err(D::Error::custom)?;
        Ok(Line { slope, intercept })
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {} x + {}", self.slope, self.intercept)
    }
}

/// A simple arrangement of lines: distinct slopes, no three concurrent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LineArrangement {
    lines: Vec<Line>,
}

/// A crossing of lines `a < b` at `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCrossing {
    pub x: Rational,
    pub y: Rational,
    pub a: usize,
    pub b: usize,
}

impl LineArrangement {
    pub fn new(lines: Vec<Line>) -> Result<LineArrangement, LineError> {
        if lines.is_empty() {
            return Err(LineError::Empty);
        }
        let la = LineArrangement { lines };
        let order = la.order_at_left();
        for w in order.windows(2) {
            if la.lines[w[0]].slope == la.lines[w[1]].slope {
                return Err(LineError::DuplicateSlope(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let mut points = la.crossings();
        points.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
        for w in points.windows(2) {
            if w[0].x == w[1].x && w[0].y == w[1].y {
                let mut ids = vec![w[0].a, w[0].b, w[1].a, w[1].b];
                ids.sort_unstable();
                ids.dedup();
                return Err(LineError::ConcurrentLines(ids[0], ids[1], ids[2]));
            }
        }
        Ok(la)
    }

    pub fn from_json(s: &str) -> Result<LineArrangement, LineError> {
        let lines: Vec<Line> = serde_json::from_str(s).map_err(|e| LineError::Malformed(e.to_string()))?;
        LineArrangement::new(lines)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.lines).expect("lines serialize")
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn into_lines(self) -> Vec<Line> {
        self.lines
    }

    /// All pairwise crossings, unsorted.
    pub fn crossings(&self) -> Vec<LineCrossing> {
        let mut out = Vec::with_capacity(self.len() * self.len().saturating_sub(1) / 2);
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if let Some((x, y)) = self.lines[a].meet(&self.lines[b]) {
                    out.push(LineCrossing { x, y, a, b });
                }
            }
        }
        out
    }

    /// Line indices from top to bottom far to the left, i.e. by increasing
    /// slope.
    pub fn order_at_left(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| self.lines[i].slope.cmp(&self.lines[j].slope));
        order
    }

    /// Crossings sorted by sweep order: by x, and top to bottom on ties.
    pub fn sweep(&self) -> Vec<LineCrossing> {
        let mut c = self.crossings();
        c.sort_by(|p, q| p.x.cmp(&q.x).then_with(|| q.y.cmp(&p.y)));
        c
    }

    /// Smallest box `[-r, r]^2` (with `r` a power of two) holding every
    /// crossing strictly inside.
    pub fn bounding_radius(&self) -> Rational {
        let mut r = Rational::one();
        for c in self.crossings() {
            while c.x.abs() >= r || c.y.abs() >= r {
                r *= big(2, 1);
            }
        }
        r
    }
}

/// Wiring diagram of a line arrangement together with the line drawn as
/// each wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiagram {
    pub diagram: WiringDiagram,
    /// `wire_lines[w]`: index of the line drawn as wire `w`.
    pub wire_lines: Vec<usize>,
}

impl LineDiagram {
    /// Wire carrying line `l`.
    pub fn line_wire(&self, l: usize) -> usize {
        self.wire_lines.iter().position(|&x| x == l).expect("line present")
    }
}

/// Sweeps the arrangement left to right and records the swaps.
pub fn lines_to_diagram(la: &LineArrangement) -> LineDiagram {
    let wire_lines = la.order_at_left();
    let mut pos = vec![0usize; la.len()];
    for (p, &l) in wire_lines.iter().enumerate() {
        pos[l] = p;
    }
    let mut at = wire_lines.clone();
    let mut tracks = Vec::new();
    for c in la.sweep() {
        let t = pos[c.a].min(pos[c.b]);
        debug_assert_eq!(pos[c.a].abs_diff(pos[c.b]), 1);
        at.swap(t, t + 1);
        pos[at[t]] = t;
        pos[at[t + 1]] = t + 1;
        tracks.push(t);
    }
    let diagram = WiringDiagram::from_tracks(la.len(), tracks).expect("lines cross once");
    LineDiagram { diagram, wire_lines }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::validate_wiring;

    fn line(m: i64, b: i64) -> Line {
        Line::new(big(m, 1), big(b, 1))
    }

    #[test]
    fn three_lines() {
        // Crossings: y=0 & y=-x+1 at x=1; y=0 & y=x at x=0; y=x & y=-x+1 at x=1/2.
        let la = LineArrangement::new(vec![line(0, 0), line(1, 0), line(-1, 1)]).unwrap();
        let ld = lines_to_diagram(&la);
        assert_eq!(ld.wire_lines, vec![2, 0, 1]);
        assert_eq!(ld.diagram, validate_wiring(3, &[2, 1, 2]).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(LineArrangement::new(vec![]), Err(LineError::Empty));
        assert_eq!(LineArrangement::new(vec![line(1, 0), line(1, 1)]), Err(LineError::DuplicateSlope(0, 1)));
        assert_eq!(
            LineArrangement::new(vec![line(0, 0), line(1, 0), line(-1, 0)]),
            Err(LineError::ConcurrentLines(0, 1, 2))
        );
    }

    #[test]
    fn json_round_trip() {
        let la = LineArrangement::new(vec![Line::new(big(1, 2), big(-3, 1)), line(2, 5)]).unwrap();
        let s = la.to_json();
        assert_eq!(s, r#"[{"slope":"1/2","intercept":"-3/1"},{"slope":"2/1","intercept":"5/1"}]"#);
        assert_eq!(LineArrangement::from_json(&s).unwrap(), la);
        assert_eq!(LineArrangement::from_json(r#"[{"slope":"1","intercept":"0"}]"#).unwrap().len(), 1);
        assert!(matches!(
            LineArrangement::from_json(r#"[{"slope":"1/0","intercept":"0"}]"#),
            Err(LineError::Malformed(_))
        ));
    }

    #[test]
    fn simultaneous_disjoint_crossings() {
        // Two pairs crossing at the same x, different heights.
        let la = LineArrangement::new(vec![line(-1, 10), line(1, 10), line(-2, 0), line(2, 0)]).unwrap();
        let ld = lines_to_diagram(&la);
        assert_eq!(ld.diagram.len(), 6);
    }
}
