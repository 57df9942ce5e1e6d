//! Face census, critical edges, criticality of arrangements with one
//! (>=5)-gon, membership in the family Im, and the triangle counts.
//!
//! An edge of a polygon is *critical* when the face across it is
//! unbounded. An arrangement with a unique (>=5)-gon `P` is `k`-critical
//! when exactly `k` edges of `P` border an unbounded cell of the
//! subarrangement induced by the wires of `P`. Such an arrangement has
//! `n - k` triangles and `k + n(n-5)/2` quadrilaterals.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{CellComplex, EdgeId, FaceId};
use crate::error::AnalysisError;
use crate::wiring::{WireId, WiringDiagram};

/// Number of bounded faces of each side count.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FaceCensus {
    pub tallies: BTreeMap<usize, usize>,
    pub total: usize,
}

impl FaceCensus {
    /// `p_k`, the number of `k`-gons.
    pub fn count(&self, sides: usize) -> usize {
        self.tallies.get(&sides).copied().unwrap_or(0)
    }

    pub fn triangles(&self) -> usize {
        self.count(3)
    }

    pub fn quadrilaterals(&self) -> usize {
        self.count(4)
    }

    /// Number of faces with at least five sides.
    pub fn at_least_five(&self) -> usize {
        self.tallies.range(5..).map(|(_, c)| c).sum()
    }
}

pub fn face_census(c: &CellComplex) -> FaceCensus {
    let mut census = FaceCensus::default();
    for f in c.bounded_faces() {
        let sides = f.side_count().expect("bounded");
        *census.tallies.entry(sides).or_default() += 1;
        census.total += 1;
    }
    census
}

/// Expected number of bounded faces, `1 + n(n-3)/2` for `n >= 3`.
pub fn bounded_face_formula(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        1 + n * (n - 3) / 2
    }
}

/// All bounded faces with at least five sides.
pub fn ge5_faces(c: &CellComplex) -> Vec<FaceId> {
    c.bounded_faces()
        .filter(|f| f.side_count().is_some_and(|s| s >= 5))
        .map(|f| f.id)
        .collect()
}

/// The unique (>=5)-gon, `None` if there is none.
pub fn find_unique_ge5(c: &CellComplex) -> Result<Option<FaceId>, AnalysisError> {
    let faces = ge5_faces(c);
    match faces.len() {
        0 => Ok(None),
        1 => Ok(Some(faces[0])),
        _ => Err(AnalysisError::MultipleGe5Gons(faces)),
    }
}

/// Critical flag for every boundary edge of bounded face `f`, in boundary
/// order.
pub fn critical_edges(c: &CellComplex, f: FaceId) -> Result<Vec<(EdgeId, bool)>, AnalysisError> {
    let face = c.faces().get(f).ok_or(AnalysisError::NoSuchFace(f))?;
    if !face.is_bounded() {
        return Err(AnalysisError::UnboundedFace(f));
    }
    Ok(face
        .boundary()
        .into_iter()
        .map(|e| {
            let twin = c.edge(e).twin(f);
            (e, !c.face(twin).is_bounded())
        })
        .collect())
}

/// One edge of the (>=5)-gon with its criticality in the induced
/// subarrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolygonEdge {
    pub edge: EdgeId,
    pub wire: WireId,
    pub critical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    /// The (>=5)-gon `P`.
    pub face: FaceId,
    /// Wires of `P` in boundary order.
    pub wires: Vec<WireId>,
    /// Face of the induced subarrangement that contains `P`.
    pub containing_face: FaceId,
    pub edges: Vec<PolygonEdge>,
    pub k: usize,
}

impl CriticalityReport {
    /// Wires whose edge of `P` is critical, sorted.
    pub fn critical_wires(&self) -> Vec<WireId> {
        let mut w: Vec<WireId> = self.edges.iter().filter(|e| e.critical).map(|e| e.wire).collect();
        w.sort_unstable();
        w
    }
}

/// Criticality of the arrangement with respect to its unique (>=5)-gon.
pub fn criticality_k(d: &WiringDiagram) -> Result<CriticalityReport, AnalysisError> {
    let c = CellComplex::build(d);
    let p = find_unique_ge5(&c)?.ok_or(AnalysisError::NoGe5Gon)?;
    Ok(criticality_of(&c, p))
}

/// Criticality of bounded face `p`: every edge of `p` is matched, along its
/// wire, to the edge of the induced subarrangement whose crossing span
/// contains it.
pub fn criticality_of(c: &CellComplex, p: FaceId) -> CriticalityReport {
    let face = c.face(p);
    let boundary = face.boundary();
    let wires: Vec<WireId> = boundary.iter().map(|&e| c.edge(e).wire).collect();
    let sub = c.diagram().induced(&wires).expect("a bounded face has wires");
    let sub_c = CellComplex::build(&sub.diagram);

    let mut containing = None;
    let mut edges = Vec::with_capacity(boundary.len());
    for &e in &boundary {
        let edge = c.edge(e);
        let cw = sub.child_wire(edge.wire).expect("wire of P is kept");
        let piece = c.wire_crossings(edge.wire)[..edge.index]
            .iter()
            .filter(|&&s| sub.child_step(s).is_some())
            .count();
        let super_edge = sub_c.edge(sub_c.edge_id(cw, piece));
        let (inside, outside) = if edge.has_above(p) {
            (super_edge.left_face, super_edge.right_face)
        } else {
            (super_edge.right_face, super_edge.left_face)
        };
        match containing {
            None => containing = Some(inside),
            Some(q) => assert_eq!(q, inside, "edges of P map into one face of the induced arrangement"),
        }
        edges.push(PolygonEdge { edge: e, wire: edge.wire, critical: !sub_c.face(outside).is_bounded() });
    }
    let k = edges.iter().filter(|e| e.critical).count();
    CriticalityReport { face: p, wires, containing_face: containing.expect("P has edges"), edges, k }
}

/// Outcome of the Im membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImMembership {
    /// Every wire carries an edge of the unique (>=5)-gon, which is then an
    /// `n`-gon.
    Member { polygon: FaceId },
    NoGe5Gon,
    MultipleGe5Gons(Vec<FaceId>),
    /// `wire` has no edge on the unique (>=5)-gon.
    MissingWire { polygon: FaceId, wire: WireId },
}

impl ImMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ImMembership::Member { .. })
    }

    /// The wire that witnesses non-membership, when there is one.
    pub fn witness(&self) -> Option<WireId> {
        match self {
            ImMembership::MissingWire { wire, .. } => Some(*wire),
            _ => None,
        }
    }
}

pub fn is_in_im(d: &WiringDiagram) -> ImMembership {
    im_membership(&CellComplex::build(d))
}

pub fn im_membership(c: &CellComplex) -> ImMembership {
    let p = match find_unique_ge5(c) {
        Ok(Some(p)) => p,
        Ok(None) => return ImMembership::NoGe5Gon,
        Err(AnalysisError::MultipleGe5Gons(f)) => return ImMembership::MultipleGe5Gons(f),
        Err(e) => unreachable!("{e}"),
    };
    let mut on_p = vec![false; c.n()];
    for w in c.face_wires(p) {
        on_p[w] = true;
    }
    match on_p.iter().position(|&b| !b) {
        Some(wire) => ImMembership::MissingWire { polygon: p, wire },
        None => ImMembership::Member { polygon: p },
    }
}

/// Observed against predicted triangle and quadrilateral counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub k: usize,
    pub observed_p3: usize,
    pub observed_p4: usize,
    pub expected_p3: i64,
    pub expected_p4: i64,
    pub pass: bool,
}

pub fn verify_counting_theorem(d: &WiringDiagram) -> Result<TheoremReport, AnalysisError> {
    let c = CellComplex::build(d);
    let p = find_unique_ge5(&c)?.ok_or(AnalysisError::NoGe5Gon)?;
    Ok(counting_report(&c, &face_census(&c), criticality_of(&c, p).k))
}

pub fn counting_report(c: &CellComplex, census: &FaceCensus, k: usize) -> TheoremReport {
    let n = c.n() as i64;
    let expected_p3 = n - k as i64;
    let expected_p4 = k as i64 + n * (n - 5) / 2;
    let (observed_p3, observed_p4) = (census.triangles(), census.quadrilaterals());
    TheoremReport {
        n: c.n(),
        k,
        observed_p3,
        observed_p4,
        expected_p3,
        expected_p4,
        pass: observed_p3 as i64 == expected_p3 && observed_p4 as i64 == expected_p4,
    }
}

/// For each wire, the triangles having an edge on it.
pub fn triangle_adjacency(c: &CellComplex) -> Vec<Vec<FaceId>> {
    let mut lists = vec![Vec::new(); c.n()];
    for f in c.bounded_faces().filter(|f| f.side_count() == Some(3)) {
        for w in c.face_wires(f.id) {
            lists[w].push(f.id);
        }
    }
    lists
}

/// JSON summary of an arrangement. Keys serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: Option<usize>,
    pub census: BTreeMap<usize, usize>,
    pub pass: Option<bool>,
    pub im: bool,
    /// 1-based wires carrying a critical edge of the (>=5)-gon.
    pub critical_edges: Vec<usize>,
}

pub fn analyze(d: &WiringDiagram) -> AnalysisReport {
    let c = CellComplex::build(d);
    let census = face_census(&c);
    let im = im_membership(&c).is_member();
    let (k, pass, critical) = match find_unique_ge5(&c) {
        Ok(Some(p)) => {
            let crit = criticality_of(&c, p);
            let report = counting_report(&c, &census, crit.k);
            let wires = crit.critical_wires().into_iter().map(|w| w + 1).collect();
            (Some(crit.k), Some(report.pass), wires)
        }
        _ => (None, None, Vec::new()),
    };
    AnalysisReport { n: d.n(), k, census: census.tallies, pass, im, critical_edges: critical }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::validate_wiring;

    fn complex(n: usize, swaps: &[usize]) -> CellComplex {
        CellComplex::build(&validate_wiring(n, swaps).unwrap())
    }

    #[test]
    fn census_small() {
        let c3 = complex(3, &[1, 2, 1]);
        assert_eq!(face_census(&c3).tallies, BTreeMap::from([(3, 1)]));
        let c4 = complex(4, &[2, 1, 3, 2, 1, 3]);
        assert_eq!(face_census(&c4).tallies, BTreeMap::from([(3, 2), (4, 1)]));
        assert_eq!(find_unique_ge5(&c3), Ok(None));
    }

    #[test]
    fn triangle_edges_all_critical() {
        let c = complex(3, &[1, 2, 1]);
        let t = c.bounded_faces().next().unwrap().id;
        let flags = critical_edges(&c, t).unwrap();
        assert_eq!(flags.len(), 3);
        assert!(flags.iter().all(|&(_, crit)| crit));
        assert_eq!(critical_edges(&c, 0), Err(AnalysisError::UnboundedFace(0)));
    }

    #[test]
    fn quadrilateral_has_two_critical_edges() {
        let c = complex(4, &[2, 1, 3, 2, 1, 3]);
        let quad = c.bounded_faces().find(|f| f.side_count() == Some(4)).unwrap().id;
        let crit = critical_edges(&c, quad).unwrap().iter().filter(|x| x.1).count();
        assert_eq!(crit, 2);
    }

    #[test]
    fn three_wires_not_in_im() {
        let d = validate_wiring(3, &[1, 2, 1]).unwrap();
        assert_eq!(is_in_im(&d), ImMembership::NoGe5Gon);
        assert_eq!(verify_counting_theorem(&d), Err(AnalysisError::NoGe5Gon));
        let c = CellComplex::build(&d);
        let lists = triangle_adjacency(&c);
        assert!(lists.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn report_json_shape() {
        let d = validate_wiring(3, &[1, 2, 1]).unwrap();
        assert_eq!(
            analyze(&d).to_json(),
            r#"{"n":3,"k":null,"census":{"3":1},"pass":null,"im":false,"critical_edges":[]}"#
        );
    }
}
